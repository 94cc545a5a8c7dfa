#include "ringtrace/reaction.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "ringtrace/heuristics.hpp"

namespace ringtrace {

namespace {

// Elimination table over (ring, member slot) pairs.
class EliminationTable {
 public:
  explicit EliminationTable(const ChainStore& chain) : chain_(chain) {
    offset_.resize(chain.ring_count() + 1, 0);
    for (RingId r = 0; r < chain.ring_count(); ++r) {
      offset_[r + 1] = offset_[r] + chain.ring(r).size();
    }
    eliminated_.assign(offset_.back(), 0);
    remaining_.resize(chain.ring_count());
    for (RingId r = 0; r < chain.ring_count(); ++r) {
      remaining_[r] = static_cast<std::uint32_t>(chain.ring(r).size());
    }
  }

  // Returns true if the pair was live before.
  bool eliminate(RingId r, GlobalIndex g) {
    const std::size_t s = slot(r, g);
    if (eliminated_[s]) return false;
    eliminated_[s] = 1;
    --remaining_[r];
    return true;
  }

  std::uint32_t remaining(RingId r) const { return remaining_[r]; }

  GlobalIndex last_member(RingId r) const {
    const InputRing ring = chain_.ring(r);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (!eliminated_[offset_[r] + i]) return ring.members[i];
    }
    return ring.members.front();
  }

 private:
  std::size_t slot(RingId r, GlobalIndex g) const {
    const InputRing ring = chain_.ring(r);
    const auto it = std::find(ring.members.begin(), ring.members.end(), g);
    return offset_[r] + static_cast<std::size_t>(it - ring.members.begin());
  }

  const ChainStore& chain_;
  std::vector<std::size_t> offset_;
  std::vector<char> eliminated_;
  std::vector<std::uint32_t> remaining_;
};

bool has_any_label(const LabelSet& set, RingId r, GlobalIndex g) {
  for (std::uint32_t pos : set.of_member(g)) {
    if (set.labels()[pos].ring == r) return true;
  }
  return false;
}

}  // namespace

ReactionResult chain_reaction(const ChainStore& chain, const LabelSet& seed) {
  ReactionResult result{propagate_consequences(seed, chain), {}, 0};
  LabelSet& labels = result.labels;

  EliminationTable table(chain);
  std::vector<char> resolved(chain.ring_count(), 0);
  std::vector<char> dead(chain.ring_count(), 0);

  std::unordered_map<GlobalIndex, std::vector<RingId>> spent_in;
  for (const Label& l : labels.labels()) {
    if (l.claim == Claim::Decoy) {
      table.eliminate(l.ring, l.member);
    } else {
      resolved[l.ring] = 1;
      spent_in[l.member].push_back(l.ring);
    }
  }
  for (auto& [g, rings] : spent_in) {
    for (RingId other : chain.referencing_rings(g)) {
      if (std::find(rings.begin(), rings.end(), other) == rings.end()) table.eliminate(other, g);
    }
  }

  std::vector<RingId> frontier;
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    if (!resolved[r] && table.remaining(r) <= 1) frontier.push_back(r);
  }

  std::vector<std::pair<RingId, GlobalIndex>> promotions;
  std::vector<RingId> next;
  while (!frontier.empty()) {
    ++result.rounds;
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    promotions.clear();
    for (RingId r : frontier) {
      if (resolved[r] || dead[r]) continue;
      if (table.remaining(r) == 0) {
        dead[r] = 1;
        result.contradictions.push_back(r);
      } else if (table.remaining(r) == 1) {
        promotions.emplace_back(r, table.last_member(r));
      }
    }

    for (const auto& [r, g] : promotions) {
      labels.add({r, g, Claim::TrueSpend, HeuristicId::ChainReaction, false});
      resolved[r] = 1;
    }

    next.clear();
    for (const auto& [r, g] : promotions) {
      for (GlobalIndex other : chain.ring(r).members) {
        if (other != g && !has_any_label(labels, r, other)) {
          labels.add({r, other, Claim::Decoy, HeuristicId::ChainReaction, true});
        }
      }
      for (RingId other : chain.referencing_rings(g)) {
        if (other == r) continue;
        if (!has_any_label(labels, other, g)) {
          labels.add({other, g, Claim::Decoy, HeuristicId::ChainReaction, true});
        }
        if (table.eliminate(other, g) && !resolved[other] && table.remaining(other) <= 1) {
          next.push_back(other);
        }
      }
    }
    frontier.swap(next);
  }

  std::sort(result.contradictions.begin(), result.contradictions.end());
  return result;
}

CombinedResult combined_chain_reaction(const ChainStore& chain, std::span<const LabelSet> inputs) {
  const LabelSet all = merge(inputs, HeuristicId::Combined);
  ReactionResult reaction = chain_reaction(chain, all);

  CombinedResult out{std::move(reaction.labels), 0, 0, std::move(reaction.contradictions)};

  auto in_inputs = [&](RingId r, GlobalIndex g, Claim c) { return all.has_claim(r, g, c); };
  std::vector<std::tuple<RingId, GlobalIndex, Claim>> fresh;
  for (const Label& l : out.labels.labels()) {
    if (!in_inputs(l.ring, l.member, l.claim)) fresh.emplace_back(l.ring, l.member, l.claim);
  }
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  for (const auto& [r, g, c] : fresh) {
    if (c == Claim::TrueSpend) {
      ++out.new_true_spends;
    } else {
      ++out.new_decoys;
    }
  }
  return out;
}

}  // namespace ringtrace
