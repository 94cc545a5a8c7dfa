#include "ringtrace/labels.hpp"

#include <algorithm>
#include <tuple>

namespace ringtrace {

std::string_view to_string(HeuristicId h) noexcept {
  switch (h) {
    case HeuristicId::ZeroMixin: return "zero-mixin";
    case HeuristicId::ChainReaction: return "chain-reaction";
    case HeuristicId::TenBlockDecoyBug: return "ten-block-decoy";
    case HeuristicId::DifferByOne: return "differ-by-one";
    case HeuristicId::Mordinal: return "mordinal";
    case HeuristicId::Coinbase: return "coinbase";
    case HeuristicId::P2PoolMerge: return "p2pool-merge";
    case HeuristicId::Combined: return "combined";
  }
  return "unknown";
}

std::optional<HeuristicId> parse_heuristic(std::string_view name) noexcept {
  for (HeuristicId h : kAllHeuristics) {
    if (to_string(h) == name) return h;
  }
  return std::nullopt;
}

std::string_view to_string(Claim c) noexcept {
  return c == Claim::TrueSpend ? "true_spend" : "decoy";
}

std::optional<Claim> parse_claim(std::string_view name) noexcept {
  if (name == "true_spend") return Claim::TrueSpend;
  if (name == "decoy") return Claim::Decoy;
  return std::nullopt;
}

bool canonical_less(const Label& a, const Label& b) noexcept {
  return std::tie(a.ring, a.member, a.heuristic, a.claim, a.derived) <
         std::tie(b.ring, b.member, b.heuristic, b.claim, b.derived);
}

std::size_t LabelSet::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t x = k.member * 0x9e3779b97f4a7c15ULL;
  x ^= (static_cast<std::uint64_t>(k.ring) << 8 | static_cast<std::uint64_t>(k.heuristic)) +
       0x7f4a7c159e3779b9ULL + (x << 6) + (x >> 2);
  return static_cast<std::size_t>(x);
}

bool LabelSet::add(const Label& label) {
  const auto pos = static_cast<std::uint32_t>(labels_.size());
  auto [it, inserted] = by_key_.try_emplace(Key{label.ring, label.member, label.heuristic}, pos);
  if (!inserted) return false;
  labels_.push_back(label);
  by_ring_[label.ring].push_back(pos);
  by_member_[label.member].push_back(pos);
  return true;
}

bool LabelSet::add(const Label& label, const ChainStore& chain) {
  if (!chain.ring(label.ring).contains(label.member)) {
    throw Error(Errc::MemberNotInRing, "label names output " + std::to_string(label.member) +
                                           " outside ring " + std::to_string(label.ring));
  }
  return add(label);
}

const Label* LabelSet::find(RingId ring, GlobalIndex member, HeuristicId h) const noexcept {
  auto it = by_key_.find(Key{ring, member, h});
  return it == by_key_.end() ? nullptr : &labels_[it->second];
}

std::span<const std::uint32_t> LabelSet::in_ring(RingId ring) const noexcept {
  auto it = by_ring_.find(ring);
  if (it == by_ring_.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> LabelSet::of_member(GlobalIndex member) const noexcept {
  auto it = by_member_.find(member);
  if (it == by_member_.end()) return {};
  return it->second;
}

bool LabelSet::has_claim(RingId ring, GlobalIndex member, Claim claim) const noexcept {
  for (std::uint32_t pos : of_member(member)) {
    const Label& l = labels_[pos];
    if (l.ring == ring && l.claim == claim) return true;
  }
  return false;
}

std::vector<RingId> LabelSet::true_spend_rings(GlobalIndex member) const {
  std::vector<RingId> rings;
  for (std::uint32_t pos : of_member(member)) {
    if (labels_[pos].claim == Claim::TrueSpend) rings.push_back(labels_[pos].ring);
  }
  std::sort(rings.begin(), rings.end());
  rings.erase(std::unique(rings.begin(), rings.end()), rings.end());
  return rings;
}

std::vector<Label> LabelSet::canonical() const {
  std::vector<Label> out(labels_);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

LabelSet merge(std::span<const LabelSet> sets, HeuristicId owner) {
  LabelSet out(owner);
  for (const LabelSet& s : sets) {
    for (const Label& l : s.labels()) out.add(l);
  }
  return out;
}

HeuristicId infer_owner(std::span<const Label> labels) noexcept {
  if (labels.empty()) return HeuristicId::Combined;
  bool seen[std::size(kAllHeuristics)] = {};
  for (const Label& l : labels) seen[static_cast<std::size_t>(l.heuristic)] = true;
  const auto count = std::count(std::begin(seen), std::end(seen), true);
  if (count == 1) return labels.front().heuristic;
  const bool only_reaction = count == 2 && seen[static_cast<std::size_t>(HeuristicId::ZeroMixin)] &&
                             seen[static_cast<std::size_t>(HeuristicId::ChainReaction)];
  return only_reaction ? HeuristicId::ChainReaction : HeuristicId::Combined;
}

}  // namespace ringtrace
