#include "ringtrace/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace ringtrace {

namespace {

constexpr std::uint8_t kSpendBit = 1;
constexpr std::uint8_t kDecoyBit = 2;

std::uint8_t bit_of(Claim c) noexcept { return c == Claim::TrueSpend ? kSpendBit : kDecoyBit; }

struct Pair {
  RingId ring;
  GlobalIndex member;
  bool operator==(const Pair&) const = default;
};

struct PairHash {
  std::size_t operator()(const Pair& p) const noexcept {
    std::uint64_t x = p.member * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(p.ring) << 1);
    x ^= x >> 31;
    return static_cast<std::size_t>(x * 0xBF58476D1CE4E5B9ULL);
  }
};

using ClaimMap = std::unordered_map<Pair, std::uint8_t, PairHash>;

// (ring, member) -> claims the set makes there.
ClaimMap claims_by_pair(const LabelSet& set) {
  ClaimMap out;
  out.reserve(set.size());
  for (const Label& l : set.labels()) out[{l.ring, l.member}] |= bit_of(l.claim);
  return out;
}

std::optional<double> ratio(std::size_t num, std::size_t den) noexcept {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// Per-ring (spend mask, unconflicted decoy count) for one set.
struct RingClaims {
  bool unconflicted_spend = false;
  std::uint32_t unconflicted_decoys = 0;
};

std::unordered_map<RingId, RingClaims> ring_claims(const LabelSet& set) {
  std::unordered_map<RingId, RingClaims> out;
  for (const auto& [pair, mask] : claims_by_pair(set)) {
    RingClaims& rc = out[pair.ring];
    if (mask == kSpendBit) rc.unconflicted_spend = true;
    if (mask == kDecoyBit) ++rc.unconflicted_decoys;
  }
  return out;
}

}  // namespace

std::optional<double> precision(std::size_t tp, std::size_t fp) noexcept { return ratio(tp, tp + fp); }

double collision_ratio(std::size_t conflicting, std::size_t labeled) noexcept {
  return ratio(conflicting, labeled).value_or(0.0);
}

SelfCollision self_collision_rate(const LabelSet& labels) {
  const ClaimMap pairs = claims_by_pair(labels);
  std::unordered_map<GlobalIndex, std::size_t> spends_of_member;
  std::unordered_map<RingId, std::size_t> spends_in_ring;
  for (const auto& [pair, mask] : pairs) {
    if (mask & kSpendBit) {
      ++spends_of_member[pair.member];
      ++spends_in_ring[pair.ring];
    }
  }
  SelfCollision out;
  out.labeled = pairs.size();
  for (const auto& [pair, mask] : pairs) {
    if (!(mask & kSpendBit)) continue;
    if (spends_of_member[pair.member] >= 2 || spends_in_ring[pair.ring] >= 2) ++out.conflicting;
  }
  out.rate = collision_ratio(out.conflicting, out.labeled);
  return out;
}

PrecisionReport precision_report(const LabelSet& labels, const GroundTruth& truth) {
  PrecisionReport out;
  out.heuristic = labels.heuristic();
  std::set<std::tuple<RingId, GlobalIndex, Claim>> seen;
  for (const Label& l : labels.labels()) {
    const auto spend = truth.find(l.ring);
    if (!spend) continue;
    if (!seen.emplace(l.ring, l.member, l.claim).second) continue;
    const bool is_spend = l.member == *spend;
    const bool correct = (l.claim == Claim::TrueSpend) == is_spend;
    ++(correct ? out.tp : out.fp);
    if (l.claim == Claim::TrueSpend) ++(is_spend ? out.true_spend_overlap : out.true_spend_errors);
  }
  out.precision = precision(out.tp, out.fp);
  return out;
}

Reference labelset_as_truth(std::span<const LabelSet> sets) {
  std::map<RingId, std::set<GlobalIndex>> spends;
  for (const LabelSet& set : sets) {
    for (const Label& l : set.labels()) {
      if (l.claim == Claim::TrueSpend) spends[l.ring].insert(l.member);
    }
  }
  Reference out;
  for (const auto& [ring, members] : spends) {
    if (members.size() == 1) {
      out.truth.entries.emplace(ring, *members.begin());
    } else {
      ++out.conflicting_rings;
    }
  }
  return out;
}

PairwiseMatrix pairwise_matrix(std::span<const LabelSet> sets) {
  std::vector<ClaimMap> maps;
  maps.reserve(sets.size());
  for (const LabelSet& s : sets) maps.push_back(claims_by_pair(s));

  PairwiseMatrix out(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const bool i_smaller = maps[i].size() <= maps[j].size();
      const ClaimMap& small = i_smaller ? maps[i] : maps[j];
      const ClaimMap& large = i_smaller ? maps[j] : maps[i];
      PairwiseCell cell;
      for (const auto& [pair, mask] : small) {
        const auto it = large.find(pair);
        if (it == large.end()) continue;
        const bool single = mask != (kSpendBit | kDecoyBit) && it->second != (kSpendBit | kDecoyBit);
        ++(single && mask == it->second ? cell.agreements : cell.collisions);
      }
      cell.labeled_first = maps[i].size();
      cell.labeled_second = maps[j].size();
      if (cell.agreements + cell.collisions > 0) {
        cell.collision_rate = ratio(cell.collisions, cell.agreements + cell.collisions);
        cell.agreement_rate = ratio(cell.agreements, std::min(cell.labeled_first, cell.labeled_second));
      }
      out.at(i, j) = cell;
      std::swap(cell.labeled_first, cell.labeled_second);
      out.at(j, i) = cell;
    }
  }
  return out;
}

std::vector<std::uint32_t> effective_ring_sizes(const ChainStore& chain, const LabelSet& combined) {
  const auto claims = ring_claims(combined);
  std::vector<std::uint32_t> out(chain.ring_count());
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    const auto nominal = static_cast<std::uint32_t>(chain.ring(r).size());
    const auto it = claims.find(r);
    if (it == claims.end()) {
      out[r] = nominal;
    } else if (it->second.unconflicted_spend) {
      out[r] = 1;
    } else {
      const std::uint32_t d = it->second.unconflicted_decoys;
      out[r] = d >= nominal ? 1 : nominal - d;
    }
  }
  return out;
}

std::vector<RingSizeBucket> effective_ring_size_series(const ChainStore& chain,
                                                       const LabelSet& combined, Bucket bucket) {
  const std::vector<std::uint32_t> eff = effective_ring_sizes(chain, combined);
  struct Sum {
    std::uint64_t effective = 0;
    std::uint64_t nominal = 0;
    std::size_t rings = 0;
  };
  std::map<std::string, Sum> sums;
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    Sum& s = sums[bucket_key(chain.spend_time(r), bucket)];
    s.effective += eff[r];
    s.nominal += chain.ring(r).size();
    ++s.rings;
  }
  std::vector<RingSizeBucket> out;
  out.reserve(sums.size());
  for (const auto& [period, s] : sums) {
    const auto n = static_cast<double>(s.rings);
    out.push_back({period, static_cast<double>(s.effective) / n, static_cast<double>(s.nominal) / n, s.rings});
  }
  return out;
}

std::vector<DecoyShareRow> decoy_share_series(const ChainStore& chain,
                                              std::span<const LabelSet> sets, Bucket bucket) {
  std::vector<std::string> period_of(chain.ring_count());
  std::map<std::string, std::size_t> members;
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    period_of[r] = bucket_key(chain.spend_time(r), bucket);
    members[period_of[r]] += chain.ring(r).size();
  }

  std::map<std::string, std::vector<std::size_t>> decoys;
  for (const auto& [period, n] : members) decoys[period].assign(sets.size(), 0);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (const auto& [pair, mask] : claims_by_pair(sets[k])) {
      if (mask != kDecoyBit || pair.ring >= chain.ring_count()) continue;
      ++decoys[period_of[pair.ring]][k];
    }
  }

  std::vector<DecoyShareRow> out;
  for (const auto& [period, n] : members) {
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const std::size_t d = decoys[period][k];
      out.push_back({period, k, d, n, ratio(d, n).value_or(0.0)});
    }
  }
  return out;
}

std::vector<CoinbaseOutputRow> coinbase_output_series(const ChainStore& chain,
                                                      const std::vector<PayoutRecord>* payouts,
                                                      Bucket bucket) {
  std::unordered_set<GlobalIndex> owned;
  if (payouts) {
    for (const PayoutRecord& p : *payouts) owned.insert(p.output_global_index);
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const TransactionRecord& tx : chain.transactions()) {
    if (!tx.coinbase) continue;
    auto& [all, pool] = counts[bucket_key(tx.timestamp, bucket)];
    all += tx.outputs.size();
    for (const OutputSpec& o : tx.outputs) pool += owned.count(o.g);
  }
  std::vector<CoinbaseOutputRow> out;
  for (const auto& [period, c] : counts) {
    CoinbaseOutputRow row{period, c.first, std::nullopt, std::nullopt};
    if (payouts) {
      row.p2pool_outputs = c.second;
      row.p2pool_share = ratio(c.second, c.first);
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace ringtrace
