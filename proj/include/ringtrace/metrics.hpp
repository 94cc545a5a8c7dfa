#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringtrace/calendar.hpp"
#include "ringtrace/chain.hpp"
#include "ringtrace/datasets.hpp"
#include "ringtrace/labels.hpp"

namespace ringtrace {

// TP / (TP + FP); absent when nothing was scored.
std::optional<double> precision(std::size_t tp, std::size_t fp) noexcept;

struct SelfCollision {
  std::size_t conflicting = 0;  // C
  std::size_t labeled = 0;      // N
  double rate = 0.0;            // C / N, 0 when N == 0
};

// C / N with the N == 0 case mapped to 0.
double collision_ratio(std::size_t conflicting, std::size_t labeled) noexcept;

// N counts distinct labeled (ring, member) pairs. C counts the TrueSpend
// pairs that conflict: the member is claimed spent in two or more rings, or
// its ring has two or more claimed spends.
SelfCollision self_collision_rate(const LabelSet& labels);

struct PrecisionReport {
  HeuristicId heuristic = HeuristicId::Combined;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::optional<double> precision;
  std::size_t true_spend_overlap = 0;
  std::size_t true_spend_errors = 0;
};

// Scores distinct (ring, member, claim) labels in rings the truth covers.
PrecisionReport precision_report(const LabelSet& labels, const GroundTruth& truth);

struct Reference {
  GroundTruth truth;
  std::size_t conflicting_rings = 0;
};

// Merges TrueSpend claims into a ring -> spend reference. Rings with
// disagreeing spends are dropped and counted.
Reference labelset_as_truth(std::span<const LabelSet> sets);

struct PairwiseCell {
  std::size_t agreements = 0;
  std::size_t collisions = 0;
  std::size_t labeled_first = 0;
  std::size_t labeled_second = 0;
  std::optional<double> collision_rate;  // C / (A + C)
  std::optional<double> agreement_rate;  // A / min(|H1|, |H2|)
};

class PairwiseMatrix {
 public:
  explicit PairwiseMatrix(std::size_t n) : n_(n), cells_(n * n) {}
  std::size_t size() const noexcept { return n_; }
  // Diagonal cells are left empty.
  const std::optional<PairwiseCell>& at(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }
  std::optional<PairwiseCell>& at(std::size_t i, std::size_t j) { return cells_.at(i * n_ + j); }

 private:
  std::size_t n_;
  std::vector<std::optional<PairwiseCell>> cells_;
};

// Compares sets over the (ring, member) pairs both label. A pair a set
// claims both ways is conflicted and collides with anything.
PairwiseMatrix pairwise_matrix(std::span<const LabelSet> sets);

// Per-ring effective size: 1 if an unconflicted TrueSpend is present, else
// ring size minus unconflicted Decoys, never below 1.
std::vector<std::uint32_t> effective_ring_sizes(const ChainStore& chain, const LabelSet& combined);

struct RingSizeBucket {
  std::string period;
  double mean_effective = 0.0;
  double mean_nominal = 0.0;
  std::size_t ring_count = 0;
};

std::vector<RingSizeBucket> effective_ring_size_series(const ChainStore& chain,
                                                       const LabelSet& combined, Bucket bucket);

struct DecoyShareRow {
  std::string period;
  std::size_t set_index = 0;
  std::size_t decoys = 0;
  std::size_t ring_members = 0;
  double share = 0.0;
};

// Unconflicted Decoy pairs per set over all ring members of the period.
// Rows are ordered by period, then set index.
std::vector<DecoyShareRow> decoy_share_series(const ChainStore& chain,
                                              std::span<const LabelSet> sets, Bucket bucket);

struct CoinbaseOutputRow {
  std::string period;
  std::size_t coinbase_outputs = 0;
  std::optional<std::size_t> p2pool_outputs;
  std::optional<double> p2pool_share;
};

std::vector<CoinbaseOutputRow> coinbase_output_series(const ChainStore& chain,
                                                      const std::vector<PayoutRecord>* payouts,
                                                      Bucket bucket);

}  // namespace ringtrace
