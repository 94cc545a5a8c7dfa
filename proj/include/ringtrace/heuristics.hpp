#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringtrace/calendar.hpp"
#include "ringtrace/chain.hpp"
#include "ringtrace/datasets.hpp"
#include "ringtrace/labels.hpp"

// Labeling passes. Each pass is a pure function of its inputs and returns a
// fresh LabelSet owned by its heuristic. None of them propagates
// consequences; call propagate_consequences() for that.
//
// The per-ring passes and the differ-by-one fingerprinting run as OpenMP
// loops. Output does not depend on the schedule: per-ring results are merged
// in ring order. ringtrace::serial holds the single-threaded reference
// versions the tests compare against.
namespace ringtrace {

inline constexpr std::string_view kMordinalMintTag = "10";
inline constexpr std::string_view kMordinalTransferTag = "11";

struct TenBlockParams {
  // Inclusive UTC calendar dates.
  Date window_first = make_date(2018, 10, 11);
  Date window_last = make_date(2023, 4, 10);
  Height age = 10;
};

struct CoinbaseParams {
  std::size_t max_inputs = 90;
  // Unset means every date qualifies.
  std::optional<Date> since = make_date(2021, 10, 1);
};

struct MordinalParams {
  std::vector<std::string> burn_keys = default_burn_keys();
};

LabelSet zero_mixin(const ChainStore& chain);

LabelSet ten_block_decoy_bug(const ChainStore& chain, const TenBlockParams& params = {});

// A ring that has exactly one partner (another ring of the same size sharing
// all but one member) gets its own odd member as TrueSpend, the rest Decoy.
// Rings of size 1 never match.
LabelSet differ_by_one(const ChainStore& chain);

// Transactions carrying a Mordinal mint or transfer tag, ascending.
std::vector<TxIndex> mordinal_transactions(const ChainStore& chain);

LabelSet mordinal_decoys(const ChainStore& chain, const MordinalParams& params = {});

LabelSet coinbase_decoys(const ChainStore& chain, const CoinbaseParams& params = {});

struct SweepRow {
  std::size_t threshold = 0;
  std::size_t decoys_marked = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
};

// One coinbase_decoys run per threshold, scored against `truth` the way
// precision_report scores labels.
std::vector<SweepRow> coinbase_threshold_sweep(const ChainStore& chain, const GroundTruth& truth,
                                               std::span<const std::size_t> thresholds,
                                               std::optional<Date> since);

// Throws Errc::UnknownOutputIndex if a payout names an output the chain does
// not have, or one created by a different transaction.
LabelSet p2pool_output_merging(const ChainStore& chain, const std::vector<PayoutRecord>& payouts);

// Adds, for every TrueSpend(m in R): Decoy(m in R') for each other ring R'
// referencing m, and Decoy(x in R) for every other member x of R. Added
// labels keep the source heuristic and are marked derived. Idempotent.
LabelSet propagate_consequences(const LabelSet& labels, const ChainStore& chain);

namespace serial {

LabelSet zero_mixin(const ChainStore& chain);
LabelSet ten_block_decoy_bug(const ChainStore& chain, const TenBlockParams& params = {});
LabelSet differ_by_one(const ChainStore& chain);
LabelSet mordinal_decoys(const ChainStore& chain, const MordinalParams& params = {});
LabelSet coinbase_decoys(const ChainStore& chain, const CoinbaseParams& params = {});

}  // namespace serial

}  // namespace ringtrace
