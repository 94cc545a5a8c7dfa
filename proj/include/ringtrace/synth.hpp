#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringtrace/calendar.hpp"
#include "ringtrace/chain.hpp"
#include "ringtrace/datasets.hpp"
#include "ringtrace/ingest.hpp"

namespace ringtrace::synth {

enum class WalletPolicy : std::uint8_t { Correct, TenBlockBug, CachedDecoys };

std::string_view to_string(WalletPolicy p) noexcept;
std::optional<WalletPolicy> parse_policy(std::string_view name) noexcept;

struct WalletWeight {
  WalletPolicy policy = WalletPolicy::Correct;
  double weight = 1.0;
};

struct IntRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

enum class TxRate : std::uint8_t { Poisson, Fixed };

struct MiningConfig {
  // Unset: no P2Pool blocks at all.
  std::optional<Date> p2pool_launch = make_date(2021, 10, 1);
  double p2pool_block_fraction = 0.0;
  std::size_t p2pool_fanout = 20;
  std::size_t miner_count = 8;
  IntRange consolidation_inputs{4, 12};
  IntRange pool_payout_inputs{1, 150};
  std::size_t pool_payout_outputs = 8;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t blocks = 1000;
  Timestamp start_time = start_of_day(make_date(2022, 1, 1));
  Timestamp block_interval = 120;

  TxRate tx_rate = TxRate::Poisson;
  double txs_per_block = 10.0;
  std::size_t max_inputs = 4;
  double extra_input_probability = 0.3;

  std::size_t ring_size = 16;
  Height lock_blocks = 10;
  // Decoy block offsets are log-uniform over the spendable history; values
  // above 1 push them towards recent blocks.
  double decoy_shape = 1.0;
  double zero_mixin_fraction = 0.0;

  std::vector<WalletWeight> wallets = {{WalletPolicy::Correct, 1.0}};
  // Probability a true spend is exactly lock_blocks old.
  double fast_spend_fraction = 0.05;
  double bug_age10_fraction = 0.3;
  // Consecutive single-input spends sharing one cached decoy list.
  std::size_t cache_length = 2;

  MiningConfig mining;

  // Expected Mordinal mints and transfers per block.
  double mint_rate = 0.0;
  double transfer_rate = 0.0;
};

// Strict JSON reader: unknown keys and bad values raise Errc::InvalidConfig.
GeneratorConfig parse_config(std::string_view json_text);
GeneratorConfig load_config(const std::filesystem::path& path);
std::string format_config(const GeneratorConfig& config);
void validate(const GeneratorConfig& config);

// Blocks at the start of every chain that hold only user-owned coinbase
// outputs, so early rings have enough members to draw from.
Height warmup_blocks(const GeneratorConfig& config) noexcept;

struct CachedSession {
  std::vector<RingKey> rings;
  std::vector<GlobalIndex> spends;
};

struct Tally {
  std::size_t coinbase = 0;
  std::size_t regular = 0;
  std::size_t mints = 0;
  std::size_t transfers = 0;
  std::size_t consolidations = 0;
  std::size_t pool_payouts = 0;
  std::size_t skipped = 0;
};

struct GeneratedChain {
  std::vector<TransactionRecord> transactions;
  std::vector<PayoutRecord> payouts;
  // One row per ring, in ring order.
  std::vector<TruthRow> truth;
  std::vector<CachedSession> cached_sessions;
  // Miner transactions spending only outputs the miner was paid.
  std::vector<std::string> consolidations;
  Tally tally;
};

// Deterministic in config.seed. Throws Errc::InfeasibleConfig when a ring
// cannot be filled from the outputs available.
GeneratedChain generate(const GeneratorConfig& config);

struct Expectation {
  Height warmup_blocks = 0;
  std::size_t coinbase_txs = 0;
  double regular_txs = 0.0;
  double mordinal_mints = 0.0;
  double payout_records = 0.0;
  // Expected payout-owned share of post-launch coinbase outputs.
  std::optional<double> p2pool_output_share;
};

Expectation describe(const GeneratorConfig& config);

// truth row i belongs to ring i.
GroundTruth ground_truth(const GeneratedChain& generated, const ChainStore& chain);

inline constexpr std::string_view kChainFile = "chain.jsonl";
inline constexpr std::string_view kPayoutsFile = "payouts.csv";
inline constexpr std::string_view kTruthFile = "truth.csv";

void write_generated(const GeneratedChain& generated, const std::filesystem::path& dir);

}  // namespace ringtrace::synth
