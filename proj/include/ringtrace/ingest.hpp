#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ringtrace/chain.hpp"
#include "ringtrace/datasets.hpp"
#include "ringtrace/labels.hpp"

// Line-oriented file formats:
//
//   chain     one JSON object per line:
//             {"tx_id":..,"height":..,"timestamp":..,"coinbase":..,
//              "extra_tags":[..],"inputs":[[g,..],..],"outputs":[{"g":..,"pk":..},..]}
//   payouts   tx_id,output_global_index,miner_id
//   truth     tx_id,input_position,true_spend_global_index
//   labels    tx_id,input_position,member_global_index,claim,heuristic,derived
//
// The delimited formats carry a header row. All errors report a 1-based line.
namespace ringtrace {

inline constexpr std::string_view kPayoutsHeader = "tx_id,output_global_index,miner_id";
inline constexpr std::string_view kTruthHeader = "tx_id,input_position,true_spend_global_index";
inline constexpr std::string_view kLabelsHeader =
    "tx_id,input_position,member_global_index,claim,heuristic,derived";

// Interns ring keys for files evaluated without a chain.
class RingKeyTable {
 public:
  RingId intern(const RingKey& key);
  std::optional<RingId> find(const RingKey& key) const;
  const RingKey& key(RingId r) const { return keys_.at(r); }
  std::size_t size() const noexcept { return keys_.size(); }

 private:
  std::vector<RingKey> keys_;
  std::unordered_map<RingKey, RingId, RingKeyHash> ids_;
};

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// chain
TransactionRecord parse_chain_line(std::string_view line, std::size_t line_no);
std::string format_chain_line(const TransactionRecord& tx);
std::vector<TransactionRecord> read_chain_records(const std::filesystem::path& path);
ChainStore parse_chain_file(const std::filesystem::path& path);
std::string format_chain(std::span<const TransactionRecord> txs);
void write_chain_file(const std::filesystem::path& path, std::span<const TransactionRecord> txs);

// payouts
std::vector<PayoutRecord> parse_payouts_text(std::string_view text);
std::vector<PayoutRecord> parse_payouts(const std::filesystem::path& path);
std::string format_payouts(const std::vector<PayoutRecord>& payouts);
void write_payouts(const std::filesystem::path& path, const std::vector<PayoutRecord>& payouts);

// ground truth
struct TruthRow {
  RingKey ring;
  GlobalIndex true_spend = 0;
};
std::vector<TruthRow> parse_truth_rows(std::string_view text);
// Validates every row against the chain: Errc::UnknownRing, Errc::TrueSpendNotInRing.
GroundTruth parse_ground_truth(const std::filesystem::path& path, const ChainStore& chain);
GroundTruth parse_ground_truth(const std::filesystem::path& path, RingKeyTable& keys);
std::string format_truth_rows(const std::vector<TruthRow>& rows);
std::string format_ground_truth(const GroundTruth& truth, const ChainStore& chain);

// labels
LabelSet parse_labels_text(std::string_view text, const ChainStore& chain);
LabelSet parse_labels_text(std::string_view text, RingKeyTable& keys);
LabelSet read_labels(const std::filesystem::path& path, const ChainStore& chain);
LabelSet read_labels(const std::filesystem::path& path, RingKeyTable& keys);
std::string format_labels(const LabelSet& labels, const ChainStore& chain);
std::string format_labels(const LabelSet& labels, const RingKeyTable& keys);
void write_labels(const std::filesystem::path& path, const LabelSet& labels, const ChainStore& chain);

}  // namespace ringtrace
