#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ringtrace/calendar.hpp"
#include "ringtrace/errors.hpp"

namespace ringtrace {

using GlobalIndex = std::uint64_t;
using Height = std::int64_t;
using RingId = std::uint32_t;
using TxIndex = std::uint32_t;

// The two output keys Mordinal transfers pad their rings with. Nobody holds
// the private keys, so these outputs can never be a true spend.
inline constexpr std::string_view kBurnKeyZero =
    "0000000000000000000000000000000000000000000000000000000000000000";
inline constexpr std::string_view kBurnKeyDeadbeef =
    "deadbeefdeadbeefdeadbeefdeadbeefdeadbeefdeadbeefdeadbeefdead000f";

std::vector<std::string> default_burn_keys();
bool is_default_burn_key(std::string_view pk) noexcept;

// External identity of an input ring.
struct RingKey {
  std::string tx_id;
  std::uint32_t input_position = 0;

  auto operator<=>(const RingKey&) const = default;
};

struct RingKeyHash {
  std::size_t operator()(const RingKey& k) const noexcept;
};

struct OutputSpec {
  GlobalIndex g = 0;
  std::string pk;

  bool operator==(const OutputSpec&) const = default;
};

// One self-contained transaction as it appears in a chain file. Ring members
// are absolute global output indices.
struct TransactionRecord {
  std::string tx_id;
  Height height = 0;
  Timestamp timestamp = 0;
  bool coinbase = false;
  std::vector<std::string> extra_tags;
  std::vector<std::vector<GlobalIndex>> inputs;
  std::vector<OutputSpec> outputs;

  bool operator==(const TransactionRecord&) const = default;
};

struct OutputRecord {
  GlobalIndex global_index = 0;
  std::string_view pk;
  TxIndex creating_tx = 0;
  std::uint32_t position_in_tx = 0;
  Height creation_height = 0;
  bool is_coinbase = false;
  bool burned_key = false;
};

// View of one input ring. `members` keeps the file order; matching logic
// treats rings as sets.
struct InputRing {
  RingId id = 0;
  TxIndex tx = 0;
  std::uint32_t position = 0;
  std::span<const GlobalIndex> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(GlobalIndex g) const noexcept;
};

// Immutable indexed ledger. Rings are numbered densely in file order
// (transaction order, then input position). Not copyable: ring views point
// into the owned transaction records.
class ChainStore {
 public:
  ChainStore() = default;
  ChainStore(const ChainStore&) = delete;
  ChainStore& operator=(const ChainStore&) = delete;
  ChainStore(ChainStore&&) noexcept = default;
  ChainStore& operator=(ChainStore&&) noexcept = default;

  std::size_t tx_count() const noexcept { return txs_.size(); }
  std::size_t output_count() const noexcept { return outputs_.size(); }
  std::size_t ring_count() const noexcept { return ring_tx_.size(); }

  std::span<const TransactionRecord> transactions() const noexcept { return txs_; }
  const TransactionRecord& tx(TxIndex t) const { return txs_.at(t); }
  std::optional<TxIndex> find_tx(std::string_view tx_id) const;

  const OutputRecord* find_output(GlobalIndex g) const noexcept;
  // Throws Errc::UnknownOutputIndex.
  const OutputRecord& output(GlobalIndex g) const;

  InputRing ring(RingId r) const;
  RingKey ring_key(RingId r) const;
  std::optional<RingId> find_ring(const RingKey& key) const;
  std::optional<RingId> find_ring(std::string_view tx_id, std::uint32_t position) const;
  RingId first_ring_of(TxIndex t) const noexcept { return tx_first_ring_[t]; }

  TxIndex ring_tx(RingId r) const noexcept { return ring_tx_[r]; }
  Height spend_height(RingId r) const noexcept { return txs_[ring_tx_[r]].height; }
  Timestamp spend_time(RingId r) const noexcept { return txs_[ring_tx_[r]].timestamp; }

  // Rings whose members contain g, ascending. Empty for unknown g.
  std::span<const RingId> referencing_rings(GlobalIndex g) const noexcept;

  friend ChainStore build_chain(std::vector<TransactionRecord> transactions);

 private:
  std::vector<TransactionRecord> txs_;
  std::vector<OutputRecord> outputs_;
  std::vector<TxIndex> ring_tx_;
  std::vector<std::uint32_t> ring_position_;
  std::vector<RingId> tx_first_ring_;
  std::vector<std::size_t> ref_offsets_;
  std::vector<RingId> ref_rings_;
  std::unordered_map<std::string_view, TxIndex> tx_by_id_;
};

// Validates and indexes a transaction sequence. Errors carry the offending
// transaction ordinal in Error::record().
ChainStore build_chain(std::vector<TransactionRecord> transactions);

// Spend height minus creation height, in blocks. Throws Errc::MemberNotInRing.
Height member_age(const ChainStore& chain, RingId ring, GlobalIndex member);

}  // namespace ringtrace
