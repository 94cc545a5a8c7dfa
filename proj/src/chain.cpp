#include "ringtrace/chain.hpp"

#include <algorithm>
#include <functional>

namespace ringtrace {

std::vector<std::string> default_burn_keys() {
  return {std::string{kBurnKeyZero}, std::string{kBurnKeyDeadbeef}};
}

bool is_default_burn_key(std::string_view pk) noexcept {
  return pk == kBurnKeyZero || pk == kBurnKeyDeadbeef;
}

std::size_t RingKeyHash::operator()(const RingKey& k) const noexcept {
  return std::hash<std::string>{}(k.tx_id) * 31u + k.input_position;
}

bool InputRing::contains(GlobalIndex g) const noexcept {
  return std::find(members.begin(), members.end(), g) != members.end();
}

std::optional<TxIndex> ChainStore::find_tx(std::string_view tx_id) const {
  auto it = tx_by_id_.find(tx_id);
  if (it == tx_by_id_.end()) return std::nullopt;
  return it->second;
}

const OutputRecord* ChainStore::find_output(GlobalIndex g) const noexcept {
  return g < outputs_.size() ? &outputs_[g] : nullptr;
}

const OutputRecord& ChainStore::output(GlobalIndex g) const {
  if (g >= outputs_.size()) {
    throw Error(Errc::UnknownOutputIndex, "no output with global index " + std::to_string(g));
  }
  return outputs_[g];
}

InputRing ChainStore::ring(RingId r) const {
  if (r >= ring_tx_.size()) {
    throw Error(Errc::UnknownRing, "ring id " + std::to_string(r) + " out of range");
  }
  const TxIndex t = ring_tx_[r];
  const std::uint32_t pos = ring_position_[r];
  return InputRing{r, t, pos, txs_[t].inputs[pos]};
}

RingKey ChainStore::ring_key(RingId r) const {
  const InputRing view = ring(r);
  return RingKey{txs_[view.tx].tx_id, view.position};
}

std::optional<RingId> ChainStore::find_ring(std::string_view tx_id,
                                            std::uint32_t position) const {
  auto t = find_tx(tx_id);
  if (!t || position >= txs_[*t].inputs.size()) return std::nullopt;
  return tx_first_ring_[*t] + position;
}

std::optional<RingId> ChainStore::find_ring(const RingKey& key) const {
  return find_ring(key.tx_id, key.input_position);
}

std::span<const RingId> ChainStore::referencing_rings(GlobalIndex g) const noexcept {
  if (g >= outputs_.size()) return {};
  return std::span<const RingId>(ref_rings_).subspan(ref_offsets_[g],
                                                     ref_offsets_[g + 1] - ref_offsets_[g]);
}

ChainStore build_chain(std::vector<TransactionRecord> transactions) {
  ChainStore store;
  store.txs_ = std::move(transactions);
  const auto& txs = store.txs_;

  std::size_t total_rings = 0;
  std::size_t total_outputs = 0;
  for (const auto& tx : txs) {
    total_rings += tx.inputs.size();
    total_outputs += tx.outputs.size();
  }
  store.outputs_.reserve(total_outputs);
  store.ring_tx_.reserve(total_rings);
  store.ring_position_.reserve(total_rings);
  store.tx_first_ring_.reserve(txs.size());
  store.tx_by_id_.reserve(txs.size());

  std::vector<GlobalIndex> sorted;
  for (std::size_t i = 0; i < txs.size(); ++i) {
    const TransactionRecord& tx = txs[i];
    const auto t = static_cast<TxIndex>(i);
    auto fail = [&](Errc code, const std::string& msg) -> void {
      throw Error(code, "tx " + tx.tx_id + ": " + msg, 0, i);
    };

    if (i > 0) {
      if (tx.height < txs[i - 1].height) {
        fail(Errc::NonMonotonicHeight, "height " + std::to_string(tx.height) +
                                           " after height " + std::to_string(txs[i - 1].height));
      }
      if (tx.timestamp < txs[i - 1].timestamp) {
        fail(Errc::NonMonotonicTimestamp, "timestamp decreases");
      }
    }
    if (!store.tx_by_id_.emplace(tx.tx_id, t).second) {
      fail(Errc::DuplicateTxId, "duplicate transaction id");
    }
    if (tx.coinbase && !tx.inputs.empty()) {
      fail(Errc::InvalidRing, "coinbase transaction with inputs");
    }

    store.tx_first_ring_.push_back(static_cast<RingId>(store.ring_tx_.size()));
    for (std::size_t p = 0; p < tx.inputs.size(); ++p) {
      const auto& members = tx.inputs[p];
      if (members.empty()) fail(Errc::InvalidRing, "input " + std::to_string(p) + " is empty");
      for (GlobalIndex g : members) {
        if (g >= store.outputs_.size()) {
          fail(Errc::DanglingReference, "input " + std::to_string(p) +
                                            " references output " + std::to_string(g) +
                                            " which does not exist before this transaction");
        }
        if (store.outputs_[g].creation_height >= tx.height) {
          fail(Errc::InvalidRing, "input " + std::to_string(p) + " references output " +
                                      std::to_string(g) + " created in the same block");
        }
      }
      sorted.assign(members.begin(), members.end());
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(Errc::InvalidRing, "input " + std::to_string(p) + " repeats a member");
      }
      store.ring_tx_.push_back(t);
      store.ring_position_.push_back(static_cast<std::uint32_t>(p));
    }

    for (std::size_t o = 0; o < tx.outputs.size(); ++o) {
      const OutputSpec& spec = tx.outputs[o];
      const GlobalIndex expected = store.outputs_.size();
      if (spec.g < expected) {
        fail(Errc::DuplicateGlobalIndex, "output index " + std::to_string(spec.g) + " reused");
      }
      if (spec.g > expected) {
        fail(Errc::NonDenseIndex, "output index " + std::to_string(spec.g) + " where " +
                                      std::to_string(expected) + " was expected");
      }
      store.outputs_.push_back(OutputRecord{spec.g, spec.pk, t, static_cast<std::uint32_t>(o),
                                            tx.height, tx.coinbase,
                                            is_default_burn_key(spec.pk)});
    }
  }

  // Referencing-ring index, CSR over global indices.
  const std::size_t n = store.outputs_.size();
  store.ref_offsets_.assign(n + 1, 0);
  for (std::size_t r = 0; r < store.ring_tx_.size(); ++r) {
    for (GlobalIndex g : store.ring(static_cast<RingId>(r)).members) ++store.ref_offsets_[g + 1];
  }
  for (std::size_t g = 0; g < n; ++g) store.ref_offsets_[g + 1] += store.ref_offsets_[g];
  store.ref_rings_.resize(store.ref_offsets_[n]);
  std::vector<std::size_t> cursor(store.ref_offsets_.begin(), store.ref_offsets_.end() - 1);
  for (std::size_t r = 0; r < store.ring_tx_.size(); ++r) {
    for (GlobalIndex g : store.ring(static_cast<RingId>(r)).members) {
      store.ref_rings_[cursor[g]++] = static_cast<RingId>(r);
    }
  }
  return store;
}

Height member_age(const ChainStore& chain, RingId ring, GlobalIndex member) {
  const InputRing view = chain.ring(ring);
  if (!view.contains(member)) {
    throw Error(Errc::MemberNotInRing, "output " + std::to_string(member) +
                                           " is not a member of ring " + std::to_string(ring));
  }
  return chain.spend_height(ring) - chain.output(member).creation_height;
}

}  // namespace ringtrace
