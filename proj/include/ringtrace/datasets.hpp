#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringtrace/chain.hpp"

namespace ringtrace {

struct PayoutRecord {
  std::string tx_id;
  GlobalIndex output_global_index = 0;
  std::string miner_id;

  bool operator==(const PayoutRecord&) const = default;
};

// miner_id -> owned outputs (ascending, deduplicated).
std::map<std::string, std::vector<GlobalIndex>> group_by_miner(const std::vector<PayoutRecord>& payouts);

// ring -> true spend. Also used for references derived from trusted label sets.
struct GroundTruth {
  std::map<RingId, GlobalIndex> entries;

  std::optional<GlobalIndex> find(RingId ring) const {
    auto it = entries.find(ring);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const noexcept { return entries.size(); }
};

}  // namespace ringtrace
