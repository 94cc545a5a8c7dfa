// Single-threaded reference versions of the parallel passes. Tests and the
// benchmark compare the OpenMP kernels against these.
#include <algorithm>
#include <map>

#include "ringtrace/heuristics.hpp"

namespace ringtrace::serial {

LabelSet zero_mixin(const ChainStore& chain) {
  LabelSet out(HeuristicId::ZeroMixin);
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    const InputRing ring = chain.ring(r);
    if (ring.size() == 1) {
      out.add({r, ring.members[0], Claim::TrueSpend, HeuristicId::ZeroMixin, false}, chain);
    }
  }
  return out;
}

LabelSet ten_block_decoy_bug(const ChainStore& chain, const TenBlockParams& params) {
  LabelSet out(HeuristicId::TenBlockDecoyBug);
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    const Date day = utc_date(chain.spend_time(r));
    if (day < params.window_first || day > params.window_last) continue;
    std::vector<GlobalIndex> ten_old;
    for (GlobalIndex g : chain.ring(r).members) {
      if (member_age(chain, r, g) == params.age) ten_old.push_back(g);
    }
    if (ten_old.size() != 1) continue;
    for (GlobalIndex g : chain.ring(r).members) {
      const Claim c = g == ten_old[0] ? Claim::TrueSpend : Claim::Decoy;
      out.add({r, g, c, HeuristicId::TenBlockDecoyBug, false}, chain);
    }
  }
  return out;
}

LabelSet differ_by_one(const ChainStore& chain) {
  // (n-1)-subset -> list of (ring, dropped member).
  std::map<std::vector<GlobalIndex>, std::vector<std::pair<RingId, GlobalIndex>>> subsets;
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    const InputRing ring = chain.ring(r);
    if (ring.size() < 2) continue;
    std::vector<GlobalIndex> sorted(ring.members.begin(), ring.members.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      std::vector<GlobalIndex> rest;
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k != i) rest.push_back(sorted[k]);
      }
      subsets[rest].emplace_back(r, sorted[i]);
    }
  }

  std::map<RingId, std::vector<std::pair<RingId, GlobalIndex>>> partners;
  for (const auto& [rest, users] : subsets) {
    for (const auto& [r, dropped] : users) {
      for (const auto& [r2, dropped2] : users) {
        if (dropped2 != dropped) partners[r].emplace_back(r2, dropped);
      }
    }
  }

  LabelSet out(HeuristicId::DifferByOne);
  for (const auto& [r, list] : partners) {
    if (list.size() != 1) continue;
    const GlobalIndex unique = list[0].second;
    for (GlobalIndex g : chain.ring(r).members) {
      const Claim c = g == unique ? Claim::TrueSpend : Claim::Decoy;
      out.add({r, g, c, HeuristicId::DifferByOne, false}, chain);
    }
  }
  return out;
}

LabelSet mordinal_decoys(const ChainStore& chain, const MordinalParams& params) {
  const std::vector<TxIndex> mt = mordinal_transactions(chain);
  auto is_mt = [&](TxIndex t) { return std::binary_search(mt.begin(), mt.end(), t); };
  auto is_mordinal = [&](GlobalIndex g) {
    const OutputRecord& o = chain.output(g);
    return o.position_in_tx == 0 && is_mt(o.creating_tx);
  };
  auto is_burned = [&](GlobalIndex g) {
    const std::string_view pk = chain.output(g).pk;
    return std::find(params.burn_keys.begin(), params.burn_keys.end(), pk) !=
           params.burn_keys.end();
  };

  LabelSet out(HeuristicId::Mordinal);
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    if (is_mt(chain.ring_tx(r))) continue;
    for (GlobalIndex g : chain.ring(r).members) {
      if (is_mordinal(g) || is_burned(g)) {
        out.add({r, g, Claim::Decoy, HeuristicId::Mordinal, false}, chain);
      }
    }
  }
  return out;
}

LabelSet coinbase_decoys(const ChainStore& chain, const CoinbaseParams& params) {
  LabelSet out(HeuristicId::Coinbase);
  for (std::size_t t = 0; t < chain.tx_count(); ++t) {
    const TransactionRecord& tx = chain.tx(static_cast<TxIndex>(t));
    if (tx.inputs.empty() || tx.inputs.size() > params.max_inputs) continue;
    if (params.since && utc_date(tx.timestamp) < *params.since) continue;
    for (std::size_t p = 0; p < tx.inputs.size(); ++p) {
      const RingId r = chain.first_ring_of(static_cast<TxIndex>(t)) + static_cast<RingId>(p);
      for (GlobalIndex g : tx.inputs[p]) {
        if (chain.output(g).is_coinbase) out.add({r, g, Claim::Decoy, HeuristicId::Coinbase, false}, chain);
      }
    }
  }
  return out;
}

}  // namespace ringtrace::serial
