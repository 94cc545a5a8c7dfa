#include "ringtrace/heuristics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <parallel/algorithm>
#endif

namespace ringtrace {

namespace {

// Runs rule(ring, out) for every ring in parallel, then merges in ring order.
template <class Rule>
LabelSet ring_pass(const ChainStore& chain, HeuristicId owner, Rule&& rule) {
  const auto n = static_cast<std::int64_t>(chain.ring_count());
  std::vector<std::vector<Label>> per_ring(chain.ring_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    rule(static_cast<RingId>(r), per_ring[static_cast<std::size_t>(r)]);
  }
  LabelSet out(owner);
  for (const auto& labels : per_ring) {
    for (const Label& l : labels) out.add(l);
  }
  return out;
}

bool in_window(Timestamp ts, Date first, Date last) {
  const Date d = utc_date(ts);
  return d >= first && d <= last;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

LabelSet zero_mixin(const ChainStore& chain) {
  return ring_pass(chain, HeuristicId::ZeroMixin, [&](RingId r, std::vector<Label>& out) {
    const InputRing ring = chain.ring(r);
    if (ring.size() == 1) {
      out.push_back({r, ring.members[0], Claim::TrueSpend, HeuristicId::ZeroMixin, false});
    }
  });
}

LabelSet ten_block_decoy_bug(const ChainStore& chain, const TenBlockParams& params) {
  return ring_pass(chain, HeuristicId::TenBlockDecoyBug, [&](RingId r, std::vector<Label>& out) {
    if (!in_window(chain.spend_time(r), params.window_first, params.window_last)) return;
    const InputRing ring = chain.ring(r);
    const Height spend = chain.spend_height(r);
    std::size_t hits = 0;
    GlobalIndex spent = 0;
    for (GlobalIndex g : ring.members) {
      if (spend - chain.output(g).creation_height == params.age) {
        ++hits;
        spent = g;
      }
    }
    if (hits != 1) return;
    for (GlobalIndex g : ring.members) {
      out.push_back({r, g, g == spent ? Claim::TrueSpend : Claim::Decoy,
                     HeuristicId::TenBlockDecoyBug, false});
    }
  });
}

LabelSet differ_by_one(const ChainStore& chain) {
  const std::size_t rings = chain.ring_count();

  // One leave-one-out fingerprint per (ring, member). The fingerprint of a
  // member set is a sum of mixed members, so dropping one is a subtraction.
  std::vector<std::size_t> offset(rings + 1, 0);
  for (std::size_t r = 0; r < rings; ++r) {
    const std::size_t n = chain.ring(static_cast<RingId>(r)).size();
    offset[r + 1] = offset[r] + (n >= 2 ? n : 0);
  }

  struct Entry {
    std::uint64_t fingerprint;
    RingId ring;
    GlobalIndex dropped;
  };
  std::vector<Entry> entries(offset[rings]);

  const auto n_rings = static_cast<std::int64_t>(rings);
#pragma omp parallel for schedule(static)
  for (std::int64_t ri = 0; ri < n_rings; ++ri) {
    const auto r = static_cast<RingId>(ri);
    const InputRing ring = chain.ring(r);
    if (ring.size() < 2) continue;
    std::uint64_t total = 0;
    for (GlobalIndex g : ring.members) total += mix64(g);
    const std::uint64_t salt = mix64(ring.size() * 0x100000001b3ULL);
    std::size_t slot = offset[r];
    for (GlobalIndex g : ring.members) {
      entries[slot++] = Entry{(total - mix64(g)) ^ salt, r, g};
    }
  }

  auto by_fingerprint = [](const Entry& a, const Entry& b) {
    return std::tie(a.fingerprint, a.ring, a.dropped) < std::tie(b.fingerprint, b.ring, b.dropped);
  };
#ifdef _OPENMP
  __gnu_parallel::sort(entries.begin(), entries.end(), by_fingerprint);
#else
  std::sort(entries.begin(), entries.end(), by_fingerprint);
#endif

  // Exact check behind the fingerprint: same ring size, same members once
  // each ring drops its own element.
  auto same_subset = [&](const Entry& a, const Entry& b) {
    const InputRing ra = chain.ring(a.ring);
    const InputRing rb = chain.ring(b.ring);
    if (ra.size() != rb.size()) return false;
    std::vector<GlobalIndex> sa, sb;
    sa.reserve(ra.size());
    sb.reserve(rb.size());
    for (GlobalIndex g : ra.members) if (g != a.dropped) sa.push_back(g);
    for (GlobalIndex g : rb.members) if (g != b.dropped) sb.push_back(g);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  };

  std::vector<std::uint32_t> partner_count(rings, 0);
  std::vector<GlobalIndex> unique_member(rings, 0);

  std::vector<std::vector<const Entry*>> classes;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].fingerprint == entries[i].fingerprint) ++j;
    if (j - i >= 2) {
      classes.clear();
      for (std::size_t k = i; k < j; ++k) {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& cls) {
          return same_subset(*cls.front(), entries[k]);
        });
        if (it == classes.end()) {
          classes.push_back({&entries[k]});
        } else {
          it->push_back(&entries[k]);
        }
      }
      for (const auto& cls : classes) {
        if (cls.size() < 2) continue;
        for (const Entry* e : cls) {
          // Rings dropping the same element as e are identical to e's ring.
          std::uint32_t others = 0;
          for (const Entry* f : cls) others += f->dropped != e->dropped;
          if (others == 0) continue;
          partner_count[e->ring] += others;
          unique_member[e->ring] = e->dropped;
        }
      }
    }
    i = j;
  }

  std::vector<std::vector<Label>> per_ring(rings);
  auto emit = [&](RingId r) {
    for (GlobalIndex g : chain.ring(r).members) {
      per_ring[r].push_back({r, g, g == unique_member[r] ? Claim::TrueSpend : Claim::Decoy,
                             HeuristicId::DifferByOne, false});
    }
  };
  for (std::size_t r = 0; r < rings; ++r) {
    if (partner_count[r] == 1) emit(static_cast<RingId>(r));
  }

  LabelSet out(HeuristicId::DifferByOne);
  for (const auto& labels : per_ring) {
    for (const Label& l : labels) out.add(l);
  }
  return out;
}

std::vector<TxIndex> mordinal_transactions(const ChainStore& chain) {
  std::vector<TxIndex> mt;
  const auto txs = chain.transactions();
  for (std::size_t t = 0; t < txs.size(); ++t) {
    for (const std::string& tag : txs[t].extra_tags) {
      if (tag == kMordinalMintTag || tag == kMordinalTransferTag) {
        mt.push_back(static_cast<TxIndex>(t));
        break;
      }
    }
  }
  return mt;
}

LabelSet mordinal_decoys(const ChainStore& chain, const MordinalParams& params) {
  std::vector<char> in_mt(chain.tx_count(), 0);
  std::vector<char> flagged(chain.output_count(), 0);
  for (TxIndex t : mordinal_transactions(chain)) {
    in_mt[t] = 1;
    const auto& outs = chain.tx(t).outputs;
    if (!outs.empty()) flagged[outs.front().g] = 1;
  }
  for (GlobalIndex g = 0; g < chain.output_count(); ++g) {
    const std::string_view pk = chain.output(g).pk;
    if (std::find(params.burn_keys.begin(), params.burn_keys.end(), pk) != params.burn_keys.end()) {
      flagged[g] = 1;
    }
  }
  return ring_pass(chain, HeuristicId::Mordinal, [&](RingId r, std::vector<Label>& out) {
    if (in_mt[chain.ring_tx(r)]) return;
    for (GlobalIndex g : chain.ring(r).members) {
      if (flagged[g]) out.push_back({r, g, Claim::Decoy, HeuristicId::Mordinal, false});
    }
  });
}

LabelSet coinbase_decoys(const ChainStore& chain, const CoinbaseParams& params) {
  return ring_pass(chain, HeuristicId::Coinbase, [&](RingId r, std::vector<Label>& out) {
    const TransactionRecord& tx = chain.tx(chain.ring_tx(r));
    if (tx.inputs.size() > params.max_inputs) return;
    if (params.since && utc_date(tx.timestamp) < *params.since) return;
    for (GlobalIndex g : chain.ring(r).members) {
      if (chain.output(g).is_coinbase) {
        out.push_back({r, g, Claim::Decoy, HeuristicId::Coinbase, false});
      }
    }
  });
}

std::vector<SweepRow> coinbase_threshold_sweep(const ChainStore& chain, const GroundTruth& truth,
                                               std::span<const std::size_t> thresholds,
                                               std::optional<Date> since) {
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (std::size_t threshold : thresholds) {
    const LabelSet labels = coinbase_decoys(chain, CoinbaseParams{threshold, since});
    SweepRow row{threshold, labels.size(), 0, 0};
    for (const Label& l : labels.labels()) {
      auto spend = truth.find(l.ring);
      if (!spend) continue;
      if (*spend != l.member) {
        ++row.tp;
      } else {
        ++row.fp;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

LabelSet p2pool_output_merging(const ChainStore& chain, const std::vector<PayoutRecord>& payouts) {
  constexpr std::int32_t kUnowned = -1;
  std::vector<std::int32_t> owner(chain.output_count(), kUnowned);
  const auto owned = group_by_miner(payouts);
  std::map<std::string, std::int32_t> miner_index;
  for (const auto& [miner, outs] : owned) {
    miner_index.emplace(miner, static_cast<std::int32_t>(miner_index.size()));
  }
  for (const PayoutRecord& p : payouts) {
    const OutputRecord* out = chain.find_output(p.output_global_index);
    if (out == nullptr || chain.tx(out->creating_tx).tx_id != p.tx_id) {
      throw Error(Errc::UnknownOutputIndex, "payout " + p.tx_id + ":" +
                                                std::to_string(p.output_global_index) +
                                                " does not name an output of that transaction");
    }
    const std::int32_t m = miner_index.at(p.miner_id);
    std::int32_t& slot = owner[p.output_global_index];
    if (slot != kUnowned && slot != m) {
      throw Error(Errc::DuplicatePayout, "output " + std::to_string(p.output_global_index) +
                                             " is paid to two miners");
    }
    slot = m;
  }

  struct Candidate {
    TxIndex tx;
    std::int32_t miner;
    std::size_t owned_refs;
  };
  std::vector<Candidate> candidates;

  std::vector<std::int32_t> miners, ring_miners, kept;
  std::vector<GlobalIndex> refs;
  for (std::size_t t = 0; t < chain.tx_count(); ++t) {
    const TransactionRecord& tx = chain.tx(static_cast<TxIndex>(t));
    if (tx.inputs.empty()) continue;
    miners.clear();
    for (std::size_t p = 0; p < tx.inputs.size(); ++p) {
      ring_miners.clear();
      for (GlobalIndex g : tx.inputs[p]) {
        if (owner[g] != kUnowned) ring_miners.push_back(owner[g]);
      }
      std::sort(ring_miners.begin(), ring_miners.end());
      ring_miners.erase(std::unique(ring_miners.begin(), ring_miners.end()), ring_miners.end());
      if (p == 0) {
        miners = ring_miners;
      } else {
        kept.clear();
        std::set_intersection(miners.begin(), miners.end(), ring_miners.begin(),
                              ring_miners.end(), std::back_inserter(kept));
        miners.swap(kept);
      }
      if (miners.empty()) break;
    }
    for (std::int32_t m : miners) {
      refs.clear();
      for (const auto& ring : tx.inputs) {
        for (GlobalIndex g : ring) {
          if (owner[g] == m) refs.push_back(g);
        }
      }
      std::sort(refs.begin(), refs.end());
      refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
      candidates.push_back({static_cast<TxIndex>(t), m, refs.size()});
    }
  }

  // Winner per owned output: most owned references, then earliest block,
  // then smallest tx_id.
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.owned_refs != b.owned_refs) return a.owned_refs > b.owned_refs;
    const TransactionRecord& ta = chain.tx(a.tx);
    const TransactionRecord& tb = chain.tx(b.tx);
    if (ta.height != tb.height) return ta.height < tb.height;
    return ta.tx_id < tb.tx_id;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> winner(chain.output_count(), kNone);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Candidate& cand = candidates[c];
    for (const auto& ring : chain.tx(cand.tx).inputs) {
      for (GlobalIndex g : ring) {
        if (owner[g] != cand.miner) continue;
        if (winner[g] == kNone || better(cand, candidates[winner[g]])) winner[g] = c;
      }
    }
  }

  // Spends go in before decoys: a transaction can be kept for two miners,
  // and the one-label-per-key rule would otherwise let a decoy claim shadow
  // the other miner's spend.
  std::vector<RingId> labeled_rings;
  std::vector<std::size_t> labeled_by;
  LabelSet out(HeuristicId::P2PoolMerge);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Candidate& cand = candidates[c];
    const RingId first = chain.first_ring_of(cand.tx);
    const auto& inputs = chain.tx(cand.tx).inputs;
    for (std::size_t p = 0; p < inputs.size(); ++p) {
      const RingId r = first + static_cast<RingId>(p);
      bool labeled = false;
      for (GlobalIndex g : inputs[p]) {
        if (owner[g] == cand.miner && winner[g] == c) {
          out.add({r, g, Claim::TrueSpend, HeuristicId::P2PoolMerge, false});
          labeled = true;
        }
      }
      if (labeled) {
        labeled_rings.push_back(r);
        labeled_by.push_back(c);
      }
    }
  }
  for (std::size_t k = 0; k < labeled_rings.size(); ++k) {
    const RingId r = labeled_rings[k];
    const std::int32_t miner = candidates[labeled_by[k]].miner;
    for (GlobalIndex g : chain.ring(r).members) {
      if (owner[g] != miner) out.add({r, g, Claim::Decoy, HeuristicId::P2PoolMerge, false});
    }
  }
  return out;
}

LabelSet propagate_consequences(const LabelSet& labels, const ChainStore& chain) {
  LabelSet out = labels;
  for (const Label& l : labels.labels()) {
    if (l.claim != Claim::TrueSpend) continue;
    for (RingId other : chain.referencing_rings(l.member)) {
      if (other != l.ring) out.add({other, l.member, Claim::Decoy, l.heuristic, true});
    }
    for (GlobalIndex g : chain.ring(l.ring).members) {
      if (g != l.member) out.add({l.ring, g, Claim::Decoy, l.heuristic, true});
    }
  }
  return out;
}

}  // namespace ringtrace
