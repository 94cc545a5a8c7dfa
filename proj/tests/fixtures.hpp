#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ringtrace/calendar.hpp"
#include "ringtrace/chain.hpp"
#include "ringtrace/labels.hpp"

namespace fixtures {

using namespace ringtrace;

inline std::string key_for(GlobalIndex g) {
  char buf[65];
  std::snprintf(buf, sizeof buf, "%064llx", static_cast<unsigned long long>(g + 1));
  return buf;
}

// Builds small chains by hand. Heights must be added in order.
class ChainBuilder {
 public:
  explicit ChainBuilder(Timestamp start = start_of_day(make_date(2022, 1, 1)), Timestamp interval = 120)
      : start_(start), interval_(interval) {}

  std::vector<GlobalIndex> coinbase(Height h, std::size_t outputs) {
    return add(h, {}, outputs, {}, true);
  }

  std::vector<GlobalIndex> spend(Height h, std::vector<std::vector<GlobalIndex>> rings, std::size_t outputs = 1,
                                 std::vector<std::string> tags = {}) {
    return add(h, std::move(rings), outputs, std::move(tags), false);
  }

  // Output keys default to key_for(g); `pks` overrides them in order.
  std::vector<GlobalIndex> add(Height h, std::vector<std::vector<GlobalIndex>> rings, std::size_t outputs,
                               std::vector<std::string> tags, bool coinbase,
                               const std::vector<std::string>& pks = {}) {
    TransactionRecord tx;
    tx.tx_id = "tx" + std::to_string(txs.size());
    tx.height = h;
    tx.timestamp = timestamp ? *timestamp : start_ + h * interval_;
    tx.coinbase = coinbase;
    tx.extra_tags = std::move(tags);
    tx.inputs = std::move(rings);
    std::vector<GlobalIndex> made;
    for (std::size_t i = 0; i < outputs; ++i) {
      const GlobalIndex g = next_++;
      tx.outputs.push_back({g, i < pks.size() ? pks[i] : key_for(g)});
      made.push_back(g);
    }
    txs.push_back(std::move(tx));
    return made;
  }

  const std::string& last_id() const { return txs.back().tx_id; }
  ChainStore build() const { return build_chain(txs); }

  std::vector<TransactionRecord> txs;
  // Overrides the height-derived timestamp while set.
  std::optional<Timestamp> timestamp;

 private:
  Timestamp start_;
  Timestamp interval_;
  GlobalIndex next_ = 0;
};

// Random chain of small rings drawn uniformly from earlier outputs, with a
// fraction of singleton rings. True spends are distinct; ground truth is
// returned alongside.
struct RandomChain {
  std::vector<TransactionRecord> txs;
  std::vector<GlobalIndex> truth;  // per ring
};

inline RandomChain random_chain(std::uint64_t seed, std::size_t blocks, std::size_t txs_per_block,
                                std::size_t ring_size, double singleton_fraction, std::size_t max_inputs = 2) {
  std::mt19937_64 rng(seed);
  ChainBuilder b;
  RandomChain out;
  std::vector<GlobalIndex> unspent;
  std::vector<Height> created;
  for (Height h = 0; h < static_cast<Height>(blocks); ++h) {
    const std::size_t spendable = [&] {
      std::size_t n = 0;
      while (n < created.size() && created[n] < h) ++n;
      return n;
    }();
    for (GlobalIndex g : b.coinbase(h, 3)) {
      unspent.push_back(g);
      created.push_back(h);
    }
    for (std::size_t t = 0; t < txs_per_block && spendable > ring_size; ++t) {
      const std::size_t inputs = 1 + std::uniform_int_distribution<std::size_t>(0, max_inputs - 1)(rng);
      std::vector<std::vector<GlobalIndex>> rings;
      std::vector<GlobalIndex> spends;
      for (std::size_t i = 0; i < inputs; ++i) {
        std::vector<std::size_t> usable;
        for (std::size_t k = 0; k < unspent.size(); ++k) {
          if (created[unspent[k]] < h) usable.push_back(k);
        }
        if (usable.empty()) break;
        const std::size_t pick = usable[std::uniform_int_distribution<std::size_t>(0, usable.size() - 1)(rng)];
        const GlobalIndex s = unspent[pick];
        unspent.erase(unspent.begin() + static_cast<std::ptrdiff_t>(pick));
        const bool single = std::bernoulli_distribution(singleton_fraction)(rng);
        std::vector<GlobalIndex> ring{s};
        while (!single && ring.size() < ring_size) {
          const GlobalIndex d = std::uniform_int_distribution<GlobalIndex>(0, spendable - 1)(rng);
          if (std::find(ring.begin(), ring.end(), d) == ring.end()) ring.push_back(d);
        }
        std::sort(ring.begin(), ring.end());
        rings.push_back(ring);
        spends.push_back(s);
      }
      if (rings.empty()) continue;
      const auto made = b.spend(h, rings, 2);
      for (GlobalIndex g : made) {
        unspent.push_back(g);
        created.push_back(h);
      }
      out.truth.insert(out.truth.end(), spends.begin(), spends.end());
    }
  }
  out.txs = b.txs;
  return out;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ringtrace_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
