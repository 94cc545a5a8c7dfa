#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "ringtrace/heuristics.hpp"
#include "ringtrace/synth.hpp"

using namespace ringtrace;
using namespace ringtrace::synth;

namespace {

GeneratorConfig busy_config(std::uint64_t seed) {
  GeneratorConfig c;
  c.seed = seed;
  c.blocks = 400;
  c.start_time = start_of_day(make_date(2021, 9, 28));
  c.block_interval = 1200;
  c.txs_per_block = 5;
  c.ring_size = 6;
  c.zero_mixin_fraction = 0.05;
  c.wallets = {{WalletPolicy::Correct, 2}, {WalletPolicy::TenBlockBug, 1}, {WalletPolicy::CachedDecoys, 1}};
  c.mining.p2pool_block_fraction = 0.5;
  c.mint_rate = 0.3;
  c.transfer_rate = 0.3;
  return c;
}

void expect_invalid(const std::string& json) {
  try {
    parse_config(json);
    ADD_FAILURE() << "accepted " << json;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidConfig) << json;
  }
}

}  // namespace

TEST(Synth, PolicyNames) {
  for (WalletPolicy p : {WalletPolicy::Correct, WalletPolicy::TenBlockBug, WalletPolicy::CachedDecoys}) {
    EXPECT_EQ(parse_policy(to_string(p)), p);
  }
  EXPECT_FALSE(parse_policy("buggy"));
}

TEST(Synth, ConfigRoundTrip) {
  const GeneratorConfig c = busy_config(5);
  const std::string text = format_config(c);
  EXPECT_EQ(format_config(parse_config(text)), text);

  const GeneratorConfig d = parse_config(R"({"start_date": "2020-02-29", "mining": {"p2pool_launch": null},
      "txs_per_block": {"distribution": "fixed", "mean": 3}})");
  EXPECT_EQ(d.start_time, start_of_day(make_date(2020, 2, 29)));
  EXPECT_FALSE(d.mining.p2pool_launch);
  EXPECT_EQ(d.tx_rate, TxRate::Fixed);
  EXPECT_EQ(d.ring_size, 16u);
}

TEST(Synth, ConfigRejections) {
  expect_invalid("{");
  expect_invalid(R"({"sed": 1})");
  expect_invalid(R"({"mining": {"fanout": 3}})");
  expect_invalid(R"({"ring_size": 0})");
  expect_invalid(R"({"ring_size": -3})");
  expect_invalid(R"({"ring_size": "16"})");
  expect_invalid(R"({"zero_mixin_fraction": 1.5})");
  expect_invalid(R"({"wallets": []})");
  expect_invalid(R"({"wallets": [{"policy": "lazy"}]})");
  expect_invalid(R"({"wallets": [{"policy": "correct", "weight": 0}]})");
  expect_invalid(R"({"start_date": "2022-13-01"})");
  expect_invalid(R"({"start_date": "2022-01-01", "start_time": 5})");
  expect_invalid(R"({"txs_per_block": {"distribution": "uniform"}})");
  expect_invalid(R"({"mining": {"pool_payout_inputs": {"min": 5, "max": 2}}})");
  expect_invalid(R"([1, 2])");
  GeneratorConfig c;
  c.cache_length = 0;
  EXPECT_THROW(generate(c), Error);
}

TEST(Synth, DeterministicInSeed) {
  const GeneratedChain a = generate(busy_config(3));
  const GeneratedChain b = generate(busy_config(3));
  EXPECT_EQ(a.transactions, b.transactions);
  EXPECT_EQ(a.payouts, b.payouts);
  EXPECT_EQ(format_truth_rows(a.truth), format_truth_rows(b.truth));
  EXPECT_NE(generate(busy_config(4)).transactions, a.transactions);
}

TEST(Synth, ChainInvariants) {
  const GeneratorConfig config = busy_config(8);
  const GeneratedChain gen = generate(config);
  const ChainStore chain = build_chain(gen.transactions);
  ASSERT_EQ(gen.truth.size(), chain.ring_count());
  const GroundTruth truth = ground_truth(gen, chain);

  std::set<GlobalIndex> spent;
  for (RingId r = 0; r < chain.ring_count(); ++r) {
    EXPECT_EQ(chain.ring_key(r), gen.truth[r].ring);
    const GlobalIndex s = *truth.find(r);
    EXPECT_TRUE(chain.ring(r).contains(s));
    EXPECT_TRUE(spent.insert(s).second) << "output spent twice";
    EXPECT_FALSE(chain.output(s).burned_key);
    for (GlobalIndex g : chain.ring(r).members) EXPECT_GE(member_age(chain, r, g), config.lock_blocks);
  }
  EXPECT_EQ(gen.tally.coinbase, config.blocks);
  EXPECT_GT(gen.tally.mints, 0u);
  EXPECT_GT(gen.tally.transfers, 0u);
  EXPECT_GT(gen.tally.consolidations, 0u);
  EXPECT_GT(gen.tally.pool_payouts, 0u);
  EXPECT_EQ(gen.consolidations.size(), gen.tally.consolidations);

  const auto mt = mordinal_transactions(chain);
  EXPECT_EQ(mt.size(), gen.tally.mints + gen.tally.transfers);
}

TEST(Synth, PayoutsOnlyAfterLaunch) {
  const GeneratorConfig config = busy_config(9);
  const GeneratedChain gen = generate(config);
  const ChainStore chain = build_chain(gen.transactions);
  ASSERT_FALSE(gen.payouts.empty());
  for (const PayoutRecord& p : gen.payouts) {
    const OutputRecord& o = chain.output(p.output_global_index);
    EXPECT_TRUE(o.is_coinbase);
    EXPECT_EQ(chain.tx(o.creating_tx).tx_id, p.tx_id);
    EXPECT_GE(utc_date(chain.tx(o.creating_tx).timestamp), *config.mining.p2pool_launch);
  }
  GeneratorConfig never = config;
  never.mining.p2pool_launch.reset();
  EXPECT_TRUE(generate(never).payouts.empty());
}

TEST(Synth, CachedSessionsShareDecoys) {
  GeneratorConfig config = busy_config(10);
  config.wallets = {{WalletPolicy::CachedDecoys, 1}};
  config.cache_length = 3;
  const GeneratedChain gen = generate(config);
  const ChainStore chain = build_chain(gen.transactions);
  ASSERT_FALSE(gen.cached_sessions.empty());
  std::size_t full = 0;
  for (const CachedSession& s : gen.cached_sessions) {
    ASSERT_EQ(s.rings.size(), s.spends.size());
    EXPECT_LE(s.rings.size(), 3u);
    full += s.rings.size() == 3;
    std::set<GlobalIndex> shared;
    for (std::size_t i = 0; i < s.rings.size(); ++i) {
      const InputRing ring = chain.ring(*chain.find_ring(s.rings[i]));
      std::set<GlobalIndex> decoys(ring.members.begin(), ring.members.end());
      EXPECT_EQ(decoys.erase(s.spends[i]), 1u);
      if (i == 0) shared = decoys;
      EXPECT_EQ(decoys, shared);
    }
  }
  EXPECT_GT(full, 0u);
}

TEST(Synth, TenBlockBugWalletsAvoidTenBlockDecoys) {
  GeneratorConfig config = busy_config(12);
  config.wallets = {{WalletPolicy::TenBlockBug, 1}};
  config.mint_rate = config.transfer_rate = 0;
  config.mining.p2pool_block_fraction = 0;
  const GeneratedChain gen = generate(config);
  const ChainStore chain = build_chain(gen.transactions);
  const GroundTruth truth = ground_truth(gen, chain);
  std::size_t age_ten_spends = 0;
  for (const TransactionRecord& tx : chain.transactions()) {
    if (tx.coinbase || tx.inputs.empty()) continue;
    const RingId r = chain.first_ring_of(*chain.find_tx(tx.tx_id));
    if (chain.ring(r).size() < 2 || chain.output(*truth.find(r)).is_coinbase) continue;
    for (GlobalIndex g : chain.ring(r).members) {
      if (g == *truth.find(r)) continue;
      EXPECT_NE(member_age(chain, r, g), config.lock_blocks);
    }
    age_ten_spends += member_age(chain, r, *truth.find(r)) == config.lock_blocks;
  }
  EXPECT_GT(age_ten_spends, 0u);
}

TEST(Synth, DescribeMatchesFixedRateRun) {
  GeneratorConfig config;
  config.blocks = 200;
  config.tx_rate = TxRate::Fixed;
  config.txs_per_block = 3;
  config.mining.p2pool_launch.reset();
  const Expectation e = describe(config);
  EXPECT_EQ(e.warmup_blocks, warmup_blocks(config));
  EXPECT_EQ(e.coinbase_txs, 200u);
  EXPECT_EQ(e.regular_txs, (200.0 - static_cast<double>(e.warmup_blocks)) * 3);
  EXPECT_FALSE(e.p2pool_output_share);
  const GeneratedChain gen = generate(config);
  EXPECT_EQ(static_cast<double>(gen.tally.regular + gen.tally.skipped), e.regular_txs);
}

TEST(Synth, DescribeP2PoolShare) {
  GeneratorConfig config;
  config.blocks = 3000;
  config.txs_per_block = 1;
  config.ring_size = 4;
  config.mining.p2pool_block_fraction = 0.25;
  config.mining.p2pool_fanout = 12;
  const Expectation e = describe(config);
  ASSERT_TRUE(e.p2pool_output_share);
  EXPECT_DOUBLE_EQ(*e.p2pool_output_share, 3.0 / 3.75);
  const GeneratedChain gen = generate(config);
  const double records = static_cast<double>(gen.payouts.size());
  EXPECT_NEAR(records, e.payout_records, 5 * std::sqrt(e.payout_records * 12));
}

TEST(Synth, WritesThreeFiles) {
  const auto dir = fixtures::scratch_dir("synth_write");
  const GeneratedChain gen = generate(busy_config(2));
  write_generated(gen, dir / "out");
  const ChainStore chain = parse_chain_file(dir / "out" / std::string(kChainFile));
  EXPECT_EQ(chain.tx_count(), gen.transactions.size());
  EXPECT_EQ(parse_payouts(dir / "out" / std::string(kPayoutsFile)), gen.payouts);
  EXPECT_EQ(parse_ground_truth(dir / "out" / std::string(kTruthFile), chain).size(), chain.ring_count());
}
