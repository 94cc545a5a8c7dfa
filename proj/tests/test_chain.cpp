#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "ringtrace/errors.hpp"

using namespace ringtrace;
using fixtures::ChainBuilder;

namespace {

Errc build_error(const std::vector<TransactionRecord>& txs, std::size_t* record = nullptr) {
  try {
    build_chain(txs);
  } catch (const Error& e) {
    if (record) *record = e.record();
    return e.code();
  }
  ADD_FAILURE() << "build_chain accepted an invalid chain";
  return Errc::InvalidConfig;
}

ChainBuilder small_chain() {
  ChainBuilder b;
  b.coinbase(0, 4);             // 0..3
  b.spend(1, {{0, 1}, {2}}, 2);  // 4,5
  b.spend(2, {{1, 3, 4}}, 1);    // 6
  return b;
}

}  // namespace

TEST(Chain, IndexesTransactionsOutputsAndRings) {
  const ChainStore chain = small_chain().build();
  EXPECT_EQ(chain.tx_count(), 3u);
  EXPECT_EQ(chain.output_count(), 7u);
  EXPECT_EQ(chain.ring_count(), 3u);

  EXPECT_EQ(chain.find_tx("tx1"), TxIndex{1});
  EXPECT_FALSE(chain.find_tx("nope"));

  const OutputRecord& o = chain.output(5);
  EXPECT_EQ(o.creating_tx, 1u);
  EXPECT_EQ(o.position_in_tx, 1u);
  EXPECT_EQ(o.creation_height, 1);
  EXPECT_FALSE(o.is_coinbase);
  EXPECT_TRUE(chain.output(2).is_coinbase);
  EXPECT_EQ(chain.find_output(7), nullptr);

  const InputRing r = chain.ring(1);
  EXPECT_EQ(r.tx, 1u);
  EXPECT_EQ(r.position, 1u);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.members[0], 2u);
  EXPECT_EQ(chain.ring_key(2), (RingKey{"tx2", 0}));
  EXPECT_EQ(chain.find_ring(RingKey{"tx1", 1}), RingId{1});
  EXPECT_EQ(chain.find_ring("tx2", 0), RingId{2});
  EXPECT_FALSE(chain.find_ring("tx2", 1));
  EXPECT_EQ(chain.first_ring_of(2), 2u);
  EXPECT_EQ(chain.spend_height(2), 2);
}

TEST(Chain, ReferencingRingsMatchBruteForce) {
  const auto rc = fixtures::random_chain(11, 60, 3, 4, 0.1);
  const ChainStore chain = build_chain(rc.txs);
  for (GlobalIndex g = 0; g < chain.output_count(); ++g) {
    std::vector<RingId> expected;
    for (RingId r = 0; r < chain.ring_count(); ++r) {
      if (chain.ring(r).contains(g)) expected.push_back(r);
    }
    const auto got = chain.referencing_rings(g);
    EXPECT_EQ(std::vector<RingId>(got.begin(), got.end()), expected) << "output " << g;
  }
}

TEST(Chain, MemberAge) {
  const ChainStore chain = small_chain().build();
  EXPECT_EQ(member_age(chain, 2, 1), 2);
  EXPECT_EQ(member_age(chain, 2, 4), 1);
  try {
    member_age(chain, 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MemberNotInRing);
  }
}

TEST(Chain, LookupErrors) {
  const ChainStore chain = small_chain().build();
  EXPECT_THROW(chain.output(99), Error);
  try {
    chain.ring(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownRing);
  }
}

TEST(Chain, RejectsDanglingReference) {
  ChainBuilder b = small_chain();
  b.txs[2].inputs[0].push_back(42);
  std::size_t record = 0;
  EXPECT_EQ(build_error(b.txs, &record), Errc::DanglingReference);
  EXPECT_EQ(record, 2u);
}

TEST(Chain, RejectsHeightAndTimestampRegressions) {
  ChainBuilder b = small_chain();
  b.txs[2].height = 0;
  EXPECT_EQ(build_error(b.txs), Errc::NonMonotonicHeight);

  ChainBuilder c = small_chain();
  c.txs[2].timestamp = c.txs[1].timestamp - 1;
  EXPECT_EQ(build_error(c.txs), Errc::NonMonotonicTimestamp);
}

TEST(Chain, RejectsBadOutputIndices) {
  ChainBuilder b = small_chain();
  b.txs[2].outputs[0].g = 5;
  EXPECT_EQ(build_error(b.txs), Errc::DuplicateGlobalIndex);

  ChainBuilder c = small_chain();
  c.txs[2].outputs[0].g = 9;
  EXPECT_EQ(build_error(c.txs), Errc::NonDenseIndex);
}

TEST(Chain, RejectsDuplicateTxIds) {
  ChainBuilder b = small_chain();
  b.txs[2].tx_id = "tx0";
  EXPECT_EQ(build_error(b.txs), Errc::DuplicateTxId);
}

TEST(Chain, RejectsInvalidRings) {
  ChainBuilder empty = small_chain();
  empty.txs[2].inputs.push_back({});
  EXPECT_EQ(build_error(empty.txs), Errc::InvalidRing);

  ChainBuilder repeat = small_chain();
  repeat.txs[2].inputs[0] = {1, 1, 4};
  EXPECT_EQ(build_error(repeat.txs), Errc::InvalidRing);

  ChainBuilder same_height;
  same_height.coinbase(0, 2);
  same_height.spend(0, {{0}});
  EXPECT_EQ(build_error(same_height.txs), Errc::InvalidRing);

  ChainBuilder coinbase_inputs = small_chain();
  coinbase_inputs.txs[1].coinbase = true;
  EXPECT_EQ(build_error(coinbase_inputs.txs), Errc::InvalidRing);
}

TEST(Chain, ErrorMessageNamesCode) {
  const Error e(Errc::MalformedLine, "bad", 7);
  EXPECT_EQ(e.line(), 7u);
  EXPECT_NE(std::string(e.what()).find("MalformedLine"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
}

TEST(Chain, BurnKeys) {
  EXPECT_TRUE(is_default_burn_key(kBurnKeyZero));
  EXPECT_TRUE(is_default_burn_key(kBurnKeyDeadbeef));
  EXPECT_FALSE(is_default_burn_key(fixtures::key_for(3)));
  EXPECT_EQ(default_burn_keys().size(), 2u);
  EXPECT_EQ(kBurnKeyDeadbeef.size(), 64u);
}
