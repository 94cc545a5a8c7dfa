#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "ringtrace/cli.hpp"
#include "ringtrace/ingest.hpp"

using namespace ringtrace;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

constexpr const char* kConfig = R"({
  "seed": 21, "blocks": 300, "start_date": "2021-09-29", "block_interval": 1200,
  "txs_per_block": {"distribution": "poisson", "mean": 4},
  "ring_size": 5, "zero_mixin_fraction": 0.1,
  "wallets": [{"policy": "correct", "weight": 1}, {"policy": "ten_block_bug", "weight": 1},
              {"policy": "cached_decoys", "weight": 1}],
  "mining": {"p2pool_block_fraction": 0.5},
  "mordinals": {"mint_rate": 0.2, "transfer_rate": 0.2}
})";

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fixtures::scratch_dir("cli");
    write_file_atomic(dir_ / "config.json", kConfig);
    const Result gen = call({"generate", "--config", path("config.json"), "--out", path("gen")});
    ASSERT_EQ(gen.code, cli::kExitOk) << gen.err;
    const Result run = call({"run", "--chain", path("gen/chain.jsonl"), "--payouts", path("gen/payouts.csv"),
                             "--out", path("run")});
    ASSERT_EQ(run.code, cli::kExitOk) << run.err;
  }

  static std::string path(const std::string& rel) { return (dir_ / rel).string(); }

  static fs::path dir_;
};

fs::path CliTest::dir_;

}  // namespace

TEST_F(CliTest, GenerateWritesFilesAndSummary) {
  for (const char* f : {"chain.jsonl", "payouts.csv", "truth.csv", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "gen" / f)) << f;
  }
  const auto summary = nlohmann::json::parse(read_file(dir_ / "gen" / "summary.json"));
  EXPECT_EQ(summary["command"], "generate");
  const Result again = call({"generate", "--config", path("config.json"), "--out", path("gen2"), "--json"});
  ASSERT_EQ(again.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(again.out), summary);
  EXPECT_EQ(read_file(dir_ / "gen2" / "chain.jsonl"), read_file(dir_ / "gen" / "chain.jsonl"));
}

TEST_F(CliTest, RunWritesOneFilePerHeuristic) {
  for (const char* f : {"zero-mixin.csv", "chain-reaction.csv", "ten-block-decoy.csv", "differ-by-one.csv",
                        "mordinal.csv", "coinbase.csv", "p2pool-merge.csv", "combined.csv", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "run" / f)) << f;
  }
  EXPECT_EQ(read_file(dir_ / "run" / "mordinal.csv").rfind(std::string(kLabelsHeader), 0), 0u);
  const auto summary = nlohmann::json::parse(read_file(dir_ / "run" / "summary.json"));
  EXPECT_EQ(summary["sets"].size(), 8u);
  EXPECT_EQ(summary["sets"].back()["heuristic"], "combined");
}

TEST_F(CliTest, RunSubsetAndParameters) {
  const Result r = call({"run", "--chain", path("gen/chain.jsonl"), "--heuristics", "coinbase,zero-mixin",
                         "--coinbase-since", "none", "--coinbase-max-inputs", "2", "--out", path("subset"), "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "subset" / "coinbase.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "subset" / "mordinal.csv"));
  EXPECT_EQ(nlohmann::json::parse(r.out)["sets"].size(), 3u);

  const Result no_pool = call({"run", "--chain", path("gen/chain.jsonl"), "--out", path("nopool")});
  ASSERT_EQ(no_pool.code, cli::kExitOk);
  EXPECT_FALSE(fs::exists(dir_ / "nopool" / "p2pool-merge.csv"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, cli::kExitUsage);
  EXPECT_EQ(call({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(call({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(call({"run", "--chain", path("gen/chain.jsonl")}).code, cli::kExitUsage);

  Result r = call({"run", "--chain", path("gen/chain.jsonl"), "--heuristics", "p2pool-merge", "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--payouts"), std::string::npos);

  r = call({"run", "--chain", path("gen/chain.jsonl"), "--heuristics", "magic", "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("zero-mixin"), std::string::npos);

  r = call({"run", "--chain", path("gen/chain.jsonl"), "--ten-block-from", "2020-02-30", "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitUsage);

  r = call({"evaluate", "--labels", path("run/coinbase.csv")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  r = call({"evaluate", "--labels", path("run/coinbase.csv"), "--truth", path("gen/truth.csv"), "--reference",
            path("run/zero-mixin.csv")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  r = call({"compare", "--labels", path("run/coinbase.csv")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  r = call({"report", "--chain", path("gen/chain.jsonl"), "--labels", path("run/combined.csv"), "--bucket",
            "year", "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST_F(CliTest, DataErrors) {
  Result r = call({"run", "--chain", path("missing.jsonl"), "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("missing.jsonl"), std::string::npos);

  write_file_atomic(dir_ / "bad.jsonl", read_file(dir_ / "gen" / "chain.jsonl").substr(0, 400) + "\n");
  r = call({"run", "--chain", path("bad.jsonl"), "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("line"), std::string::npos);

  write_file_atomic(dir_ / "bad_config.json", R"({"ring_sise": 3})");
  r = call({"generate", "--config", path("bad_config.json"), "--out", path("x")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("ring_sise"), std::string::npos);
}

TEST_F(CliTest, EvaluateAgainstTruthAndReference) {
  const Result r = call({"evaluate", "--labels", path("run/zero-mixin.csv"), path("run/mordinal.csv"), "--truth",
                         path("gen/truth.csv"), "--out", path("eval.csv"), "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["reports"].size(), 2u);
  EXPECT_EQ(doc["reports"][0]["heuristic"], "zero-mixin");
  EXPECT_EQ(doc["reports"][0]["fp"], 0);
  EXPECT_EQ(doc["reports"][1]["labels"], "mordinal.csv");
  const std::string csv = read_file(dir_ / "eval.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "labels,heuristic,tp,fp,precision,true_spend_overlap,true_spend_errors,scr_conflicting,scr_labeled,scr");

  const Result ref = call({"evaluate", "--labels", path("run/coinbase.csv"), "--reference",
                           path("run/chain-reaction.csv")});
  ASSERT_EQ(ref.code, cli::kExitOk) << ref.err;
  EXPECT_NE(ref.out.find("coinbase.csv (coinbase)"), std::string::npos);
}

TEST_F(CliTest, CompareWritesOffDiagonalCells) {
  const Result r = call({"compare", "--labels", path("run/zero-mixin.csv"), path("run/coinbase.csv"),
                         path("run/mordinal.csv"), "--out", path("compare.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string csv = read_file(dir_ / "compare.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.rfind("first,second,heuristic_first,heuristic_second,", 0), 0u);
}

TEST_F(CliTest, ReportWritesTables) {
  const Result r = call({"report", "--chain", path("gen/chain.jsonl"), "--labels", path("run/combined.csv"),
                         "--payouts", path("gen/payouts.csv"), "--truth", path("gen/truth.csv"), "--bucket", "day",
                         "--out", path("report")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"effective_ring_size.csv", "decoy_share.csv", "coinbase_outputs.csv", "coinbase_sweep.csv",
                        "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "report" / f)) << f;
  }
  const std::string sizes = read_file(dir_ / "report" / "effective_ring_size.csv");
  EXPECT_NE(sizes.find("2021-09-30"), std::string::npos);
}

TEST(CliRun, ZeroMixinCascadeReportsFourSpends) {
  const fs::path dir = fixtures::scratch_dir("cli_cascade");
  fixtures::ChainBuilder b;
  b.coinbase(0, 10);
  b.spend(1, {{6}});
  b.spend(1, {{8}});
  b.spend(2, {{6, 7, 8}});
  b.spend(3, {{7, 8, 9}});
  write_chain_file(dir / "chain.jsonl", b.txs);
  const Result r = call({"run", "--chain", (dir / "chain.jsonl").string(), "--heuristics", "zero-mixin", "--out",
                         (dir / "run").string(), "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& rows = doc["sets"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["true_spend"], 2);
  EXPECT_EQ(rows[1]["true_spend"], 4);
  EXPECT_EQ(rows[1]["contradictions"], 0);
}
