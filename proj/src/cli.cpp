#include "ringtrace/cli.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ringtrace/errors.hpp"
#include "ringtrace/heuristics.hpp"
#include "ringtrace/ingest.hpp"
#include "ringtrace/metrics.hpp"
#include "ringtrace/reaction.hpp"
#include "ringtrace/synth.hpp"

namespace ringtrace::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fixed(*v) : std::string(); }

std::string percent(const std::optional<double>& v, int digits = 2) {
  return v ? fixed(100.0 * *v, digits) + "%" : std::string("absent");
}

json maybe(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string file_name(const std::string& path) { return fs::path(path).filename().string(); }

void write_json(const fs::path& path, const json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

Date date_arg(const std::string& text, const char* flag) {
  const auto d = parse_date(text);
  if (!d) throw UsageError(std::string(flag) + " expects YYYY-MM-DD, got '" + text + "'");
  return *d;
}

std::string valid_heuristics() {
  std::string out;
  for (HeuristicId h : kAllHeuristics) {
    if (h == HeuristicId::Combined) continue;
    if (!out.empty()) out += ", ";
    out += to_string(h);
  }
  return out;
}

// ---- shared heuristic parameters -------------------------------------------

struct Params {
  std::string ten_block_from = "2018-10-11";
  std::string ten_block_to = "2023-04-10";
  Height ten_block_age = 10;
  std::size_t coinbase_max_inputs = 90;
  std::string coinbase_since = "2021-10-01";
  std::vector<std::string> burn_keys;

  void add_to(CLI::App& app) {
    app.add_option("--ten-block-from", ten_block_from, "first day of the ten-block window (UTC)")
        ->capture_default_str();
    app.add_option("--ten-block-to", ten_block_to, "last day of the ten-block window (UTC)")->capture_default_str();
    app.add_option("--ten-block-age", ten_block_age, "member age the ten-block pass looks for")
        ->capture_default_str();
    app.add_option("--coinbase-max-inputs", coinbase_max_inputs, "largest input count the coinbase pass labels")
        ->capture_default_str();
    app.add_option("--coinbase-since", coinbase_since, "first day the coinbase pass applies, or 'none'")
        ->capture_default_str();
    app.add_option("--burn-key", burn_keys, "burn output key (repeatable; replaces the defaults)");
  }

  TenBlockParams ten_block() const {
    TenBlockParams p;
    p.window_first = date_arg(ten_block_from, "--ten-block-from");
    p.window_last = date_arg(ten_block_to, "--ten-block-to");
    p.age = ten_block_age;
    return p;
  }

  std::optional<Date> since() const {
    if (coinbase_since == "none") return std::nullopt;
    return date_arg(coinbase_since, "--coinbase-since");
  }

  CoinbaseParams coinbase() const { return {coinbase_max_inputs, since()}; }

  MordinalParams mordinal() const {
    MordinalParams p;
    if (!burn_keys.empty()) p.burn_keys = burn_keys;
    return p;
  }
};

// ---- generate ---------------------------------------------------------------

struct GenerateOptions {
  std::string config;
  std::string out;
  bool json = false;
};

json expectation_json(const synth::Expectation& e) {
  return {{"warmup_blocks", e.warmup_blocks},
          {"coinbase_txs", e.coinbase_txs},
          {"regular_txs", e.regular_txs},
          {"mordinal_mints", e.mordinal_mints},
          {"payout_records", e.payout_records},
          {"p2pool_output_share", maybe(e.p2pool_output_share)}};
}

json tally_json(const synth::Tally& t) {
  return {{"coinbase", t.coinbase},         {"regular", t.regular},
          {"mints", t.mints},               {"transfers", t.transfers},
          {"consolidations", t.consolidations}, {"pool_payouts", t.pool_payouts},
          {"skipped", t.skipped}};
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  const synth::GeneratorConfig config = synth::load_config(o.config);
  const synth::Expectation expected = synth::describe(config);
  const synth::GeneratedChain chain = synth::generate(config);
  synth::write_generated(chain, o.out);

  json doc = {{"command", "generate"},
              {"seed", config.seed},
              {"files", {synth::kChainFile, synth::kPayoutsFile, synth::kTruthFile}},
              {"transactions", chain.transactions.size()},
              {"rings", chain.truth.size()},
              {"payout_records", chain.payouts.size()},
              {"expected", expectation_json(expected)},
              {"generated", tally_json(chain.tally)}};
  write_json(fs::path(o.out) / "summary.json", doc);

  if (o.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "wrote " << chain.transactions.size() << " transactions, " << chain.truth.size() << " rings, "
      << chain.payouts.size() << " payout records to " << o.out << "\n";
  out << "expected: " << expected.coinbase_txs << " coinbase txs, " << fixed(expected.regular_txs, 1)
      << " regular txs, " << fixed(expected.mordinal_mints, 1) << " mordinal mints, "
      << fixed(expected.payout_records, 1) << " payout records (warm-up " << expected.warmup_blocks << " blocks)\n";
  out << "generated: " << chain.tally.coinbase << " coinbase, " << chain.tally.regular << " regular, "
      << chain.tally.mints << " mints, " << chain.tally.transfers << " transfers, " << chain.tally.consolidations
      << " consolidations, " << chain.tally.pool_payouts << " pool payouts\n";
  return kExitOk;
}

// ---- run --------------------------------------------------------------------

struct RunOptions {
  std::string chain;
  std::string heuristics = "all";
  std::string payouts;
  std::string out;
  bool json = false;
  Params params;
};

std::vector<HeuristicId> requested(const RunOptions& o) {
  std::vector<HeuristicId> out;
  if (o.heuristics == "all") {
    for (HeuristicId h : kAllHeuristics) {
      if (h == HeuristicId::Combined) continue;
      if (h == HeuristicId::P2PoolMerge && o.payouts.empty()) continue;
      out.push_back(h);
    }
    return out;
  }
  std::stringstream ss(o.heuristics);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto h = parse_heuristic(name);
    if (!h || *h == HeuristicId::Combined) {
      throw UsageError("unknown heuristic '" + name + "'; valid: " + valid_heuristics());
    }
    if (std::find(out.begin(), out.end(), *h) == out.end()) out.push_back(*h);
  }
  if (out.empty()) throw UsageError("no heuristics requested; valid: " + valid_heuristics());
  return out;
}

LabelSet run_heuristic(HeuristicId h, const ChainStore& chain, const std::vector<PayoutRecord>& payouts,
                       const Params& p) {
  switch (h) {
    case HeuristicId::ZeroMixin: return propagate_consequences(zero_mixin(chain), chain);
    case HeuristicId::ChainReaction: return chain_reaction(chain, zero_mixin(chain)).labels;
    case HeuristicId::TenBlockDecoyBug: return propagate_consequences(ten_block_decoy_bug(chain, p.ten_block()), chain);
    case HeuristicId::DifferByOne: return propagate_consequences(differ_by_one(chain), chain);
    case HeuristicId::Mordinal: return propagate_consequences(mordinal_decoys(chain, p.mordinal()), chain);
    case HeuristicId::Coinbase: return propagate_consequences(coinbase_decoys(chain, p.coinbase()), chain);
    case HeuristicId::P2PoolMerge: return propagate_consequences(p2pool_output_merging(chain, payouts), chain);
    case HeuristicId::Combined: break;
  }
  throw UsageError("combined is produced by every run and cannot be requested");
}

json set_json(const LabelSet& set, const std::string& file) {
  std::size_t spends = 0;
  for (const Label& l : set.labels()) spends += l.claim == Claim::TrueSpend;
  const SelfCollision scr = self_collision_rate(set);
  return {{"heuristic", to_string(set.heuristic())},
          {"file", file},
          {"labels", set.size()},
          {"true_spend", spends},
          {"decoy", set.size() - spends},
          {"scr_conflicting", scr.conflicting},
          {"scr_labeled", scr.labeled},
          {"scr", scr.rate}};
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  const std::vector<HeuristicId> hs = requested(o);
  const bool needs_payouts = std::find(hs.begin(), hs.end(), HeuristicId::P2PoolMerge) != hs.end();
  if (needs_payouts && o.payouts.empty()) throw UsageError("p2pool-merge needs a payouts file (--payouts)");
  // Bad parameter flags are usage errors, raised before any file is read.
  (void)o.params.ten_block();
  (void)o.params.since();

  const ChainStore chain = parse_chain_file(o.chain);
  const std::vector<PayoutRecord> payouts = o.payouts.empty() ? std::vector<PayoutRecord>{} : parse_payouts(o.payouts);
  make_dir(o.out);

  std::vector<LabelSet> sets;
  json rows = json::array();
  for (HeuristicId h : hs) {
    sets.push_back(run_heuristic(h, chain, payouts, o.params));
    sets.back().set_heuristic(h);
    const std::string file = std::string(to_string(h)) + ".csv";
    write_labels(fs::path(o.out) / file, sets.back(), chain);
    rows.push_back(set_json(sets.back(), file));
  }

  CombinedResult combined = combined_chain_reaction(chain, sets);
  write_labels(fs::path(o.out) / "combined.csv", combined.labels, chain);
  json combined_row = set_json(combined.labels, "combined.csv");
  combined_row["new_true_spends"] = combined.new_true_spends;
  combined_row["new_decoys"] = combined.new_decoys;
  combined_row["contradictions"] = combined.contradictions.size();
  rows.push_back(combined_row);

  json doc = {{"command", "run"},
              {"chain", file_name(o.chain)},
              {"rings", chain.ring_count()},
              {"sets", rows}};
  write_json(fs::path(o.out) / "summary.json", doc);

  if (o.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "heuristic,labels,true_spend,decoy,scr_conflicting,scr_labeled,scr\n";
  for (const json& r : rows) {
    out << r["heuristic"].get<std::string>() << "," << r["labels"] << "," << r["true_spend"] << "," << r["decoy"]
        << "," << r["scr_conflicting"] << "," << r["scr_labeled"] << ","
        << percent(r["scr"].get<double>(), 4) << "\n";
  }
  out << "combined: " << combined.new_true_spends << " new true spends, " << combined.new_decoys
      << " new decoys, " << combined.contradictions.size() << " contradictions\n";
  return kExitOk;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateOptions {
  std::vector<std::string> labels;
  std::string truth;
  std::vector<std::string> reference;
  std::string out;
  bool json = false;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  if (o.truth.empty() == o.reference.empty()) {
    throw UsageError("evaluate needs exactly one of --truth or --reference");
  }
  RingKeyTable keys;
  GroundTruth truth;
  std::size_t excluded = 0;
  if (!o.truth.empty()) {
    truth = parse_ground_truth(o.truth, keys);
  } else {
    std::vector<LabelSet> refs;
    for (const std::string& path : o.reference) refs.push_back(read_labels(path, keys));
    Reference ref = labelset_as_truth(refs);
    truth = std::move(ref.truth);
    excluded = ref.conflicting_rings;
  }

  std::string csv = "labels,heuristic,tp,fp,precision,true_spend_overlap,true_spend_errors,scr_conflicting,"
                    "scr_labeled,scr\n";
  json rows = json::array();
  std::ostringstream human;
  for (const std::string& path : o.labels) {
    const LabelSet set = read_labels(path, keys);
    const PrecisionReport rep = precision_report(set, truth);
    const SelfCollision scr = self_collision_rate(set);
    const std::string name = file_name(path);
    const std::string heuristic(to_string(rep.heuristic));
    csv += name + "," + heuristic + "," + std::to_string(rep.tp) + "," + std::to_string(rep.fp) + "," +
           cell(rep.precision) + "," + std::to_string(rep.true_spend_overlap) + "," +
           std::to_string(rep.true_spend_errors) + "," + std::to_string(scr.conflicting) + "," +
           std::to_string(scr.labeled) + "," + fixed(scr.rate, 9) + "\n";
    rows.push_back({{"labels", name},
                    {"heuristic", heuristic},
                    {"tp", rep.tp},
                    {"fp", rep.fp},
                    {"precision", maybe(rep.precision)},
                    {"true_spend_overlap", rep.true_spend_overlap},
                    {"true_spend_errors", rep.true_spend_errors},
                    {"scr_conflicting", scr.conflicting},
                    {"scr_labeled", scr.labeled},
                    {"scr", scr.rate}});
    human << name << " (" << heuristic << "): tp=" << rep.tp << " fp=" << rep.fp
          << " precision=" << percent(rep.precision) << " scr=" << percent(scr.rate, 4) << " (" << scr.conflicting
          << "/" << scr.labeled << ")\n";
  }
  if (!o.out.empty()) write_file_atomic(o.out, csv);

  if (o.json) {
    json doc = {{"command", "evaluate"},
                {"reference_rings", truth.size()},
                {"excluded_rings", excluded},
                {"reports", rows}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "reference covers " << truth.size() << " rings";
  if (excluded) out << " (" << excluded << " conflicting rings excluded)";
  out << "\n" << human.str();
  return kExitOk;
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
  std::vector<std::string> labels;
  std::string out;
  bool json = false;
};

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  if (o.labels.size() < 2) throw UsageError("compare needs at least two label files");
  RingKeyTable keys;
  std::vector<LabelSet> sets;
  for (const std::string& path : o.labels) sets.push_back(read_labels(path, keys));
  const PairwiseMatrix m = pairwise_matrix(sets);

  std::string csv = "first,second,heuristic_first,heuristic_second,agreements,collisions,labeled_first,"
                    "labeled_second,collision_rate,agreement_rate\n";
  json cells = json::array();
  std::ostringstream human;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const PairwiseCell& c = *m.at(i, j);
      const std::string a = file_name(o.labels[i]);
      const std::string b = file_name(o.labels[j]);
      const std::string ha(to_string(sets[i].heuristic()));
      const std::string hb(to_string(sets[j].heuristic()));
      csv += a + "," + b + "," + ha + "," + hb + "," + std::to_string(c.agreements) + "," +
             std::to_string(c.collisions) + "," + std::to_string(c.labeled_first) + "," +
             std::to_string(c.labeled_second) + "," + cell(c.collision_rate) + "," + cell(c.agreement_rate) + "\n";
      cells.push_back({{"first", a},
                       {"second", b},
                       {"heuristic_first", ha},
                       {"heuristic_second", hb},
                       {"agreements", c.agreements},
                       {"collisions", c.collisions},
                       {"labeled_first", c.labeled_first},
                       {"labeled_second", c.labeled_second},
                       {"collision_rate", maybe(c.collision_rate)},
                       {"agreement_rate", maybe(c.agreement_rate)}});
      if (i < j) {
        human << a << " vs " << b << ": A=" << c.agreements << " C=" << c.collisions
              << " collision=" << percent(c.collision_rate) << " agreement=" << percent(c.agreement_rate) << "\n";
      }
    }
  }
  if (!o.out.empty()) write_file_atomic(o.out, csv);
  if (o.json) {
    out << json{{"command", "compare"}, {"cells", cells}}.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return kExitOk;
}

// ---- report -----------------------------------------------------------------

struct ReportOptions {
  std::string chain;
  std::string labels;
  std::string payouts;
  std::string truth;
  std::vector<std::size_t> thresholds;
  std::string out;
  std::string bucket = "month";
  bool json = false;
  Params params;
};

// Splits a merged set by the heuristic each label came from.
std::vector<LabelSet> split_by_heuristic(const LabelSet& combined) {
  std::map<HeuristicId, LabelSet> parts;
  for (const Label& l : combined.labels()) {
    auto it = parts.try_emplace(l.heuristic, l.heuristic).first;
    it->second.add(l);
  }
  std::vector<LabelSet> out;
  for (auto& [h, set] : parts) out.push_back(std::move(set));
  return out;
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
  const auto bucket = parse_bucket(o.bucket);
  if (!bucket) throw UsageError("--bucket expects 'month' or 'day'");
  if (!o.thresholds.empty() && o.truth.empty()) throw UsageError("--thresholds needs --truth");
  const std::optional<Date> since = o.params.since();

  const ChainStore chain = parse_chain_file(o.chain);
  const LabelSet combined = read_labels(o.labels, chain);
  std::optional<std::vector<PayoutRecord>> payouts;
  if (!o.payouts.empty()) payouts = parse_payouts(o.payouts);
  make_dir(o.out);
  const fs::path dir(o.out);

  json files = json::array();

  const auto sizes = effective_ring_size_series(chain, combined, *bucket);
  std::string csv = "period,mean_effective_ring_size,mean_nominal_ring_size,ring_count\n";
  for (const RingSizeBucket& b : sizes) {
    csv += b.period + "," + fixed(b.mean_effective) + "," + fixed(b.mean_nominal) + "," +
           std::to_string(b.ring_count) + "\n";
  }
  write_file_atomic(dir / "effective_ring_size.csv", csv);
  files.push_back("effective_ring_size.csv");

  const std::vector<LabelSet> parts = split_by_heuristic(combined);
  const auto shares = decoy_share_series(chain, parts, *bucket);
  csv = "period,heuristic,decoys,ring_members,share\n";
  for (const DecoyShareRow& r : shares) {
    csv += r.period + "," + std::string(to_string(parts[r.set_index].heuristic())) + "," +
           std::to_string(r.decoys) + "," + std::to_string(r.ring_members) + "," + fixed(r.share) + "\n";
  }
  write_file_atomic(dir / "decoy_share.csv", csv);
  files.push_back("decoy_share.csv");

  const auto coinbase = coinbase_output_series(chain, payouts ? &*payouts : nullptr, *bucket);
  csv = payouts ? "period,coinbase_outputs,p2pool_outputs,p2pool_share\n" : "period,coinbase_outputs\n";
  for (const CoinbaseOutputRow& r : coinbase) {
    csv += r.period + "," + std::to_string(r.coinbase_outputs);
    if (payouts) csv += "," + std::to_string(*r.p2pool_outputs) + "," + cell(r.p2pool_share);
    csv += "\n";
  }
  write_file_atomic(dir / "coinbase_outputs.csv", csv);
  files.push_back("coinbase_outputs.csv");

  if (!o.truth.empty()) {
    const GroundTruth truth = parse_ground_truth(o.truth, chain);
    std::vector<std::size_t> thresholds = o.thresholds;
    if (thresholds.empty()) thresholds = {1, 2, 4, 8, 16, 32, 64, 90, 128, 150};
    const auto sweep = coinbase_threshold_sweep(chain, truth, thresholds, since);
    csv = "threshold,decoys_marked,tp,fp,precision\n";
    for (const SweepRow& r : sweep) {
      csv += std::to_string(r.threshold) + "," + std::to_string(r.decoys_marked) + "," + std::to_string(r.tp) +
             "," + std::to_string(r.fp) + "," + cell(precision(r.tp, r.fp)) + "\n";
    }
    write_file_atomic(dir / "coinbase_sweep.csv", csv);
    files.push_back("coinbase_sweep.csv");
  }

  double eff = 0.0;
  double nominal = 0.0;
  std::size_t rings = 0;
  for (const RingSizeBucket& b : sizes) {
    eff += b.mean_effective * static_cast<double>(b.ring_count);
    nominal += b.mean_nominal * static_cast<double>(b.ring_count);
    rings += b.ring_count;
  }
  json doc = {{"command", "report"},
              {"chain", file_name(o.chain)},
              {"labels", file_name(o.labels)},
              {"bucket", to_string(*bucket)},
              {"periods", sizes.size()},
              {"rings", rings},
              {"mean_effective_ring_size", rings ? json(eff / static_cast<double>(rings)) : json(nullptr)},
              {"mean_nominal_ring_size", rings ? json(nominal / static_cast<double>(rings)) : json(nullptr)},
              {"files", files}};
  write_json(dir / "summary.json", doc);

  if (o.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << "wrote " << files.size() << " tables over " << sizes.size() << " " << to_string(*bucket)
        << " buckets to " << o.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traceability analysis for ring-signature ledgers", "ringtrace"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic chain with ground truth");
  generate->add_option("--config", gen.config, "generator config (JSON)")->required();
  generate->add_option("--out", gen.out, "output directory")->required();
  generate->add_flag("--json", gen.json, "machine-readable summary");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "label a chain with the chosen heuristics");
  run_cmd->add_option("--chain", run.chain, "chain file (JSON lines)")->required();
  run_cmd->add_option("--heuristics", run.heuristics, "comma-separated names, or 'all'")->capture_default_str();
  run_cmd->add_option("--payouts", run.payouts, "payouts file, required by p2pool-merge");
  run_cmd->add_option("--out", run.out, "output directory")->required();
  run_cmd->add_flag("--json", run.json, "machine-readable summary");
  run.params.add_to(*run_cmd);

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "precision and self-collision per label file");
  evaluate->add_option("--labels", eval.labels, "label files")->required();
  evaluate->add_option("--truth", eval.truth, "ground truth file");
  evaluate->add_option("--reference", eval.reference, "label files trusted as ground truth");
  evaluate->add_option("--out", eval.out, "report table (CSV)");
  evaluate->add_flag("--json", eval.json, "machine-readable output");

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "pairwise collision and agreement rates");
  compare->add_option("--labels", cmp.labels, "label files (two or more)")->required();
  compare->add_option("--out", cmp.out, "matrix table (CSV)");
  compare->add_flag("--json", cmp.json, "machine-readable output");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "time series over a combined label file");
  report->add_option("--chain", rep.chain, "chain file (JSON lines)")->required();
  report->add_option("--labels", rep.labels, "combined label file")->required();
  report->add_option("--payouts", rep.payouts, "payouts file");
  report->add_option("--truth", rep.truth, "ground truth, enables the coinbase threshold sweep");
  report->add_option("--thresholds", rep.thresholds, "coinbase sweep thresholds");
  report->add_option("--out", rep.out, "output directory")->required();
  report->add_option("--bucket", rep.bucket, "month or day")->capture_default_str();
  report->add_flag("--json", rep.json, "machine-readable summary");
  rep.params.add_to(*report);

  std::vector<const char*> argv{"ringtrace"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*run_cmd) return cmd_run(run, out);
    if (*evaluate) return cmd_evaluate(eval, out);
    if (*compare) return cmd_compare(cmp, out);
    if (*report) return cmd_report(rep, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ringtrace::cli
