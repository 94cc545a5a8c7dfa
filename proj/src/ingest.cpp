#include "ringtrace/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>

#include "json.hpp"

namespace ringtrace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

RingId RingKeyTable::intern(const RingKey& key) {
  auto [it, inserted] = ids_.try_emplace(key, static_cast<RingId>(keys_.size()));
  if (inserted) keys_.push_back(key);
  return it->second;
}

std::optional<RingId> RingKeyTable::find(const RingKey& key) const {
  auto it = ids_.find(key);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::vector<GlobalIndex>> group_by_miner(
    const std::vector<PayoutRecord>& payouts) {
  std::map<std::string, std::vector<GlobalIndex>> owned;
  for (const PayoutRecord& p : payouts) owned[p.miner_id].push_back(p.output_global_index);
  for (auto& [miner, outs] : owned) {
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  }
  return owned;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "read failed for " + path.string());
  return std::move(buf).str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoFailure, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(Errc::IoFailure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::IoFailure, "cannot rename onto " + path.string());
  }
}

namespace {

// Calls fn(line, line_no) for every non-blank line.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line.find_first_not_of(" \t") != std::string_view::npos) fn(line, line_no);
    start = end + 1;
  }
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(Errc::MalformedLine, why, line_no);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <class Int>
Int parse_uint(std::string_view s, std::size_t line_no, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    malformed(line_no, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

// Splits a delimited file, checks the header and the column count.
template <class Fn>
void for_each_row(std::string_view text, std::string_view header, Fn&& fn) {
  bool seen_header = false;
  const std::size_t width = split(header, ',').size();
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (!seen_header) {
      if (line != header) malformed(line_no, "expected header '" + std::string(header) + "'");
      seen_header = true;
      return;
    }
    auto cols = split(line, ',');
    if (cols.size() != width) {
      malformed(line_no, "expected " + std::to_string(width) + " columns, got " +
                             std::to_string(cols.size()));
    }
    fn(cols, line_no);
  });
  if (!seen_header) malformed(1, "missing header '" + std::string(header) + "'");
}

const ojson& field(const ojson& obj, const char* name, std::size_t line_no) {
  auto it = obj.find(name);
  if (it == obj.end()) malformed(line_no, std::string("missing field '") + name + "'");
  return *it;
}

GlobalIndex json_index(const ojson& v, std::size_t line_no, const char* what) {
  if (!v.is_number_unsigned()) malformed(line_no, std::string(what) + " must be a non-negative integer");
  return v.get<GlobalIndex>();
}

}  // namespace

TransactionRecord parse_chain_line(std::string_view line, std::size_t line_no) {
  ojson obj;
  try {
    obj = ojson::parse(line);
  } catch (const ojson::parse_error& e) {
    malformed(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) malformed(line_no, "record must be a JSON object");

  TransactionRecord tx;
  const auto& id = field(obj, "tx_id", line_no);
  if (!id.is_string() || id.get_ref<const std::string&>().empty()) {
    malformed(line_no, "tx_id must be a non-empty string");
  }
  tx.tx_id = id.get<std::string>();
  if (tx.tx_id.find_first_of(",\n") != std::string::npos) malformed(line_no, "tx_id contains a delimiter");

  const auto& height = field(obj, "height", line_no);
  if (!height.is_number_integer()) malformed(line_no, "height must be an integer");
  tx.height = height.get<Height>();
  const auto& ts = field(obj, "timestamp", line_no);
  if (!ts.is_number_integer()) malformed(line_no, "timestamp must be an integer");
  tx.timestamp = ts.get<Timestamp>();
  const auto& cb = field(obj, "coinbase", line_no);
  if (!cb.is_boolean()) malformed(line_no, "coinbase must be a boolean");
  tx.coinbase = cb.get<bool>();

  const auto& tags = field(obj, "extra_tags", line_no);
  if (!tags.is_array()) malformed(line_no, "extra_tags must be an array");
  for (const auto& t : tags) {
    if (!t.is_string()) malformed(line_no, "extra_tags entries must be strings");
    tx.extra_tags.push_back(t.get<std::string>());
  }

  const auto& inputs = field(obj, "inputs", line_no);
  if (!inputs.is_array()) malformed(line_no, "inputs must be an array");
  for (const auto& ring : inputs) {
    if (!ring.is_array()) malformed(line_no, "each input must be an array of indices");
    std::vector<GlobalIndex> members;
    members.reserve(ring.size());
    for (const auto& m : ring) members.push_back(json_index(m, line_no, "ring member"));
    tx.inputs.push_back(std::move(members));
  }

  const auto& outputs = field(obj, "outputs", line_no);
  if (!outputs.is_array()) malformed(line_no, "outputs must be an array");
  for (const auto& o : outputs) {
    if (!o.is_object()) malformed(line_no, "each output must be an object");
    OutputSpec spec;
    spec.g = json_index(field(o, "g", line_no), line_no, "output g");
    const auto& pk = field(o, "pk", line_no);
    if (!pk.is_string()) malformed(line_no, "output pk must be a string");
    spec.pk = pk.get<std::string>();
    tx.outputs.push_back(std::move(spec));
  }
  return tx;
}

std::string format_chain_line(const TransactionRecord& tx) {
  ojson obj;
  obj["tx_id"] = tx.tx_id;
  obj["height"] = tx.height;
  obj["timestamp"] = tx.timestamp;
  obj["coinbase"] = tx.coinbase;
  obj["extra_tags"] = tx.extra_tags;
  obj["inputs"] = tx.inputs;
  ojson outs = ojson::array();
  for (const OutputSpec& o : tx.outputs) {
    ojson e;
    e["g"] = o.g;
    e["pk"] = o.pk;
    outs.push_back(std::move(e));
  }
  obj["outputs"] = std::move(outs);
  return obj.dump();
}

namespace {

std::vector<TransactionRecord> parse_chain_text(std::string_view text,
                                                std::vector<std::size_t>& line_numbers) {
  std::vector<TransactionRecord> txs;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    txs.push_back(parse_chain_line(line, line_no));
    line_numbers.push_back(line_no);
  });
  return txs;
}

}  // namespace

std::vector<TransactionRecord> read_chain_records(const fs::path& path) {
  std::vector<std::size_t> lines;
  return parse_chain_text(read_file(path), lines);
}

ChainStore parse_chain_file(const fs::path& path) {
  std::vector<std::size_t> lines;
  auto txs = parse_chain_text(read_file(path), lines);
  try {
    return build_chain(std::move(txs));
  } catch (const Error& e) {
    if (e.record() != kNoPosition && e.record() < lines.size()) {
      throw Error(e.code(), e.detail(), lines[e.record()], e.record());
    }
    throw;
  }
}

std::string format_chain(std::span<const TransactionRecord> txs) {
  std::string out;
  for (const auto& tx : txs) {
    out += format_chain_line(tx);
    out += '\n';
  }
  return out;
}

void write_chain_file(const fs::path& path, std::span<const TransactionRecord> txs) {
  write_file_atomic(path, format_chain(txs));
}

std::vector<PayoutRecord> parse_payouts_text(std::string_view text) {
  std::vector<PayoutRecord> records;
  std::set<std::pair<std::string, GlobalIndex>> seen;
  for_each_row(text, kPayoutsHeader, [&](const auto& cols, std::size_t line_no) {
    PayoutRecord rec;
    rec.tx_id = std::string(cols[0]);
    rec.output_global_index = parse_uint<GlobalIndex>(cols[1], line_no, "output_global_index");
    rec.miner_id = std::string(cols[2]);
    if (rec.tx_id.empty() || rec.miner_id.empty()) malformed(line_no, "empty tx_id or miner_id");
    if (!seen.emplace(rec.tx_id, rec.output_global_index).second) {
      throw Error(Errc::DuplicatePayout,
                  "payout " + rec.tx_id + ":" + std::to_string(rec.output_global_index) +
                      " listed twice",
                  line_no);
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<PayoutRecord> parse_payouts(const fs::path& path) {
  return parse_payouts_text(read_file(path));
}

std::string format_payouts(const std::vector<PayoutRecord>& payouts) {
  std::string out{kPayoutsHeader};
  out += '\n';
  for (const auto& p : payouts) {
    out += p.tx_id + ',' + std::to_string(p.output_global_index) + ',' + p.miner_id + '\n';
  }
  return out;
}

void write_payouts(const fs::path& path, const std::vector<PayoutRecord>& payouts) {
  write_file_atomic(path, format_payouts(payouts));
}

namespace {

std::vector<std::pair<TruthRow, std::size_t>> parse_truth_with_lines(std::string_view text) {
  std::vector<std::pair<TruthRow, std::size_t>> rows;
  std::set<RingKey> seen;
  for_each_row(text, kTruthHeader, [&](const auto& cols, std::size_t line_no) {
    TruthRow row;
    row.ring.tx_id = std::string(cols[0]);
    row.ring.input_position = parse_uint<std::uint32_t>(cols[1], line_no, "input_position");
    row.true_spend = parse_uint<GlobalIndex>(cols[2], line_no, "true_spend_global_index");
    if (!seen.insert(row.ring).second) malformed(line_no, "ring listed twice");
    rows.emplace_back(std::move(row), line_no);
  });
  return rows;
}

}  // namespace

std::vector<TruthRow> parse_truth_rows(std::string_view text) {
  std::vector<TruthRow> rows;
  for (auto& [row, line] : parse_truth_with_lines(text)) rows.push_back(std::move(row));
  return rows;
}

GroundTruth parse_ground_truth(const fs::path& path, const ChainStore& chain) {
  GroundTruth truth;
  for (const auto& [row, line_no] : parse_truth_with_lines(read_file(path))) {
    auto ring = chain.find_ring(row.ring);
    if (!ring) {
      throw Error(Errc::UnknownRing,
                  "ring " + row.ring.tx_id + ":" + std::to_string(row.ring.input_position) +
                      " is not in the chain",
                  line_no);
    }
    if (!chain.ring(*ring).contains(row.true_spend)) {
      throw Error(Errc::TrueSpendNotInRing,
                  "output " + std::to_string(row.true_spend) + " is not a member of " +
                      row.ring.tx_id + ":" + std::to_string(row.ring.input_position),
                  line_no);
    }
    truth.entries.emplace(*ring, row.true_spend);
  }
  return truth;
}

GroundTruth parse_ground_truth(const fs::path& path, RingKeyTable& keys) {
  GroundTruth truth;
  for (const auto& [row, line_no] : parse_truth_with_lines(read_file(path))) {
    truth.entries.emplace(keys.intern(row.ring), row.true_spend);
  }
  return truth;
}

std::string format_truth_rows(const std::vector<TruthRow>& rows) {
  std::string out{kTruthHeader};
  out += '\n';
  for (const auto& r : rows) {
    out += r.ring.tx_id + ',' + std::to_string(r.ring.input_position) + ',' +
           std::to_string(r.true_spend) + '\n';
  }
  return out;
}

std::string format_ground_truth(const GroundTruth& truth, const ChainStore& chain) {
  std::vector<TruthRow> rows;
  rows.reserve(truth.size());
  for (const auto& [ring, spend] : truth.entries) rows.push_back({chain.ring_key(ring), spend});
  return format_truth_rows(rows);
}

namespace {

using RingResolver = std::function<RingId(const RingKey&, std::size_t line_no)>;
using MemberCheck = std::function<void(RingId, GlobalIndex, std::size_t line_no)>;

LabelSet parse_labels_impl(std::string_view text, const RingResolver& resolve,
                           const MemberCheck& check) {
  std::vector<Label> parsed;
  std::vector<std::size_t> lines;
  for_each_row(text, kLabelsHeader, [&](const auto& cols, std::size_t line_no) {
    RingKey key{std::string(cols[0]), parse_uint<std::uint32_t>(cols[1], line_no, "input_position")};
    Label l;
    l.ring = resolve(key, line_no);
    l.member = parse_uint<GlobalIndex>(cols[2], line_no, "member_global_index");
    auto claim = parse_claim(cols[3]);
    if (!claim) malformed(line_no, "unknown claim '" + std::string(cols[3]) + "'");
    l.claim = *claim;
    auto h = parse_heuristic(cols[4]);
    if (!h) malformed(line_no, "unknown heuristic '" + std::string(cols[4]) + "'");
    l.heuristic = *h;
    if (cols[5] != "0" && cols[5] != "1") malformed(line_no, "derived must be 0 or 1");
    l.derived = cols[5] == "1";
    if (check) check(l.ring, l.member, line_no);
    parsed.push_back(l);
    lines.push_back(line_no);
  });
  LabelSet set(infer_owner(parsed));
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!set.add(parsed[i])) malformed(lines[i], "repeats a (ring, member, heuristic) key");
  }
  return set;
}

std::string format_labels_impl(const LabelSet& labels,
                               const std::function<RingKey(RingId)>& key_of) {
  std::string out{kLabelsHeader};
  out += '\n';
  for (const Label& l : labels.canonical()) {
    const RingKey key = key_of(l.ring);
    out += key.tx_id;
    out += ',';
    out += std::to_string(key.input_position);
    out += ',';
    out += std::to_string(l.member);
    out += ',';
    out += to_string(l.claim);
    out += ',';
    out += to_string(l.heuristic);
    out += l.derived ? ",1\n" : ",0\n";
  }
  return out;
}

}  // namespace

LabelSet parse_labels_text(std::string_view text, const ChainStore& chain) {
  return parse_labels_impl(
      text,
      [&](const RingKey& key, std::size_t line_no) {
        auto ring = chain.find_ring(key);
        if (!ring) {
          throw Error(Errc::UnknownRing,
                      "ring " + key.tx_id + ":" + std::to_string(key.input_position) +
                          " is not in the chain",
                      line_no);
        }
        return *ring;
      },
      [&](RingId ring, GlobalIndex member, std::size_t line_no) {
        if (!chain.ring(ring).contains(member)) {
          throw Error(Errc::MemberNotInRing,
                      "output " + std::to_string(member) + " is not a member of the ring",
                      line_no);
        }
      });
}

LabelSet parse_labels_text(std::string_view text, RingKeyTable& keys) {
  return parse_labels_impl(
      text, [&](const RingKey& key, std::size_t) { return keys.intern(key); }, {});
}

LabelSet read_labels(const fs::path& path, const ChainStore& chain) {
  return parse_labels_text(read_file(path), chain);
}

LabelSet read_labels(const fs::path& path, RingKeyTable& keys) {
  return parse_labels_text(read_file(path), keys);
}

std::string format_labels(const LabelSet& labels, const ChainStore& chain) {
  return format_labels_impl(labels, [&](RingId r) { return chain.ring_key(r); });
}

std::string format_labels(const LabelSet& labels, const RingKeyTable& keys) {
  return format_labels_impl(labels, [&](RingId r) { return keys.key(r); });
}

void write_labels(const fs::path& path, const LabelSet& labels, const ChainStore& chain) {
  write_file_atomic(path, format_labels(labels, chain));
}

}  // namespace ringtrace
