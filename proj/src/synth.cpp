#include "ringtrace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <set>
#include <unordered_set>

#include "json.hpp"

#include "ringtrace/errors.hpp"
#include "ringtrace/heuristics.hpp"

namespace ringtrace::synth {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::InvalidConfig, why); }

// ---- config reading --------------------------------------------------------

class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) invalid(where_ + " must be an object");
  }

  const json* get(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <class T>
  void number(const char* key, T& out) {
    const json* v = get(key);
    if (!v) return;
    if constexpr (std::is_floating_point_v<T>) {
      if (!v->is_number()) invalid(name(key) + " must be a number");
      out = v->get<T>();
    } else if constexpr (std::is_signed_v<T>) {
      if (!v->is_number_integer()) invalid(name(key) + " must be an integer");
      out = v->get<T>();
    } else {
      if (!v->is_number_unsigned()) invalid(name(key) + " must be a non-negative integer");
      out = v->get<T>();
    }
  }

  std::optional<Date> date(const char* key, std::optional<Date> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    if (!v->is_string()) invalid(name(key) + " must be a YYYY-MM-DD string or null");
    const auto d = parse_date(v->get<std::string>());
    if (!d) invalid(name(key) + " must be a YYYY-MM-DD string or null");
    return d;
  }

  void range(const char* key, IntRange& out) {
    const json* v = get(key);
    if (!v) return;
    Fields f(*v, name(key));
    f.number("min", out.min);
    f.number("max", out.max);
    f.finish();
  }

  void finish() const {
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) invalid("unknown key " + name(k.c_str()));
    }
  }

  std::string name(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

void check_fraction(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) invalid(std::string(what) + " must lie in [0, 1]");
}

void check_range(const IntRange& r, const char* what) {
  if (r.min < 1 || r.min > r.max) invalid(std::string(what) + " needs 1 <= min <= max");
}

// ---- identifiers -----------------------------------------------------------

std::uint64_t splitmix(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string hex256(std::uint64_t seed, std::uint64_t salt, std::uint64_t n) {
  std::string out;
  out.reserve(64);
  std::uint64_t state = splitmix(seed ^ splitmix(salt ^ splitmix(n)));
  char buf[17];
  for (int i = 0; i < 4; ++i) {
    state = splitmix(state);
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state));
    out += buf;
  }
  return out;
}

// ---- generator -------------------------------------------------------------

constexpr std::int32_t kUser = -1;
constexpr std::int32_t kPool = -2;
constexpr std::int32_t kBurn = -3;
constexpr std::int32_t kMordinal = -4;

constexpr std::size_t kMaxDrawAttempts = 200000;

class Generator {
 public:
  explicit Generator(const GeneratorConfig& c) : cfg_(c), rng_(c.seed) {
    for (const WalletWeight& w : cfg_.wallets) weights_.push_back(w.weight);
    miner_owned_.resize(cfg_.mining.miner_count);
    for (std::size_t m = 0; m < miner_owned_.size(); ++m) miner_target_.push_back(draw(cfg_.mining.consolidation_inputs));
    pool_target_ = draw(cfg_.mining.pool_payout_inputs);
  }

  GeneratedChain run() {
    const Height warmup = warmup_blocks(cfg_);
    for (h_ = 0; h_ < static_cast<Height>(cfg_.blocks); ++h_) {
      now_ = cfg_.start_time + h_ * cfg_.block_interval;
      user_unspent_.emplace_back();
      block_first_.push_back(next_g_);

      coinbase(h_ < warmup);
      if (h_ >= warmup) {
        for (std::size_t m = 0; m < miner_owned_.size(); ++m) consolidate(m);
        pool_payout();
        regular_slots();
        const std::size_t mints = poisson(cfg_.mint_rate);
        for (std::size_t i = 0; i < mints; ++i) mint();
        const std::size_t transfers = poisson(cfg_.transfer_rate);
        for (std::size_t i = 0; i < transfers; ++i) transfer();
      }
      block_count_.push_back(static_cast<std::uint32_t>(next_g_ - block_first_.back()));
    }
    for (Session& s : pending_) finish(s);
    for (Session& s : due_) finish(s);
    return std::move(out_);
  }

 private:
  struct Session {
    WalletPolicy policy;
    std::vector<GlobalIndex> cache;
    std::size_t remaining = 0;
    CachedSession record;
  };

  // ---- randomness

  std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return p > 0.0 && std::bernoulli_distribution(p)(rng_); }
  std::size_t draw(const IntRange& r) { return std::uniform_int_distribution<std::size_t>(r.min, r.max)(rng_); }
  std::size_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    return static_cast<std::size_t>(std::poisson_distribution<long>(mean)(rng_));
  }

  WalletPolicy policy() {
    std::discrete_distribution<std::size_t> d(weights_.begin(), weights_.end());
    return cfg_.wallets[d(rng_)].policy;
  }

  // Log-uniform offset in [0, span].
  Height offset(Height span) {
    const double u = std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng_), cfg_.decoy_shape);
    const auto o = static_cast<Height>(std::floor(std::exp(u * std::log(static_cast<double>(span) + 1.0)))) - 1;
    return std::clamp<Height>(o, 0, span);
  }

  Height newest_spendable() const { return h_ - cfg_.lock_blocks; }

  // ---- outputs

  std::string next_tx_id() { return hex256(cfg_.seed, 0x7478, tx_counter_++); }

  GlobalIndex add_output(TransactionRecord& tx, std::int32_t owner) {
    const GlobalIndex g = next_g_++;
    std::string pk;
    if (owner == kBurn) {
      pk = std::string(burns_.size() % 2 == 0 ? kBurnKeyZero : kBurnKeyDeadbeef);
      burns_.push_back(g);
    } else {
      pk = hex256(cfg_.seed, 0x706b, g);
    }
    tx.outputs.push_back({g, std::move(pk)});
    out_height_.push_back(h_);
    owner_.push_back(owner);
    if (owner == kUser) {
      user_unspent_[static_cast<std::size_t>(h_)].push_back(g);
      user_blocks_.insert(h_);
    } else if (owner == kPool) {
      pool_owned_.push_back(g);
    } else if (owner == kMordinal) {
      mordinals_.push_back(g);
    } else if (owner >= 0) {
      miner_owned_[static_cast<std::size_t>(owner)].push_back(g);
    }
    return g;
  }

  TransactionRecord open_tx() {
    TransactionRecord tx;
    tx.tx_id = next_tx_id();
    tx.height = h_;
    tx.timestamp = now_;
    return tx;
  }

  void close_tx(TransactionRecord tx, const std::vector<GlobalIndex>& spends) {
    for (std::size_t p = 0; p < spends.size(); ++p) {
      out_.truth.push_back({RingKey{tx.tx_id, static_cast<std::uint32_t>(p)}, spends[p]});
    }
    out_.transactions.push_back(std::move(tx));
  }

  // ---- true spends

  GlobalIndex take_from_block(Height c) {
    auto& list = user_unspent_[static_cast<std::size_t>(c)];
    const std::size_t i = uniform(list.size());
    const GlobalIndex g = list[i];
    list[i] = list.back();
    list.pop_back();
    if (list.empty()) user_blocks_.erase(c);
    return g;
  }

  bool has_user(Height c) const { return c >= 0 && !user_unspent_[static_cast<std::size_t>(c)].empty(); }

  std::optional<GlobalIndex> take_user_output(WalletPolicy p) {
    const Height newest = newest_spendable();
    if (newest < 0) return std::nullopt;
    const auto after = user_blocks_.upper_bound(newest);
    if (after == user_blocks_.begin()) return std::nullopt;

    const double fast = p == WalletPolicy::TenBlockBug ? cfg_.bug_age10_fraction : cfg_.fast_spend_fraction;
    if (chance(fast) && has_user(newest)) return take_from_block(newest);

    for (int attempt = 0; attempt < 16; ++attempt) {
      const Height c = newest - offset(newest);
      if (has_user(c)) return take_from_block(c);
    }
    const Height c = newest - offset(newest);
    auto it = user_blocks_.upper_bound(c);
    if (it == user_blocks_.begin()) it = user_blocks_.begin();
    else --it;
    return take_from_block(*it);
  }

  void give_back(GlobalIndex g) {
    const Height c = out_height_[g];
    user_unspent_[static_cast<std::size_t>(c)].push_back(g);
    user_blocks_.insert(c);
  }

  // ---- rings

  // `count` distinct decoys, none equal to `spend`, none owned by
  // `exclude_owner` (when it names a miner).
  std::vector<GlobalIndex> decoys(std::size_t count, GlobalIndex spend, WalletPolicy p,
                                  std::int32_t exclude_owner,
                                  const std::vector<GlobalIndex>& taken = {}) {
    std::vector<GlobalIndex> out;
    const Height newest = newest_spendable();
    std::size_t attempts = 0;
    while (out.size() < count) {
      if (++attempts > kMaxDrawAttempts) {
        throw Error(Errc::InfeasibleConfig, "cannot fill a ring of " + std::to_string(cfg_.ring_size) +
                                                " at height " + std::to_string(h_));
      }
      const Height c = newest - offset(newest);
      if (p == WalletPolicy::TenBlockBug && c == newest) continue;
      const std::uint32_t n = block_count_[static_cast<std::size_t>(c)];
      const GlobalIndex g = block_first_[static_cast<std::size_t>(c)] + uniform(n);
      if (g == spend) continue;
      if (exclude_owner >= 0 && owner_[g] == exclude_owner) continue;
      if (std::find(out.begin(), out.end(), g) != out.end()) continue;
      if (std::find(taken.begin(), taken.end(), g) != taken.end()) continue;
      out.push_back(g);
    }
    return out;
  }

  std::vector<GlobalIndex> ring(GlobalIndex spend, std::vector<GlobalIndex> members) {
    members.push_back(spend);
    std::sort(members.begin(), members.end());
    return members;
  }

  std::size_t ring_size(bool zero_mixin) const { return zero_mixin ? 1 : cfg_.ring_size; }

  // ---- transaction kinds

  void coinbase(bool warmup) {
    TransactionRecord tx = open_tx();
    tx.coinbase = true;
    const bool p2pool = !warmup && cfg_.mining.p2pool_launch && utc_date(now_) >= *cfg_.mining.p2pool_launch &&
                        chance(cfg_.mining.p2pool_block_fraction);
    if (warmup) {
      for (std::size_t i = 0; i < 2 * cfg_.ring_size + 8; ++i) add_output(tx, kUser);
    } else if (p2pool) {
      for (std::size_t i = 0; i < cfg_.mining.p2pool_fanout; ++i) {
        const std::size_t m = uniform(cfg_.mining.miner_count);
        const GlobalIndex g = add_output(tx, static_cast<std::int32_t>(m));
        out_.payouts.push_back({tx.tx_id, g, miner_name(m)});
      }
    } else {
      add_output(tx, kPool);
    }
    ++out_.tally.coinbase;
    close_tx(std::move(tx), {});
  }

  static std::string miner_name(std::size_t m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "miner-%03zu", m);
    return buf;
  }

  // Number of leading outputs in `owned` old enough to spend.
  std::size_t spendable_prefix(const std::deque<GlobalIndex>& owned) const {
    std::size_t n = 0;
    while (n < owned.size() && out_height_[owned[n]] <= newest_spendable()) ++n;
    return n;
  }

  void consolidate(std::size_t m) {
    auto& owned = miner_owned_[m];
    if (spendable_prefix(owned) < miner_target_[m]) return;
    const WalletPolicy p = policy() == WalletPolicy::TenBlockBug ? WalletPolicy::TenBlockBug : WalletPolicy::Correct;
    TransactionRecord tx = open_tx();
    std::vector<GlobalIndex> spends(owned.begin(), owned.begin() + static_cast<std::ptrdiff_t>(miner_target_[m]));
    owned.erase(owned.begin(), owned.begin() + static_cast<std::ptrdiff_t>(miner_target_[m]));
    for (GlobalIndex s : spends) {
      tx.inputs.push_back(ring(s, decoys(cfg_.ring_size - 1, s, p, static_cast<std::int32_t>(m))));
    }
    add_output(tx, kUser);
    out_.consolidations.push_back(tx.tx_id);
    ++out_.tally.consolidations;
    miner_target_[m] = draw(cfg_.mining.consolidation_inputs);
    close_tx(std::move(tx), spends);
  }

  void pool_payout() {
    if (spendable_prefix(pool_owned_) < pool_target_) return;
    const WalletPolicy p = policy() == WalletPolicy::TenBlockBug ? WalletPolicy::TenBlockBug : WalletPolicy::Correct;
    TransactionRecord tx = open_tx();
    std::vector<GlobalIndex> spends(pool_owned_.begin(), pool_owned_.begin() + static_cast<std::ptrdiff_t>(pool_target_));
    pool_owned_.erase(pool_owned_.begin(), pool_owned_.begin() + static_cast<std::ptrdiff_t>(pool_target_));
    for (GlobalIndex s : spends) tx.inputs.push_back(ring(s, decoys(cfg_.ring_size - 1, s, p, kUser)));
    for (std::size_t i = 0; i < cfg_.mining.pool_payout_outputs; ++i) add_output(tx, kUser);
    ++out_.tally.pool_payouts;
    pool_target_ = draw(cfg_.mining.pool_payout_inputs);
    close_tx(std::move(tx), spends);
  }

  std::size_t slots() {
    if (cfg_.tx_rate == TxRate::Fixed) return static_cast<std::size_t>(std::llround(cfg_.txs_per_block));
    return poisson(cfg_.txs_per_block);
  }

  void regular_slots() {
    due_.insert(due_.end(), std::make_move_iterator(pending_.begin()), std::make_move_iterator(pending_.end()));
    pending_.clear();
    const std::size_t n = slots();
    for (std::size_t i = 0; i < n; ++i) {
      if (!due_.empty()) {
        Session s = std::move(due_.front());
        due_.pop_front();
        cached_spend(s);
        continue;
      }
      const WalletPolicy p = policy();
      if (p == WalletPolicy::CachedDecoys) {
        start_session(p);
      } else {
        regular(p);
      }
    }
  }

  void regular(WalletPolicy p) {
    std::size_t inputs = 1;
    while (inputs < cfg_.max_inputs && chance(cfg_.extra_input_probability)) ++inputs;
    const bool zero = chance(cfg_.zero_mixin_fraction);

    std::vector<GlobalIndex> spends;
    for (std::size_t i = 0; i < inputs; ++i) {
      const auto s = take_user_output(p);
      if (!s) break;
      spends.push_back(*s);
    }
    if (spends.empty()) {
      ++out_.tally.skipped;
      return;
    }
    TransactionRecord tx = open_tx();
    for (GlobalIndex s : spends) tx.inputs.push_back(ring(s, decoys(ring_size(zero) - 1, s, p, kUser)));
    add_output(tx, kUser);
    add_output(tx, kUser);
    ++out_.tally.regular;
    close_tx(std::move(tx), spends);
  }

  void start_session(WalletPolicy p) {
    const auto s = take_user_output(p);
    if (!s) {
      ++out_.tally.skipped;
      return;
    }
    Session session{p, decoys(cfg_.ring_size - 1, *s, WalletPolicy::Correct, kUser), cfg_.cache_length, {}};
    spend_with_cache(session, *s);
  }

  void cached_spend(Session& session) {
    std::vector<GlobalIndex> rejected;
    std::optional<GlobalIndex> s;
    for (int attempt = 0; attempt < 8 && !s; ++attempt) {
      s = take_user_output(session.policy);
      if (s && std::find(session.cache.begin(), session.cache.end(), *s) != session.cache.end()) {
        rejected.push_back(*s);
        s.reset();
      }
    }
    for (GlobalIndex g : rejected) give_back(g);
    if (!s) {
      ++out_.tally.skipped;
      finish(session);
      return;
    }
    spend_with_cache(session, *s);
  }

  void spend_with_cache(Session& session, GlobalIndex spend) {
    TransactionRecord tx = open_tx();
    tx.inputs.push_back(ring(spend, session.cache));
    add_output(tx, kUser);
    add_output(tx, kUser);
    session.record.rings.push_back({tx.tx_id, 0});
    session.record.spends.push_back(spend);
    ++out_.tally.regular;
    close_tx(std::move(tx), {spend});
    if (--session.remaining > 0) {
      pending_.push_back(std::move(session));
    } else {
      finish(session);
    }
  }

  void finish(Session& session) {
    if (!session.record.rings.empty()) out_.cached_sessions.push_back(std::move(session.record));
    session.record = {};
  }

  void mint() {
    const WalletPolicy p = policy();
    const auto s = take_user_output(p);
    if (!s) {
      ++out_.tally.skipped;
      return;
    }
    TransactionRecord tx = open_tx();
    tx.extra_tags.emplace_back(kMordinalMintTag);
    tx.inputs.push_back(ring(*s, decoys(cfg_.ring_size - 1, *s, p, kUser)));
    add_output(tx, kMordinal);
    add_output(tx, kUser);
    add_output(tx, kBurn);
    ++out_.tally.mints;
    close_tx(std::move(tx), {*s});
  }

  void transfer() {
    const Height newest = newest_spendable();
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < mordinals_.size(); ++i) {
      if (out_height_[mordinals_[i]] <= newest) ready.push_back(i);
    }
    if (ready.empty()) return;
    const std::size_t pick = ready[uniform(ready.size())];
    const GlobalIndex s = mordinals_[pick];
    mordinals_.erase(mordinals_.begin() + static_cast<std::ptrdiff_t>(pick));

    const WalletPolicy p = policy();
    std::vector<GlobalIndex> eligible;
    for (GlobalIndex b : burns_) {
      const Height c = out_height_[b];
      if (c > newest) break;
      if (p == WalletPolicy::TenBlockBug && c == newest) continue;
      eligible.push_back(b);
    }
    std::vector<GlobalIndex> padding;
    const std::size_t want = cfg_.ring_size - 1;
    if (eligible.size() <= want) {
      padding = eligible;
    } else {
      for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + uniform(eligible.size() - i);
        std::swap(eligible[i], eligible[j]);
        padding.push_back(eligible[i]);
      }
    }
    if (padding.size() < want) {
      std::vector<GlobalIndex> more = decoys(want - padding.size(), s, p, kUser, padding);
      padding.insert(padding.end(), more.begin(), more.end());
    }

    TransactionRecord tx = open_tx();
    tx.extra_tags.emplace_back(kMordinalTransferTag);
    tx.inputs.push_back(ring(s, padding));
    add_output(tx, kMordinal);
    add_output(tx, kBurn);
    ++out_.tally.transfers;
    close_tx(std::move(tx), {s});
  }

  const GeneratorConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<double> weights_;

  Height h_ = 0;
  Timestamp now_ = 0;
  GlobalIndex next_g_ = 0;
  std::uint64_t tx_counter_ = 0;

  std::vector<Height> out_height_;
  std::vector<std::int32_t> owner_;
  std::vector<GlobalIndex> block_first_;
  std::vector<std::uint32_t> block_count_;

  std::vector<std::vector<GlobalIndex>> user_unspent_;
  std::set<Height> user_blocks_;
  std::vector<std::deque<GlobalIndex>> miner_owned_;
  std::vector<std::size_t> miner_target_;
  std::deque<GlobalIndex> pool_owned_;
  std::size_t pool_target_ = 1;
  std::vector<GlobalIndex> mordinals_;
  std::vector<GlobalIndex> burns_;

  std::deque<Session> pending_;
  std::deque<Session> due_;

  GeneratedChain out_;
};

}  // namespace

std::string_view to_string(WalletPolicy p) noexcept {
  switch (p) {
    case WalletPolicy::Correct: return "correct";
    case WalletPolicy::TenBlockBug: return "ten_block_bug";
    case WalletPolicy::CachedDecoys: return "cached_decoys";
  }
  return "correct";
}

std::optional<WalletPolicy> parse_policy(std::string_view name) noexcept {
  for (WalletPolicy p : {WalletPolicy::Correct, WalletPolicy::TenBlockBug, WalletPolicy::CachedDecoys}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void validate(const GeneratorConfig& c) {
  if (c.blocks < 1) invalid("blocks must be at least 1");
  if (c.block_interval < 1) invalid("block_interval must be positive");
  if (c.ring_size < 1) invalid("ring_size must be at least 1");
  if (c.lock_blocks < 1) invalid("lock_blocks must be at least 1");
  if (!(c.txs_per_block >= 0.0)) invalid("txs_per_block.mean must be non-negative");
  if (c.max_inputs < 1) invalid("inputs_per_tx.max must be at least 1");
  check_fraction(c.extra_input_probability, "inputs_per_tx.p_extra");
  if (!(c.decoy_shape > 0.0)) invalid("decoy_shape must be positive");
  check_fraction(c.zero_mixin_fraction, "zero_mixin_fraction");
  check_fraction(c.fast_spend_fraction, "fast_spend_fraction");
  check_fraction(c.bug_age10_fraction, "bug_age10_fraction");
  if (c.wallets.empty()) invalid("wallets must not be empty");
  for (const WalletWeight& w : c.wallets) {
    if (!(w.weight > 0.0)) invalid("wallet weights must be positive");
  }
  if (c.cache_length < 1) invalid("cache_length must be at least 1");
  check_fraction(c.mining.p2pool_block_fraction, "mining.p2pool_block_fraction");
  if (c.mining.miner_count < 1) invalid("mining.miner_count must be at least 1");
  if (c.mining.p2pool_fanout < 1) invalid("mining.p2pool_fanout must be at least 1");
  check_range(c.mining.consolidation_inputs, "mining.consolidation_inputs");
  check_range(c.mining.pool_payout_inputs, "mining.pool_payout_inputs");
  if (c.mining.pool_payout_outputs < 1) invalid("mining.pool_payout_outputs must be at least 1");
  if (!(c.mint_rate >= 0.0) || !(c.transfer_rate >= 0.0)) invalid("mordinal rates must be non-negative");
}

GeneratorConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    invalid(std::string("invalid JSON: ") + e.what());
  }
  GeneratorConfig c;
  Fields f(root, "");
  f.number("seed", c.seed);
  f.number("blocks", c.blocks);
  f.number("start_time", c.start_time);
  if (f.get("start_date")) {
    if (root.contains("start_time")) invalid("give start_time or start_date, not both");
    const auto d = f.date("start_date", std::nullopt);
    if (!d) invalid("start_date must be a YYYY-MM-DD string");
    c.start_time = start_of_day(*d);
  }
  f.number("block_interval", c.block_interval);

  if (const json* v = f.get("txs_per_block")) {
    Fields t(*v, "txs_per_block");
    if (const json* d = t.get("distribution")) {
      if (*d == "poisson") {
        c.tx_rate = TxRate::Poisson;
      } else if (*d == "fixed") {
        c.tx_rate = TxRate::Fixed;
      } else {
        invalid("txs_per_block.distribution must be \"poisson\" or \"fixed\"");
      }
    }
    t.number("mean", c.txs_per_block);
    t.finish();
  }
  if (const json* v = f.get("inputs_per_tx")) {
    Fields t(*v, "inputs_per_tx");
    t.number("max", c.max_inputs);
    t.number("p_extra", c.extra_input_probability);
    t.finish();
  }
  f.number("ring_size", c.ring_size);
  f.number("lock_blocks", c.lock_blocks);
  f.number("decoy_shape", c.decoy_shape);
  f.number("zero_mixin_fraction", c.zero_mixin_fraction);

  if (const json* v = f.get("wallets")) {
    if (!v->is_array()) invalid("wallets must be an array");
    c.wallets.clear();
    for (const json& w : *v) {
      Fields t(w, "wallets[]");
      const json* p = t.get("policy");
      if (!p || !p->is_string()) invalid("wallets[].policy must be a string");
      const auto policy = parse_policy(p->get<std::string>());
      if (!policy) invalid("unknown wallet policy '" + p->get<std::string>() + "'");
      WalletWeight ww{*policy, 1.0};
      t.number("weight", ww.weight);
      t.finish();
      c.wallets.push_back(ww);
    }
  }
  f.number("fast_spend_fraction", c.fast_spend_fraction);
  f.number("bug_age10_fraction", c.bug_age10_fraction);
  f.number("cache_length", c.cache_length);

  if (const json* v = f.get("mining")) {
    Fields t(*v, "mining");
    c.mining.p2pool_launch = t.date("p2pool_launch", c.mining.p2pool_launch);
    t.number("p2pool_block_fraction", c.mining.p2pool_block_fraction);
    t.number("p2pool_fanout", c.mining.p2pool_fanout);
    t.number("miner_count", c.mining.miner_count);
    t.range("consolidation_inputs", c.mining.consolidation_inputs);
    t.range("pool_payout_inputs", c.mining.pool_payout_inputs);
    t.number("pool_payout_outputs", c.mining.pool_payout_outputs);
    t.finish();
  }
  if (const json* v = f.get("mordinals")) {
    Fields t(*v, "mordinals");
    t.number("mint_rate", c.mint_rate);
    t.number("transfer_rate", c.transfer_rate);
    t.finish();
  }
  f.finish();
  validate(c);
  return c;
}

GeneratorConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::string format_config(const GeneratorConfig& c) {
  json wallets = json::array();
  for (const WalletWeight& w : c.wallets) wallets.push_back({{"policy", to_string(w.policy)}, {"weight", w.weight}});
  const auto range = [](const IntRange& r) { return json{{"min", r.min}, {"max", r.max}}; };
  json root = {
      {"seed", c.seed},
      {"blocks", c.blocks},
      {"start_time", c.start_time},
      {"block_interval", c.block_interval},
      {"txs_per_block", {{"distribution", c.tx_rate == TxRate::Fixed ? "fixed" : "poisson"}, {"mean", c.txs_per_block}}},
      {"inputs_per_tx", {{"max", c.max_inputs}, {"p_extra", c.extra_input_probability}}},
      {"ring_size", c.ring_size},
      {"lock_blocks", c.lock_blocks},
      {"decoy_shape", c.decoy_shape},
      {"zero_mixin_fraction", c.zero_mixin_fraction},
      {"wallets", wallets},
      {"fast_spend_fraction", c.fast_spend_fraction},
      {"bug_age10_fraction", c.bug_age10_fraction},
      {"cache_length", c.cache_length},
      {"mining",
       {{"p2pool_launch", c.mining.p2pool_launch ? json(format_date(*c.mining.p2pool_launch)) : json(nullptr)},
        {"p2pool_block_fraction", c.mining.p2pool_block_fraction},
        {"p2pool_fanout", c.mining.p2pool_fanout},
        {"miner_count", c.mining.miner_count},
        {"consolidation_inputs", range(c.mining.consolidation_inputs)},
        {"pool_payout_inputs", range(c.mining.pool_payout_inputs)},
        {"pool_payout_outputs", c.mining.pool_payout_outputs}}},
      {"mordinals", {{"mint_rate", c.mint_rate}, {"transfer_rate", c.transfer_rate}}},
  };
  return root.dump(2) + "\n";
}

Height warmup_blocks(const GeneratorConfig& config) noexcept { return config.lock_blocks + 2; }

GeneratedChain generate(const GeneratorConfig& config) {
  validate(config);
  return Generator(config).run();
}

Expectation describe(const GeneratorConfig& c) {
  Expectation e;
  e.warmup_blocks = warmup_blocks(c);
  e.coinbase_txs = c.blocks;
  const auto active = static_cast<double>(std::max<Height>(0, static_cast<Height>(c.blocks) - e.warmup_blocks));
  const double rate = c.tx_rate == TxRate::Fixed ? static_cast<double>(std::llround(c.txs_per_block)) : c.txs_per_block;
  e.regular_txs = active * rate;
  e.mordinal_mints = active * c.mint_rate;

  if (c.mining.p2pool_launch) {
    const Timestamp launch = start_of_day(*c.mining.p2pool_launch);
    std::size_t eligible = 0;
    for (Height h = e.warmup_blocks; h < static_cast<Height>(c.blocks); ++h) {
      if (c.start_time + h * c.block_interval >= launch) ++eligible;
    }
    const double f = c.mining.p2pool_block_fraction;
    const auto fanout = static_cast<double>(c.mining.p2pool_fanout);
    e.payout_records = static_cast<double>(eligible) * f * fanout;
    e.p2pool_output_share = f * fanout / (f * fanout + (1.0 - f));
  }
  return e;
}

GroundTruth ground_truth(const GeneratedChain& generated, const ChainStore& chain) {
  GroundTruth truth;
  for (const TruthRow& row : generated.truth) {
    const auto r = chain.find_ring(row.ring);
    if (!r) throw Error(Errc::UnknownRing, "truth row for unknown ring " + row.ring.tx_id);
    truth.entries.emplace(*r, row.true_spend);
  }
  return truth;
}

void write_generated(const GeneratedChain& generated, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  write_chain_file(dir / kChainFile, generated.transactions);
  write_payouts(dir / kPayoutsFile, generated.payouts);
  write_file_atomic(dir / kTruthFile, format_truth_rows(generated.truth));
}

}  // namespace ringtrace::synth
