#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ringtrace/chain.hpp"

namespace ringtrace {

enum class Claim : std::uint8_t { TrueSpend, Decoy };

enum class HeuristicId : std::uint8_t {
  ZeroMixin,
  ChainReaction,
  TenBlockDecoyBug,
  DifferByOne,
  Mordinal,
  Coinbase,
  P2PoolMerge,
  Combined,
};

inline constexpr HeuristicId kAllHeuristics[] = {
    HeuristicId::ZeroMixin, HeuristicId::ChainReaction, HeuristicId::TenBlockDecoyBug,
    HeuristicId::DifferByOne, HeuristicId::Mordinal,    HeuristicId::Coinbase,
    HeuristicId::P2PoolMerge, HeuristicId::Combined,
};

// Stable names used in label files, CLI flags and reports.
std::string_view to_string(HeuristicId h) noexcept;
std::optional<HeuristicId> parse_heuristic(std::string_view name) noexcept;

std::string_view to_string(Claim c) noexcept;
std::optional<Claim> parse_claim(std::string_view name) noexcept;

struct Label {
  RingId ring = 0;
  GlobalIndex member = 0;
  Claim claim = Claim::Decoy;
  HeuristicId heuristic = HeuristicId::Combined;
  bool derived = false;

  bool operator==(const Label&) const = default;
};

// Canonical order: ring, member, heuristic, claim, derived.
bool canonical_less(const Label& a, const Label& b) noexcept;

// A bag of labels, unique on (ring, member, heuristic). Conflicting claims
// from different heuristics, or across rings, are kept: metrics measure them.
class LabelSet {
 public:
  explicit LabelSet(HeuristicId owner = HeuristicId::Combined) : owner_(owner) {}

  HeuristicId heuristic() const noexcept { return owner_; }
  void set_heuristic(HeuristicId h) noexcept { owner_ = h; }

  // Returns false (and keeps the existing label) if the key is taken.
  bool add(const Label& label);
  // Same, but first checks label.member belongs to the ring.
  bool add(const Label& label, const ChainStore& chain);

  const Label* find(RingId ring, GlobalIndex member, HeuristicId h) const noexcept;
  bool contains(RingId ring, GlobalIndex member, HeuristicId h) const noexcept {
    return find(ring, member, h) != nullptr;
  }

  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  // Positions into labels().
  std::span<const std::uint32_t> in_ring(RingId ring) const noexcept;
  std::span<const std::uint32_t> of_member(GlobalIndex member) const noexcept;
  bool has_claim(RingId ring, GlobalIndex member, Claim claim) const noexcept;
  // Rings in which `member` is claimed TrueSpend, ascending, deduplicated.
  std::vector<RingId> true_spend_rings(GlobalIndex member) const;

  std::vector<Label> canonical() const;

  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.owner_ == b.owner_ && a.canonical() == b.canonical();
  }

 private:
  struct Key {
    RingId ring;
    GlobalIndex member;
    HeuristicId heuristic;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  HeuristicId owner_;
  std::vector<Label> labels_;
  std::unordered_map<Key, std::uint32_t, KeyHash> by_key_;
  std::unordered_map<RingId, std::vector<std::uint32_t>> by_ring_;
  std::unordered_map<GlobalIndex, std::vector<std::uint32_t>> by_member_;
};

// Union of several sets, first occurrence of a key wins.
LabelSet merge(std::span<const LabelSet> sets, HeuristicId owner = HeuristicId::Combined);

// Owner heuristic for a set read back from a file: the single heuristic
// present, ChainReaction for a zero-mixin seeded reaction, Combined otherwise.
HeuristicId infer_owner(std::span<const Label> labels) noexcept;

}  // namespace ringtrace
