#pragma once

#include <span>
#include <vector>

#include "ringtrace/chain.hpp"
#include "ringtrace/labels.hpp"

namespace ringtrace {

struct ReactionResult {
  LabelSet labels;
  // Unresolved rings whose members were all eliminated. Skipped, not fatal.
  std::vector<RingId> contradictions;
  std::size_t rounds = 0;
};

// Chain-reaction fixpoint. A member is eliminated from a ring when it carries
// a Decoy label there or is claimed TrueSpend in another ring. An unresolved
// ring left with exactly one member promotes it to TrueSpend
// (HeuristicId::ChainReaction) and its consequences are added as derived
// Decoys. Seed consequences are added first, under the seed's heuristic.
//
// Promotions are applied in synchronous rounds: every ring that is down to
// one member at the start of a round is promoted before any consequence of
// that round is applied, so the fixpoint does not depend on the order rings
// are visited in.
ReactionResult chain_reaction(const ChainStore& chain, const LabelSet& seed);

struct CombinedResult {
  LabelSet labels;
  std::size_t new_true_spends = 0;
  std::size_t new_decoys = 0;
  std::vector<RingId> contradictions;
};

// Runs the reaction over the union of all inputs. The new_* counts are
// (ring, member) pairs whose claim appears in the output but in none of the
// inputs.
CombinedResult combined_chain_reaction(const ChainStore& chain, std::span<const LabelSet> inputs);

}  // namespace ringtrace
