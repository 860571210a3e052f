// The Brink-Howlett groupoid: associates, morphism tests, rank-two lcms with
// their two standard expressions, groupoid presentation of N(W,J), the
// chamber-realized universal cover checks, Deligne-groupoid positive path
// equality, and the atomic Matsumoto verification.

#pragma once

#include "titscone/arrangement.hpp"
#include "titscone/groupoid.hpp"
#include "titscone/report.hpp"

namespace titscone {

// Objects of BH(J) reachable in the graph: the distinct second labels,
// closed under wall-crossing targets, sorted.
std::vector<NodeSet> associates(const ArrangementGraph& graph);

// {alpha_i : i in I} = {x . alpha_k : k in K} as sets of roots.
bool is_bh_morphism(const GroupElement& x, NodeSet I, NodeSet K);

// All w in W with is_bh_morphism(w, I, K); finite type only.
std::vector<GroupElement> enumerate_bh_hom(const CoxeterContext& ctx, NodeSet I, NodeSet K);

enum class RankTwoStatus { computed, infinite, indeterminate };

struct RankTwoLcm {
  GroupElement element;  // v_{a,b,I}
  // the two standard expressions, as (wall label, object) steps
  std::vector<std::pair<unsigned, NodeSet>> expr_a;
  std::vector<std::pair<unsigned, NodeSet>> expr_b;
};

struct RankTwoResult {
  RankTwoStatus status = RankTwoStatus::infinite;
  std::optional<RankTwoLcm> lcm;
};

// v_{a,b,I}: the lcm of v_{a,I} and v_{b,I}, built from the inversion set
// Phi+_{I+a+b} - Phi+_I when that set is finite. The finiteness test runs
// bounded orbit generation with the given cutoff and reports indeterminate
// above it.
RankTwoResult rank_two_lcm(const CoxeterContext& ctx, NodeSet I, unsigned a, unsigned b,
                           std::size_t cutoff = 4096);

// Generators v_{a,I} over all associates and crossable walls; relations are
// the involutions v_{a,I} v_{a',K} = id and the paired standard expressions
// of every rank-two lcm.
GroupoidPresentation bh_presentation(const ArrangementGraph& graph);

// Universal-cover checks on the enumerated graph: unique path lifting,
// singleton morphism spaces, and the deck (= normaliser) action being free
// and fiber-transitive. Hom-set enumeration requires finite type; on balls
// the affected checks are skipped and noted.
CheckReport universal_cover_check(const ArrangementGraph& graph);

// Positive-path equality in the Deligne groupoid: true iff q is reachable
// from p by replacing geodesic subpaths with equal-endpoint geodesics.
// nullopt when the closure exceeds max_states.
std::optional<bool> positive_path_equal(const ArrangementGraph& graph, const ChamberPath& p,
                                        const ChamberPath& q, std::size_t max_states = 1u << 15);

struct AtomicMatsumotoOptions {
  std::size_t pair_limit = 1u << 20;
  std::size_t geodesic_limit = 1u << 16;
};

// For every safely-enumerable chamber pair, checks that the rank-two
// rewriting closure connects all geodesics between them.
CheckReport atomic_matsumoto_check(const ArrangementGraph& graph,
                                   const AtomicMatsumotoOptions& opts = {});

}  // namespace titscone
