// Todd-Coxeter coset enumeration over the trivial subgroup: the order oracle
// for finitely presented groups emitted by the presentation layer.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace titscone {

// Relators are words over signed letters: +(g+1) for generator g, -(g+1) for
// its inverse.
struct FinitePresentation {
  unsigned generator_count = 0;
  std::vector<std::vector<int>> relators;
};

// Returns the group order, or nullopt if enumeration did not close within
// max_cosets (group too large or infinite).
std::optional<std::size_t> coset_enumeration_order(const FinitePresentation& pres,
                                                   std::size_t max_cosets = 1u << 18);

}  // namespace titscone
