// Named verification suites over an enumerated arrangement: the machine
// checks behind `titscone verify`. Checks that need finite type are reported
// as skipped on other diagrams.

#pragma once

#include <functional>

#include "titscone/arrangement.hpp"
#include "titscone/report.hpp"

namespace titscone {

struct VerifyOptions {
  unsigned seed = 20250801;
  unsigned threads = 1;
};

CheckReport verify_arrangement(const ArrangementGraph& graph, const VerifyOptions& opts = {});
CheckReport verify_groupoid(const ArrangementGraph& graph, const VerifyOptions& opts = {});
CheckReport verify_garside(const ArrangementGraph& graph, const VerifyOptions& opts = {});
CheckReport verify_all(const ArrangementGraph& graph, const VerifyOptions& opts = {});

// Runs fn(i) for i in [0, n) across the given number of threads with
// deterministic work assignment; results must be written to per-index slots.
void parallel_for_index(unsigned threads, std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace titscone
