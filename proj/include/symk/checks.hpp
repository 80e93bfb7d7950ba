#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symk/report.hpp"

namespace symk {

struct SuiteOptions {
  u64 seed = 1;
  int threads = 1;
};

// Invariant checks with fixed sizes; each returns a report whose checks are all PASS on success.
// Wall times per part land in the timing block under "ms".
Report check_reciprocity(const SuiteOptions& o);             // 1
Report check_steinberg_vanishing(const SuiteOptions& o);     // 2
Report check_rewrites(const SuiteOptions& o);                // 3
Report check_pinned_values(const SuiteOptions& o);           // 4
Report check_chain(const SuiteOptions& o);                   // 5
Report check_somekawa_in_geometric(const SuiteOptions& o);   // 6
Report check_steinberg_datum(const SuiteOptions& o);         // 7
Report check_theta(const SuiteOptions& o);                   // 8
Report check_local_symbol_axioms(const SuiteOptions& o);     // 9
Report check_projection_formula(const SuiteOptions& o);      // 10
Report check_elliptic_pair_trace(const SuiteOptions& o);     // 11, report only

struct SuiteEntry {
  int id;
  std::string title;
  std::function<Report(const SuiteOptions&)> run;
};
// Entries 1 to 11 in order.
const std::vector<SuiteEntry>& law_suite();

}  // namespace symk
