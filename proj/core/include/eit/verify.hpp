#pragma once

#include <string>
#include <vector>

namespace eit {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Module invariant suites at pinned desk-scale sizes.  `verify_balances`
// carries the run-level acceptance criteria (energy compensation, second
// law, CIT limit, second sound, momentum-form equivalence, mode reductions,
// Maxwell decomposition, higher-order hierarchy).
std::vector<Check> verify_fields();
std::vector<Check> verify_thermo();
std::vector<Check> verify_material();
std::vector<Check> verify_finite_dim();
std::vector<Check> verify_balances();

/// suite in {fields, thermo, material, finite-dim, balances, all}
std::vector<Check> verify_suite(const std::string& suite);

bool all_pass(const std::vector<Check>& checks);

}  // namespace eit
