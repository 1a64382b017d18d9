#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdc/parallel.hpp"

namespace rdc {

struct law_result {
  std::string name;
  bool holds = true;
  std::size_t checked = 0;
  std::string witness;  // first failing instance
};

struct suite_report {
  std::string suite;
  std::vector<law_result> laws;
  double seconds = 0;
  bool holds() const;
  const law_result* find(const std::string& name) const;
};

struct law_options {
  std::uint64_t seed = 0;
  int samples = 0;  // 0: the suite's default
};

// trace, relational, healthiness, wp, rdlaws, ralaws, parallel, lifting, recursion.
const std::vector<std::string>& suite_names();
// Throws unknown_suite. "all" is handled by run_suites.
suite_report run_suite(const std::string& name, const law_options& opt = {});
std::vector<suite_report> run_suites(const std::string& name, const law_options& opt = {});

// Default law universe: channels a and b without arguments, one boolean x,
// trace bound `bound`.
universe_ptr law_universe(int bound = 2);
// One event a, no state, for recursion checks.
universe_ptr single_event_universe(int bound);

std::string format_report(const suite_report& r);

}  // namespace rdc
