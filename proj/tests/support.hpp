#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rdc/circus.hpp"
#include "rdc/health.hpp"
#include "rdc/laws.hpp"
#include "rdc/sampling.hpp"

namespace test {

inline std::string source_path(const std::string& rel) { return std::string(RDC_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One integer variable x : lo..hi and no events.
inline rdc::universe_ptr int_universe(int lo, int hi, int bound = 1) {
  rdc::universe_config cfg;
  cfg.vars = {{"x", rdc::var_kind::integer, {lo, hi}, {}}};
  cfg.bound = bound;
  return rdc::universe::make(cfg);
}

// Two integer variables x, y : 0..1 and no events.
inline rdc::universe_ptr xy_universe() {
  rdc::universe_config cfg;
  cfg.vars = {{"x", rdc::var_kind::integer, {0, 1}, {}}, {"y", rdc::var_kind::integer, {0, 1}, {}}};
  cfg.bound = 1;
  return rdc::universe::make(cfg);
}

// State with slot values replaced, or nullopt when out of domain.
inline std::optional<int> with_slots(const rdc::universe& u, int st, std::initializer_list<std::pair<int, int>> sets) {
  auto s = u.decode(st);
  for (auto [slot, v] : sets) s[slot] = v;
  return u.encode(s);
}

inline int event_ix(const rdc::universe& u, const std::string& ch, std::vector<int> args = {}) {
  return *u.event_index({ch, std::move(args)});
}

inline int trace_of(const rdc::universe& u, std::initializer_list<int> events) {
  return u.traces().index(std::vector<int>(events));
}

// Parses a one-off specification and denotes `name` by the triple route.
inline rdc::contract denote_text(const std::string& text, const std::string& name) {
  rdc::denoter d(rdc::parse_spec(text));
  return d.resolve(name);
}

}  // namespace test
