#pragma once

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rdc/trace.hpp"

namespace rdc {

struct range {
  int lo = 0, hi = 0;
  int size() const { return hi - lo + 1; }
  bool contains(int v) const { return v >= lo && v <= hi; }
  auto operator<=>(const range&) const = default;
};

enum class var_kind { integer, boolean, map };

struct channel_decl {
  std::string name;
  std::vector<range> params;
};

// A map variable occupies one slot per key; an absent key holds `absent`.
struct var_decl {
  std::string name;
  var_kind kind = var_kind::integer;
  range values;  // value domain; {0,1} for booleans
  range keys;    // maps only
};

inline constexpr int absent = INT_MIN;

struct universe_config {
  std::vector<channel_decl> channels;
  std::vector<var_decl> vars;
  int bound = 1;
};

// Finite model: indexed events, states and bounded traces. Immutable.
class universe {
 public:
  explicit universe(universe_config cfg);
  static std::shared_ptr<const universe> make(universe_config cfg);

  const universe_config& config() const { return cfg_; }
  int bound() const { return cfg_.bound; }

  int n_events() const { return static_cast<int>(events_.size()); }
  int n_states() const { return n_states_; }
  int n_traces() const { return traces_.size(); }
  int n_refusals() const { return 1 << n_events(); }
  unsigned all_events() const { return (1u << n_events()) - 1u; }

  const trace_space& traces() const { return traces_; }
  const event& event_at(int e) const { return events_[e]; }
  std::optional<int> event_index(const event& ev) const;
  std::optional<int> channel_index(const std::string& name) const;
  std::optional<int> var_index(const std::string& name) const;

  // State slots: one per int/bool variable, one per key of a map variable.
  int n_slots() const { return static_cast<int>(slot_radix_.size()); }
  int slot_of(int var, int key_offset = 0) const { return var_slot_[var] + key_offset; }
  std::vector<int> decode(int st) const;
  const std::vector<int>& slots(int st) const { return decoded_[st]; }
  std::optional<int> encode(const std::vector<int>& slots) const;  // nullopt if out of domain

  std::string show_event(int e) const { return to_string(events_[e]); }
  std::string show_trace(int t) const;
  std::string show_state(int st) const;
  std::string show_refusal(unsigned r) const;

 private:
  universe_config cfg_;
  std::vector<event> events_;
  std::map<event, int> event_ix_;
  std::vector<int> var_slot_;
  std::vector<int> slot_radix_;  // values per slot (maps include `absent`)
  std::vector<int> slot_lo_;
  std::vector<bool> slot_optional_;
  int n_states_ = 1;
  trace_space traces_;
  std::vector<std::vector<int>> decoded_;
};

using universe_ptr = std::shared_ptr<const universe>;

}  // namespace rdc
