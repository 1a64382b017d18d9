#include "rdc/universe.hpp"

#include <sstream>

namespace rdc {

namespace {
constexpr int max_events = 12;
constexpr long max_states = 1 << 16;
constexpr long max_traces = 1 << 20;
}  // namespace

universe::universe(universe_config cfg) : cfg_(std::move(cfg)) {
  if (cfg_.bound < 1) throw error(errc::invalid_argument, "trace bound must be at least 1");
  for (std::size_t c = 0; c < cfg_.channels.size(); ++c) {
    const auto& ch = cfg_.channels[c];
    long total = 1;
    for (const auto& r : ch.params) {
      if (r.size() < 1) throw error(errc::invalid_argument, "empty channel domain: " + ch.name);
      total *= r.size();
      if (total > (1L << max_events)) throw error(errc::alphabet_too_large, "channel too wide: " + ch.name);
    }
    for (long n = 0; n < total; ++n) {
      std::vector<int> args(ch.params.size());
      long x = n;
      for (std::size_t i = ch.params.size(); i-- > 0;) {
        args[i] = ch.params[i].lo + static_cast<int>(x % ch.params[i].size());
        x /= ch.params[i].size();
      }
      event ev{ch.name, args};
      event_ix_[ev] = static_cast<int>(events_.size());
      events_.push_back(std::move(ev));
    }
  }
  if (n_events() > max_events)
    throw error(errc::alphabet_too_large, "event alphabet exceeds " + std::to_string(max_events));

  long states = 1;
  for (const auto& v : cfg_.vars) {
    if (v.values.size() < 1) throw error(errc::invalid_argument, "empty domain: " + v.name);
    var_slot_.push_back(n_slots());
    if (v.kind == var_kind::map) {
      if (v.keys.size() < 1) throw error(errc::invalid_argument, "empty key range: " + v.name);
      for (int k = 0; k < v.keys.size(); ++k) {
        slot_radix_.push_back(v.values.size() + 1);
        slot_lo_.push_back(v.values.lo);
        slot_optional_.push_back(true);
        states *= v.values.size() + 1;
        if (states > max_states) break;
      }
    } else {
      slot_radix_.push_back(v.values.size());
      slot_lo_.push_back(v.values.lo);
      slot_optional_.push_back(false);
      states *= v.values.size();
    }
    if (states > max_states) throw error(errc::alphabet_too_large, "state space too large");
  }
  n_states_ = static_cast<int>(states);

  long t = 0, p = 1;
  for (int k = 0; k <= cfg_.bound; ++k) {
    t += p;
    p *= n_events();
    if (t > max_traces) throw error(errc::alphabet_too_large, "trace space too large");
  }
  traces_ = trace_space(n_events(), cfg_.bound);

  decoded_.resize(n_states_);
  for (int st = 0; st < n_states_; ++st) {
    std::vector<int> s(n_slots());
    int x = st;
    for (int i = n_slots() - 1; i >= 0; --i) {
      int d = x % slot_radix_[i];
      x /= slot_radix_[i];
      s[i] = slot_optional_[i] ? (d == 0 ? absent : slot_lo_[i] + d - 1) : slot_lo_[i] + d;
    }
    decoded_[st] = std::move(s);
  }
}

std::shared_ptr<const universe> universe::make(universe_config cfg) {
  return std::make_shared<const universe>(std::move(cfg));
}

std::optional<int> universe::event_index(const event& ev) const {
  auto it = event_ix_.find(ev);
  if (it == event_ix_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> universe::channel_index(const std::string& name) const {
  for (std::size_t i = 0; i < cfg_.channels.size(); ++i)
    if (cfg_.channels[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> universe::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < cfg_.vars.size(); ++i)
    if (cfg_.vars[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<int> universe::decode(int st) const { return decoded_[st]; }

std::optional<int> universe::encode(const std::vector<int>& slots) const {
  if (static_cast<int>(slots.size()) != n_slots()) return std::nullopt;
  int x = 0;
  for (int i = 0; i < n_slots(); ++i) {
    int v = slots[i], d;
    if (slot_optional_[i]) {
      if (v == absent) d = 0;
      else {
        d = v - slot_lo_[i] + 1;
        if (d < 1 || d >= slot_radix_[i]) return std::nullopt;
      }
    } else {
      d = v - slot_lo_[i];
      if (d < 0 || d >= slot_radix_[i]) return std::nullopt;
    }
    x = x * slot_radix_[i] + d;
  }
  return x;
}

std::string universe::show_trace(int t) const {
  std::string s = "<";
  const auto& it = traces_.items(t);
  for (std::size_t i = 0; i < it.size(); ++i) {
    if (i) s += ",";
    s += show_event(it[i]);
  }
  return s + ">";
}

std::string universe::show_state(int st) const {
  const auto& s = decoded_[st];
  std::ostringstream o;
  o << "(";
  for (std::size_t v = 0; v < cfg_.vars.size(); ++v) {
    const auto& d = cfg_.vars[v];
    if (v) o << ",";
    o << d.name << "=";
    int base = var_slot_[v];
    if (d.kind == var_kind::map) {
      o << "{";
      bool first = true;
      for (int k = 0; k < d.keys.size(); ++k) {
        int val = s[base + k];
        if (val == absent) continue;
        if (!first) o << ",";
        first = false;
        o << (d.keys.lo + k) << ":" << val;
      }
      o << "}";
    } else if (d.kind == var_kind::boolean) {
      o << (s[base] ? "true" : "false");
    } else {
      o << s[base];
    }
  }
  o << ")";
  return o.str();
}

std::string universe::show_refusal(unsigned r) const {
  std::string s = "{";
  bool first = true;
  for (int e = 0; e < n_events(); ++e) {
    if (!((r >> e) & 1u)) continue;
    if (!first) s += ",";
    first = false;
    s += show_event(e);
  }
  return s + "}";
}

}  // namespace rdc
