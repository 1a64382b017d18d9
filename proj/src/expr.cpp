#include <algorithm>
#include <climits>
#include <sstream>

#include "rdc/circus.hpp"

namespace rdc {

namespace {

std::optional<value> num_v(long n) { return value{value::num, n, {}, {}}; }
std::optional<value> bool_v(bool b) { return value{value::boolean, b ? 1 : 0, {}, {}}; }

[[noreturn]] void type_error(const expr& e, const std::string& what) {
  throw error(errc::invalid_argument, std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + what);
}

std::optional<value> state_var(const expr& e, const eval_ctx& c) {
  const universe& u = *c.u;
  const auto vi = u.var_index(e.name);
  if (!vi) throw error(errc::undeclared, "undeclared name: " + e.name);
  const int st = e.primed ? c.st1 : c.st;
  if (st < 0) type_error(e, std::string(e.primed ? "final" : "initial") + " state not available here: " + e.name);
  const var_decl& d = u.config().vars[static_cast<std::size_t>(*vi)];
  const auto& slots = u.slots(st);
  const int base = u.slot_of(*vi);
  if (d.kind == var_kind::map) {
    value m{value::map, 0, {}, {}};
    for (int k = 0; k < d.keys.size(); ++k) {
      const int v = slots[static_cast<std::size_t>(base + k)];
      if (v != absent) m.entries.emplace_back(d.keys.lo + k, v);
    }
    return m;
  }
  if (d.kind == var_kind::boolean) return bool_v(slots[static_cast<std::size_t>(base)] != 0);
  return num_v(slots[static_cast<std::size_t>(base)]);
}

std::optional<value> event_value(const expr& e, const eval_ctx& c) {
  event ev{e.name, {}};
  for (const auto& a : e.args) {
    const auto v = eval_int(*a, c);
    if (!v) return std::nullopt;
    ev.args.push_back(static_cast<int>(*v));
  }
  if (!c.u->channel_index(e.name)) throw error(errc::undeclared, "undeclared channel: " + e.name);
  const auto ix = c.u->event_index(ev);
  if (!ix) return std::nullopt;
  return value{value::event, *ix, {}, {}};
}

bool same_coll(const value& a, const value& b) {
  auto empty = [](const value& v) {
    return v.kind == value::empty_coll || ((v.kind == value::set || v.kind == value::map) && v.items.empty() && v.entries.empty());
  };
  if (a.kind == value::empty_coll || b.kind == value::empty_coll) return empty(a) && empty(b);
  return a == b;
}

std::optional<value> binary(const expr& e, const eval_ctx& c) {
  switch (e.op) {
    case bin_op::land: return bool_v(eval_bool(*e.args[0], c) && eval_bool(*e.args[1], c));
    case bin_op::lor: return bool_v(eval_bool(*e.args[0], c) || eval_bool(*e.args[1], c));
    case bin_op::implies: return bool_v(!eval_bool(*e.args[0], c) || eval_bool(*e.args[1], c));
    default: break;
  }
  const expr& rhs_e = *e.args[1];
  if ((e.op == bin_op::in || e.op == bin_op::notin) && rhs_e.kind == expr_kind::ref1) {
    if (!c.has_ref1) type_error(e, "ref' not available here");
    const auto ev = eval(*e.args[0], c);
    if (!ev) return std::nullopt;
    if (ev->kind != value::event) type_error(e, "only events can be refused");
    if (c.ref_queries) *c.ref_queries |= 1u << ev->n;
    const bool in = (c.ref1 >> ev->n) & 1u;
    return bool_v(e.op == bin_op::in ? in : !in);
  }
  const auto a = eval(*e.args[0], c);
  const auto b = eval(rhs_e, c);
  if (!a || !b) return std::nullopt;
  auto need = [&](value::kind_t k) {
    if (a->kind != k || b->kind != k) type_error(e, "operand types do not match the operator");
  };
  switch (e.op) {
    case bin_op::add: need(value::num); return num_v(a->n + b->n);
    case bin_op::sub: need(value::num); return num_v(a->n - b->n);
    case bin_op::eq: return bool_v(same_coll(*a, *b));
    case bin_op::ne: return bool_v(!same_coll(*a, *b));
    case bin_op::lt: need(value::num); return bool_v(a->n < b->n);
    case bin_op::gt: need(value::num); return bool_v(a->n > b->n);
    case bin_op::ge: need(value::num); return bool_v(a->n >= b->n);
    case bin_op::le:
      if (a->kind == value::trace && b->kind == value::trace)
        return bool_v(a->items.size() <= b->items.size() && std::equal(a->items.begin(), a->items.end(), b->items.begin()));
      need(value::num);
      return bool_v(a->n <= b->n);
    case bin_op::concat: {
      need(value::trace);
      value t = *a;
      t.items.insert(t.items.end(), b->items.begin(), b->items.end());
      return t;
    }
    case bin_op::in:
    case bin_op::notin: {
      bool in = false;
      if (b->kind == value::set) {
        in = std::binary_search(b->items.begin(), b->items.end(), a->n);
      } else if (b->kind == value::refusal) {
        in = a->kind == value::event && ((b->n >> a->n) & 1);
      } else if (b->kind != value::empty_coll) {
        type_error(e, "membership needs a set");
      }
      return bool_v(e.op == bin_op::in ? in : !in);
    }
    default: break;
  }
  type_error(e, "bad operator");
}

}  // namespace

std::optional<value> eval(const expr& e, const eval_ctx& c) {
  switch (e.kind) {
    case expr_kind::num: return num_v(e.num);
    case expr_kind::boolean: return bool_v(e.num != 0);
    case expr_kind::name: {
      if (!e.primed && c.env) {
        auto it = c.env->find(e.name);
        if (it != c.env->end()) return num_v(it->second);
      }
      if (!e.primed && !c.u->var_index(e.name) && c.u->channel_index(e.name)) return event_value(e, c);
      return state_var(e, c);
    }
    case expr_kind::tt: {
      if (c.tt < 0) type_error(e, "tt not available here");
      value t{value::trace, 0, {}, {}};
      for (int x : c.u->traces().items(c.tt)) t.items.push_back(x);
      return t;
    }
    case expr_kind::ref1:
      if (!c.has_ref1) type_error(e, "ref' not available here");
      if (c.ref_whole) *c.ref_whole = true;
      return value{value::refusal, static_cast<long>(c.ref1), {}, {}};
    case expr_kind::event: return event_value(e, c);
    case expr_kind::trace: {
      value t{value::trace, 0, {}, {}};
      for (const auto& a : e.args) {
        const auto v = eval(*a, c);
        if (!v) return std::nullopt;
        if (v->kind != value::event) type_error(*a, "trace items must be events");
        t.items.push_back(v->n);
      }
      return t;
    }
    case expr_kind::empty_coll: return value{value::empty_coll, 0, {}, {}};
    case expr_kind::set_lit: {
      value s{value::set, 0, {}, {}};
      for (const auto& a : e.args) {
        const auto v = eval_int(*a, c);
        if (!v) return std::nullopt;
        s.items.push_back(*v);
      }
      std::sort(s.items.begin(), s.items.end());
      s.items.erase(std::unique(s.items.begin(), s.items.end()), s.items.end());
      return s;
    }
    case expr_kind::map_lit:
    case expr_kind::update: {
      value m{value::map, 0, {}, {}};
      std::size_t first = 0;
      if (e.kind == expr_kind::update) {
        const auto base = eval(*e.args[0], c);
        if (!base) return std::nullopt;
        if (base->kind == value::map) m = *base;
        else if (base->kind != value::empty_coll) type_error(e, "update needs a map");
        first = 1;
      }
      for (std::size_t i = first; i + 1 < e.args.size(); i += 2) {
        const auto k = eval_int(*e.args[i], c), v = eval_int(*e.args[i + 1], c);
        if (!k || !v) return std::nullopt;
        auto it = std::lower_bound(m.entries.begin(), m.entries.end(), std::make_pair(*k, LONG_MIN));
        if (it != m.entries.end() && it->first == *k) it->second = *v;
        else m.entries.insert(it, {*k, *v});
      }
      return m;
    }
    case expr_kind::apply: {
      const auto m = eval(*e.args[0], c);
      const auto k = eval_int(*e.args[1], c);
      if (!m || !k) return std::nullopt;
      if (m->kind == value::empty_coll) return std::nullopt;
      if (m->kind != value::map) type_error(e, "application needs a map");
      for (const auto& [key, v] : m->entries)
        if (key == *k) return num_v(v);
      return std::nullopt;
    }
    case expr_kind::dom: {
      const auto m = eval(*e.args[0], c);
      if (!m) return std::nullopt;
      value s{value::set, 0, {}, {}};
      if (m->kind == value::empty_coll) return s;
      if (m->kind != value::map) type_error(e, "dom needs a map");
      for (const auto& kv : m->entries) s.items.push_back(kv.first);
      return s;
    }
    case expr_kind::sum: {
      const auto m = eval(*e.args[0], c);
      if (!m) return std::nullopt;
      long total = 0;
      if (m->kind == value::map) {
        for (const auto& kv : m->entries) total += kv.second;
      } else if (m->kind == value::set) {
        for (long x : m->items) total += x;
      } else if (m->kind != value::empty_coll) {
        type_error(e, "sum needs a map or set");
      }
      return num_v(total);
    }
    case expr_kind::len: {
      const auto t = eval(*e.args[0], c);
      if (!t) return std::nullopt;
      if (t->kind != value::trace) type_error(e, "# needs a trace");
      return num_v(static_cast<long>(t->items.size()));
    }
    case expr_kind::last: {
      const auto t = eval(*e.args[0], c);
      if (!t) return std::nullopt;
      if (t->kind != value::trace) type_error(e, "last needs a trace");
      if (t->items.empty()) return std::nullopt;
      return value{value::event, t->items.back(), {}, {}};
    }
    case expr_kind::neg: {
      const auto v = eval_int(*e.args[0], c);
      if (!v) return std::nullopt;
      return num_v(-*v);
    }
    case expr_kind::lnot: return bool_v(!eval_bool(*e.args[0], c));
    case expr_kind::binary: return binary(e, c);
  }
  return std::nullopt;
}

bool eval_bool(const expr& e, const eval_ctx& c) {
  const auto v = eval(e, c);
  if (!v) return false;
  if (v->kind != value::boolean) type_error(e, "condition is not boolean: " + show_expr(e));
  return v->n != 0;
}

std::optional<long> eval_int(const expr& e, const eval_ctx& c) {
  const auto v = eval(e, c);
  if (!v) return std::nullopt;
  if (v->kind != value::num) type_error(e, "expected an integer: " + show_expr(e));
  return v->n;
}

expr_uses uses(const expr& e, const std::map<std::string, long>& env) {
  expr_uses r;
  auto walk = [&](auto&& self, const expr& x) -> void {
    switch (x.kind) {
      case expr_kind::name:
        if (x.primed) r.st1 = true;
        else if (!env.count(x.name)) r.st = true;
        break;
      case expr_kind::tt: r.tt = true; break;
      case expr_kind::ref1: r.ref1 = true; break;
      default: break;
    }
    for (const auto& a : x.args) self(self, *a);
  };
  walk(walk, e);
  return r;
}

namespace {

const char* op_text(bin_op op) {
  switch (op) {
    case bin_op::add: return "+";
    case bin_op::sub: return "-";
    case bin_op::eq: return "=";
    case bin_op::ne: return "!=";
    case bin_op::lt: return "<";
    case bin_op::le: return "<=";
    case bin_op::gt: return ">";
    case bin_op::ge: return ">=";
    case bin_op::land: return "and";
    case bin_op::lor: return "or";
    case bin_op::implies: return "=>";
    case bin_op::in: return "in";
    case bin_op::notin: return "notin";
    case bin_op::concat: return "^";
  }
  return "?";
}

}  // namespace

std::string show_expr(const expr& e) {
  std::ostringstream o;
  auto list = [&](std::size_t from, const char* sep) {
    for (std::size_t i = from; i < e.args.size(); ++i) o << (i > from ? sep : "") << show_expr(*e.args[i]);
  };
  switch (e.kind) {
    case expr_kind::num: o << e.num; break;
    case expr_kind::boolean: o << (e.num ? "true" : "false"); break;
    case expr_kind::name: o << e.name << (e.primed ? "'" : ""); break;
    case expr_kind::tt: o << "tt"; break;
    case expr_kind::ref1: o << "ref'"; break;
    case expr_kind::event:
      o << e.name;
      for (const auto& a : e.args) o << "." << show_expr(*a);
      break;
    case expr_kind::trace: o << "<"; list(0, ", "); o << ">"; break;
    case expr_kind::empty_coll: o << "{}"; break;
    case expr_kind::set_lit: o << "{"; list(0, ", "); o << "}"; break;
    case expr_kind::map_lit:
    case expr_kind::update: {
      const std::size_t first = e.kind == expr_kind::update ? 1 : 0;
      if (first) o << show_expr(*e.args[0]) << "[";
      else o << "{";
      for (std::size_t i = first; i + 1 < e.args.size(); i += 2)
        o << (i > first ? ", " : "") << show_expr(*e.args[i]) << " |-> " << show_expr(*e.args[i + 1]);
      o << (first ? "]" : "}");
      break;
    }
    case expr_kind::apply: o << show_expr(*e.args[0]) << "(" << show_expr(*e.args[1]) << ")"; break;
    case expr_kind::dom: o << "dom(" << show_expr(*e.args[0]) << ")"; break;
    case expr_kind::sum: o << "sum(" << show_expr(*e.args[0]) << ")"; break;
    case expr_kind::len: o << "#" << show_expr(*e.args[0]); break;
    case expr_kind::last: o << "last(" << show_expr(*e.args[0]) << ")"; break;
    case expr_kind::neg: o << "-" << show_expr(*e.args[0]); break;
    case expr_kind::lnot: o << "not " << show_expr(*e.args[0]); break;
    case expr_kind::binary:
      o << "(" << show_expr(*e.args[0]) << " " << op_text(e.op) << " " << show_expr(*e.args[1]) << ")";
      break;
  }
  return o.str();
}

}  // namespace rdc
