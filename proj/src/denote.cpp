#include <algorithm>
#include <sstream>

#include "rdc/circus.hpp"
#include "rdc/health.hpp"

namespace rdc {

std::pair<std::string, std::vector<long>> split_call(const std::string& s) {
  const auto open = s.find('(');
  if (open == std::string::npos) return {s, {}};
  if (s.back() != ')') throw error(errc::invalid_argument, "malformed name: " + s);
  std::vector<long> args;
  std::stringstream in(s.substr(open + 1, s.size() - open - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      args.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw error(errc::invalid_argument, "argument is not an integer: " + item);
    }
  }
  return {s.substr(0, open), args};
}

rr pred_rr(const universe_ptr& up, rr_shape shape, const expr& e, const std::map<std::string, long>& env) {
  const universe& u = *up;
  const expr_uses use = uses(e, env);
  if (use.st1 && !(shape & d_st1)) throw error(errc::invalid_argument, "final state used outside a postcondition: " + show_expr(e));
  if (use.ref1 && !(shape & d_ref1)) throw error(errc::invalid_argument, "ref' used outside a pericondition: " + show_expr(e));
  // Evaluate over the narrowest shape the predicate needs, then widen.
  const rr_shape narrow = (use.st1 ? d_st1 : 0u) | (use.ref1 ? d_ref1 : 0u);
  rr r(up, narrow);
  const int ns = u.n_states(), nt = u.n_traces(), nr = u.n_refusals();
  eval_ctx c;
  c.u = &u;
  c.env = &env;
  std::vector<char> table(static_cast<std::size_t>(nr));
  for (int st = 0; st < ns; ++st)
    for (int tt = 0; tt < nt; ++tt) {
      c.st = st;
      c.tt = tt;
      for (int st1 = 0; st1 < (use.st1 ? ns : 1); ++st1) {
        c.st1 = use.st1 ? st1 : -1;
        if (!use.ref1) {
          if (eval_bool(e, c)) r.insert({st, tt, st1, 0});
          continue;
        }
        // Discover which events the predicate inspects and tabulate over
        // subsets of those only; the other events are never read.
        c.has_ref1 = true;
        unsigned known = 0, queried = 0;
        bool whole = false;
        c.ref_queries = &queried;
        c.ref_whole = &whole;
        bool settled = false;
        while (!settled) {
          settled = true;
          for (unsigned sub = known;; sub = (sub - 1) & known) {
            queried = 0;
            c.ref1 = sub;
            table[sub] = eval_bool(e, c);
            if (whole) break;
            if (queried & ~known) {
              known |= queried;
              settled = false;
              break;
            }
            if (sub == 0) break;
          }
          if (whole) break;
        }
        for (int f = 0; f < nr; ++f) {
          bool v;
          if (whole) {
            c.ref1 = static_cast<unsigned>(f);
            v = eval_bool(e, c);
          } else {
            v = table[static_cast<unsigned>(f) & known];
          }
          if (v) r.insert({st, tt, st1, static_cast<unsigned>(f)});
        }
        c.has_ref1 = false;
        c.ref_queries = nullptr;
        c.ref_whole = nullptr;
      }
    }
  return reshape(r, narrow | shape);
}

denoter::denoter(model_spec spec, int bound_override) : spec_(std::move(spec)) {
  if (bound_override > 0) spec_.config.bound = bound_override;
  u_ = universe::make(spec_.config);
}

const merge_rel& denoter::interleaving() {
  if (!merge_) merge_ = interleave_merge(u_);
  return *merge_;
}

bool denoter::is_known(const std::string& s) const {
  const auto name = split_call(s).first;
  return spec_.find_proc(name) || spec_.find_contract(name);
}

contract denoter::resolve(const std::string& s) {
  const auto [name, args] = split_call(s);
  if (spec_.find_proc(name)) return process(name, args);
  if (spec_.find_contract(name)) return contract_spec(name, args);
  throw error(errc::undeclared, "no process or contract named " + name);
}

namespace {

std::map<std::string, long> bind_params(const std::string& name, const std::vector<std::string>& params,
                                        const std::vector<long>& args) {
  if (params.size() != args.size())
    throw error(errc::invalid_argument, name + " takes " + std::to_string(params.size()) + " arguments");
  std::map<std::string, long> env;
  for (std::size_t i = 0; i < params.size(); ++i) env[params[i]] = args[i];
  return env;
}

}  // namespace

contract denoter::process(const std::string& name, const std::vector<long>& args) {
  const proc_def* d = spec_.find_proc(name);
  if (!d) throw error(errc::undeclared, "no process named " + name);
  if (std::find(active_.begin(), active_.end(), name) != active_.end())
    throw error(errc::invalid_argument, "recursive reference to " + name + "; recursion must use mu X . P ; X");
  const auto env = bind_params(name, d->params, args);
  active_.push_back(name);
  try {
    contract c = denote(*d->body, env);
    active_.pop_back();
    return c;
  } catch (...) {
    active_.pop_back();
    throw;
  }
}

contract denoter::contract_spec(const std::string& name, const std::vector<long>& args) {
  const contract_def* d = spec_.find_contract(name);
  if (!d) throw error(errc::undeclared, "no contract named " + name);
  const auto env = bind_params(name, d->params, args);
  return {pred_rr(u_, cond_shape, *d->pre, env), pred_rr(u_, peri_shape, *d->peri, env),
          pred_rr(u_, post_shape, *d->post, env)};
}

std::function<bool(int)> denoter::state_test(const expr& e, const std::map<std::string, long>& env) const {
  const expr_uses use = uses(e, env);
  if (use.st1 || use.tt || use.ref1) throw error(errc::invalid_argument, "condition may only read the state: " + show_expr(e));
  const universe_ptr u = u_;
  std::vector<char> value(static_cast<std::size_t>(u->n_states()));
  eval_ctx c;
  c.u = u.get();
  c.env = &env;
  for (int st = 0; st < u->n_states(); ++st) {
    c.st = st;
    value[static_cast<std::size_t>(st)] = eval_bool(e, c);
  }
  return [value](int st) { return value[static_cast<std::size_t>(st)] != 0; };
}

std::vector<std::pair<std::vector<expr_ptr>, std::map<std::string, long>>> denoter::expand_inputs(
    const proc& p, const std::map<std::string, long>& env) const {
  const auto ch = u_->channel_index(p.name);
  if (!ch) throw error(errc::undeclared, "undeclared channel: " + p.name);
  const channel_decl& decl = spec_.config.channels[static_cast<std::size_t>(*ch)];
  if (p.fields.size() != decl.params.size())
    throw error(errc::invalid_argument, "channel " + p.name + " takes " + std::to_string(decl.params.size()) + " fields");
  std::vector<std::pair<std::vector<expr_ptr>, std::map<std::string, long>>> out{{{}, env}};
  for (std::size_t i = 0; i < p.fields.size(); ++i) {
    std::vector<std::pair<std::vector<expr_ptr>, std::map<std::string, long>>> next;
    for (auto& [fields, e] : out) {
      if (p.fields[i].value) {
        auto f = fields;
        f.push_back(p.fields[i].value);
        next.emplace_back(f, e);
        continue;
      }
      for (int v = decl.params[i].lo; v <= decl.params[i].hi; ++v) {
        auto lit = std::make_shared<expr>();
        lit->kind = expr_kind::num;
        lit->num = v;
        auto f = fields;
        f.push_back(lit);
        auto e2 = e;
        e2[p.fields[i].input] = v;
        next.emplace_back(f, e2);
      }
    }
    out = std::move(next);
  }
  return out;
}

contract denoter::prefix_event(const proc& p, const std::vector<expr_ptr>& fields, const std::map<std::string, long>& env) {
  const universe& u = *u_;
  auto ev = std::make_shared<expr>();
  ev->kind = expr_kind::event;
  ev->name = p.name;
  ev->args = fields;
  if (uses(*ev, env).tt) throw error(errc::invalid_argument, "event fields may only read the state");
  // Event offered from each initial state; -1 where a field is undefined,
  // which leaves no behaviour at that state.
  std::vector<int> offered(static_cast<std::size_t>(u.n_states()), -1);
  eval_ctx c;
  c.u = &u;
  c.env = &env;
  for (int st = 0; st < u.n_states(); ++st) {
    c.st = st;
    const auto v = eval(*ev, c);
    if (v) offered[static_cast<std::size_t>(st)] = static_cast<int>(v->n);
  }
  const int eps = u.traces().empty();
  rr peri = rr::from(u_, peri_shape, [&](const rr_row& r) {
    const int e = offered[static_cast<std::size_t>(r.st)];
    return e >= 0 && r.tt == eps && !((r.ref1 >> e) & 1u);
  });
  rr post = rr::from(u_, post_shape, [&](const rr_row& r) {
    const int e = offered[static_cast<std::size_t>(r.st)];
    return e >= 0 && r.tt == u.traces().single(e) && r.st1 == r.st;
  });
  return {true_r(u_), peri, post};
}

namespace {

// Writes `v` into the slots of variable `var`; false when it does not fit.
bool store(const universe& u, int var, const value& v, std::vector<int>& slots) {
  const var_decl& d = u.config().vars[static_cast<std::size_t>(var)];
  const int base = u.slot_of(var);
  if (d.kind == var_kind::map) {
    if (v.kind != value::map && v.kind != value::empty_coll) throw error(errc::invalid_argument, "assigning a non-map to " + d.name);
    for (int k = 0; k < d.keys.size(); ++k) slots[static_cast<std::size_t>(base + k)] = absent;
    for (const auto& [k, x] : v.entries) {
      if (!d.keys.contains(static_cast<int>(k))) return false;
      slots[static_cast<std::size_t>(base + k - d.keys.lo)] = static_cast<int>(x);
    }
    return true;
  }
  const value::kind_t want = d.kind == var_kind::boolean ? value::boolean : value::num;
  if (v.kind != want) throw error(errc::invalid_argument, "assignment of the wrong type to " + d.name);
  slots[static_cast<std::size_t>(base)] = static_cast<int>(v.n);
  return true;
}

}  // namespace

contract denoter::assign(const proc& p, const std::map<std::string, long>& env) {
  const universe& u = *u_;
  const auto var = u.var_index(p.name);
  if (!var) throw error(errc::undeclared, "undeclared variable: " + p.name);
  const expr& rhs = *p.exprs[0];
  if (uses(rhs, env).tt || uses(rhs, env).st1 || uses(rhs, env).ref1)
    throw error(errc::invalid_argument, "assigned value may only read the state");
  std::vector<std::optional<int>> next(static_cast<std::size_t>(u.n_states()));
  eval_ctx c;
  c.u = &u;
  c.env = &env;
  for (int st = 0; st < u.n_states(); ++st) {
    c.st = st;
    const auto v = eval(rhs, c);
    if (!v) continue;
    std::vector<int> slots = u.slots(st);
    if (store(u, *var, *v, slots)) next[static_cast<std::size_t>(st)] = u.encode(slots);
  }
  return assigns_R(u_, [next](int st) { return next[static_cast<std::size_t>(st)]; });
}

contract denoter::iassign(const proc& p, const std::map<std::string, long>& env) {
  const universe& u = *u_;
  const auto var = u.var_index(p.name);
  if (!var) throw error(errc::undeclared, "undeclared variable: " + p.name);
  const var_decl& d = u.config().vars[static_cast<std::size_t>(*var)];
  if (d.kind != var_kind::map) throw error(errc::invalid_argument, "indexed assignment to a non-map: " + p.name);
  std::vector<char> defined(static_cast<std::size_t>(u.n_states()));
  std::vector<std::optional<int>> next(static_cast<std::size_t>(u.n_states()));
  eval_ctx c;
  c.u = &u;
  c.env = &env;
  for (int st = 0; st < u.n_states(); ++st) {
    c.st = st;
    const auto k = eval_int(*p.exprs[0], c);
    if (!k || !d.keys.contains(static_cast<int>(*k))) continue;
    const int slot = u.slot_of(*var, static_cast<int>(*k) - d.keys.lo);
    std::vector<int> slots = u.slots(st);
    if (slots[static_cast<std::size_t>(slot)] == absent) continue;
    defined[static_cast<std::size_t>(st)] = 1;
    const auto v = eval_int(*p.exprs[1], c);
    if (!v) continue;
    slots[static_cast<std::size_t>(slot)] = static_cast<int>(*v);
    next[static_cast<std::size_t>(st)] = u.encode(slots);
  }
  rr pre = state_cond(u_, [defined](int st) { return defined[static_cast<std::size_t>(st)] != 0; });
  rr post = assigns_r(u_, [next](int st) { return next[static_cast<std::size_t>(st)]; });
  return {pre, false_r(u_, peri_shape), post};
}

contract denoter::denote(const proc& p, const std::map<std::string, long>& env) {
  switch (p.kind) {
    case proc_kind::skip: return skip_srd(u_);
    case proc_kind::stop: return stop(u_);
    case proc_kind::chaos: return chaos(u_);
    case proc_kind::miracle: return miracle(u_);
    case proc_kind::prefix: {
      std::vector<contract> branches;
      for (const auto& [fields, e] : expand_inputs(p, env))
        branches.push_back(seq(prefix_event(p, fields, e), denote(*p.kids[0], e)));
      return branches.size() == 1 ? branches[0] : extchoice(branches);
    }
    case proc_kind::guard: return cond(denote(*p.kids[0], env), state_test(*p.exprs[0], env), stop(u_));
    case proc_kind::assign: return assign(p, env);
    case proc_kind::iassign: return iassign(p, env);
    case proc_kind::seq: {
      contract c = denote(*p.kids[0], env);
      for (std::size_t i = 1; i < p.kids.size(); ++i) c = seq(c, denote(*p.kids[i], env));
      return c;
    }
    case proc_kind::extchoice:
    case proc_kind::intchoice: {
      std::vector<contract> family;
      for (const auto& k : p.kids) family.push_back(denote(*k, env));
      return p.kind == proc_kind::extchoice ? extchoice(family) : intchoice(family);
    }
    case proc_kind::interleave: {
      contract c = denote(*p.kids[0], env);
      for (std::size_t i = 1; i < p.kids.size(); ++i) c = rd_par(c, denote(*p.kids[i], env), interleaving());
      return c;
    }
    case proc_kind::cond:
      return cond(denote(*p.kids[0], env), state_test(*p.exprs[0], env), denote(*p.kids[1], env));
    case proc_kind::mu: return tail_rec(denote(*p.kids[0], env));
    case proc_kind::ref: {
      std::vector<long> args;
      eval_ctx c;
      c.u = u_.get();
      c.env = &env;
      for (const auto& a : p.exprs) {
        if (uses(*a, env).st) throw error(errc::invalid_argument, "process arguments must be constants");
        const auto v = eval_int(*a, c);
        if (!v) throw error(errc::invalid_argument, "undefined process argument");
        args.push_back(*v);
      }
      return process(p.name, args);
    }
  }
  throw error(errc::invalid_argument, "unknown process node");
}

// ---------------------------------------------------------------- monolithic route

namespace {

// P with wait and ok′ fixed, as a relation over the remaining variables.
rel fixed(const rel& p, bool ok1) {
  return subst(p, [ok1](binding& b) {
    b.u.wait = false;
    b.p.ok = ok1;
  });
}

// Rs((ok ∧ ¬Pᶠ ∧ ¬Qᶠ) ⇒ ok′ ∧ ((Pᵗ ∧ Qᵗ) ◁ tr′ = tr ∧ wait′ ▷ (Pᵗ ∨ Qᵗ)))
rel extchoice_full(const rel& p, const rel& q) {
  const rel pf = fixed(p, false), qf = fixed(q, false), pt = fixed(p, true), qt = fixed(q, true);
  const rel d = rel::from(p.uni_ptr(), full_alpha, [&](const binding& b) {
    if (!b.u.ok || pf.contains(b) || qf.contains(b)) return true;
    if (!b.p.ok) return false;
    if (b.p.tr == b.u.tr && b.p.wait) return pt.contains(b) && qt.contains(b);
    return pt.contains(b) || qt.contains(b);
  });
  return apply(health::Rs, d);
}

}  // namespace

rel denoter::resolve_full(const std::string& s) {
  const auto [name, args] = split_call(s);
  const proc_def* d = spec_.find_proc(name);
  if (!d) return expand(resolve(s));
  if (std::find(active_.begin(), active_.end(), name) != active_.end())
    throw error(errc::invalid_argument, "recursive reference to " + name + "; recursion must use mu X . P ; X");
  const auto env = bind_params(name, d->params, args);
  active_.push_back(name);
  try {
    rel r = denote_full(*d->body, env);
    active_.pop_back();
    return r;
  } catch (...) {
    active_.pop_back();
    throw;
  }
}

rel denoter::denote_full(const proc& p, const std::map<std::string, long>& env) {
  switch (p.kind) {
    case proc_kind::skip:
    case proc_kind::stop:
    case proc_kind::chaos:
    case proc_kind::miracle:
    case proc_kind::assign:
    case proc_kind::iassign:
      return expand(denote(p, env));
    case proc_kind::prefix: {
      std::vector<rel> branches;
      for (const auto& [fields, e] : expand_inputs(p, env))
        branches.push_back(seq_compose(expand(prefix_event(p, fields, e)), denote_full(*p.kids[0], e)));
      rel r = branches[0];
      for (std::size_t i = 1; i < branches.size(); ++i) r = extchoice_full(r, branches[i]);
      return r;
    }
    case proc_kind::guard:
    case proc_kind::cond: {
      const auto test = state_test(*p.exprs[0], env);
      const rel b = rel::from(u_, full_alpha, [&](const binding& x) { return test(x.u.st); });
      const rel other = p.kind == proc_kind::guard ? expand(stop(u_)) : denote_full(*p.kids[1], env);
      return cond(denote_full(*p.kids[0], env), b, other);
    }
    case proc_kind::seq:
    case proc_kind::extchoice:
    case proc_kind::intchoice:
    case proc_kind::interleave: {
      rel r = denote_full(*p.kids[0], env);
      for (std::size_t i = 1; i < p.kids.size(); ++i) {
        const rel k = denote_full(*p.kids[i], env);
        switch (p.kind) {
          case proc_kind::seq: r = seq_compose(r, k); break;
          case proc_kind::extchoice: r = extchoice_full(r, k); break;
          case proc_kind::intchoice: r = disj(r, k); break;
          default: r = par_by_merge(r, k, interleaving()); break;
        }
      }
      return r;
    }
    case proc_kind::mu: {
      const rel body = denote_full(*p.kids[0], env);
      return mu([&](const rel& x) { return seq_compose(body, apply(health::SRD, x)); }, u_, full_alpha);
    }
    case proc_kind::ref: {
      std::ostringstream o;
      o << p.name;
      if (!p.exprs.empty()) {
        eval_ctx c;
        c.u = u_.get();
        c.env = &env;
        o << "(";
        for (std::size_t i = 0; i < p.exprs.size(); ++i) {
          const auto v = eval_int(*p.exprs[i], c);
          if (!v) throw error(errc::invalid_argument, "undefined process argument");
          o << (i ? "," : "") << *v;
        }
        o << ")";
      }
      return resolve_full(o.str());
    }
  }
  throw error(errc::invalid_argument, "unknown process node");
}

}  // namespace rdc
