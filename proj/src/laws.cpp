#include "rdc/laws.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "rdc/health.hpp"
#include "rdc/sampling.hpp"

namespace rdc {

bool suite_report::holds() const {
  for (const auto& l : laws)
    if (!l.holds) return false;
  return true;
}

const law_result* suite_report::find(const std::string& name) const {
  for (const auto& l : laws)
    if (l.name == name) return &l;
  return nullptr;
}

universe_ptr law_universe(int bound) {
  universe_config cfg;
  cfg.channels = {{"a", {}}, {"b", {}}};
  cfg.vars = {{"x", var_kind::boolean, {0, 1}, {}}};
  cfg.bound = bound;
  return universe::make(cfg);
}

universe_ptr single_event_universe(int bound) {
  universe_config cfg;
  cfg.channels = {{"a", {}}};
  cfg.bound = bound;
  return universe::make(cfg);
}

namespace {

// Accumulates checks per law name in first-use order.
class recorder {
 public:
  explicit recorder(suite_report& r) : rep_(r) {}

  template <class W>
  void check(const std::string& name, bool ok, W&& witness) {
    law_result& l = law(name);
    ++l.checked;
    if (!ok && l.holds) {
      l.holds = false;
      l.witness = witness();
    }
  }
  void check(const std::string& name, bool ok) {
    check(name, ok, [] { return std::string(); });
  }
  // Records that a check threw; the message is the witness.
  void fail(const std::string& name, const std::string& why) {
    check(name, false, [&] { return why; });
  }

 private:
  law_result& law(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return rep_.laws[it->second];
    index_[name] = rep_.laws.size();
    rep_.laws.push_back({name, true, 0, {}});
    return rep_.laws.back();
  }
  suite_report& rep_;
  std::map<std::string, std::size_t> index_;
};

std::string rel_diff(const rel& a, const rel& b) {
  bits d = a.raw();
  d ^= b.raw();
  std::size_t i = d.next(0);
  if (i >= d.size()) return "equal";
  const char* where = a.raw().test(i) ? "left only: " : "right only: ";
  return where + show_binding(a.uni(), a.alphabet(), a.binding_at(i));
}

std::string rr_diff(const rr& a, const rr& b) {
  const rr_shape s = a.shape() | b.shape();
  const rr x = reshape(a, s), y = reshape(b, s);
  bits d = x.raw();
  d ^= y.raw();
  std::size_t i = d.next(0);
  if (i >= d.size()) return "equal";
  const char* where = x.raw().test(i) ? "left only: " : "right only: ";
  return where + show_row(a.uni(), s, x.row_at(i));
}

std::string contract_diff(const contract& a, const contract& b) {
  if (!(a.pre() == b.pre())) return "pre " + rr_diff(a.pre(), b.pre());
  if (!(a.peri() == b.peri())) return "peri " + rr_diff(a.peri(), b.peri());
  if (!(a.post() == b.post())) return "post " + rr_diff(a.post(), b.post());
  return "equal";
}

int samples_or(const law_options& o, int dflt) { return o.samples > 0 ? o.samples : dflt; }

using strace = seq_trace<int>;

std::vector<strace> all_traces(int events, int max_len) {
  std::vector<strace> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == max_len) continue;
    for (int e = 0; e < events; ++e) {
      strace t = out[i];
      t.push_back(e);
      out.push_back(t);
    }
  }
  return out;
}

std::string show_strace(const strace& t) {
  std::string s = "<";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::string(1, static_cast<char>('a' + t[i]));
  return s + ">";
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------- trace

void trace_suite(recorder& rec, const law_options&) {
  const auto ts = all_traces(2, 3);
  const strace eps = empty<strace>();
  for (const auto& x : ts) {
    auto w1 = [&] { return show_strace(x); };
    rec.check("TA2 unit", concat(eps, x) == x && concat(x, eps) == x, w1);
    rec.check("measure empty", measure(eps) == 0);
    rec.check("measure positive", x == eps || measure(x) > 0, w1);
    for (const auto& y : ts) {
      auto w2 = [&] { return show_strace(x) + " " + show_strace(y); };
      rec.check("TA5 empty sum", !(concat(x, y) == eps) || x == eps, w2);
      rec.check("measure additive", measure(concat(x, y)) == measure(x) + measure(y), w2);
      bool found = false;
      for (const auto& z : ts) found = found || concat(x, z) == y;
      rec.check("prefix as extension", prefix_le(x, y) == found, w2);
      if (prefix_le(x, y)) rec.check("subtract inverse", concat(x, subtract(y, x)) == y, w2);
      const auto inter = interleavings(x, y);
      const long bound = binomial(static_cast<int>(x.size() + y.size()), static_cast<int>(x.size()));
      bool disjoint = true;
      for (int e : x)
        for (int f : y) disjoint = disjoint && e != f;
      rec.check("interleaving count", static_cast<long>(inter.size()) <= bound &&
                                          (!disjoint || static_cast<long>(inter.size()) == bound), w2);
      for (const auto& z : ts) {
        auto w3 = [&] { return show_strace(x) + " " + show_strace(y) + " " + show_strace(z); };
        rec.check("TA1 associativity", concat(concat(x, y), z) == concat(x, concat(y, z)), w3);
        if (concat(x, y) == concat(x, z)) rec.check("TA3 left cancellation", y == z, w3);
        if (concat(x, z) == concat(y, z)) rec.check("TA4 right cancellation", x == y, w3);
      }
    }
  }
  // The indexed trace space agrees with the sequence operations.
  const trace_space sp(2, 3);
  for (int s = 0; s < sp.size(); ++s)
    for (int t = 0; t < sp.size(); ++t) {
      const strace& x = sp.items(s);
      const strace& y = sp.items(t);
      auto w = [&] { return show_strace(x) + " " + show_strace(y); };
      const int c = sp.concat(s, t);
      rec.check("indexed concat", x.size() + y.size() > 3 ? c < 0 : sp.items(c) == concat(x, y), w);
      rec.check("indexed prefix", sp.prefix_le(s, t) == prefix_le(x, y), w);
      if (sp.prefix_le(s, t)) rec.check("indexed subtract", sp.items(sp.subtract(t, s)) == subtract(y, x), w);
    }
}

// ---------------------------------------------------------------- relational

void relational_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 100);
  std::vector<rel> rs;
  for (int i = 0; i < n; ++i) rs.push_back(smp.relation(full_alpha, 0.02 + 0.1 * smp.coin()));
  const rel ii = skip_rel(u, full_alpha), f = rel::top(u, full_alpha);
  for (int i = 0; i < n; ++i) {
    const rel& p = rs[static_cast<std::size_t>(i)];
    const rel& q = rs[static_cast<std::size_t>((i + 1) % n)];
    const rel& r = rs[static_cast<std::size_t>((i + 2) % n)];
    auto w = [&] { return "sample " + std::to_string(i); };
    rec.check("identity", seq_compose(p, ii) == p && seq_compose(ii, p) == p, w);
    rec.check("annihilation", seq_compose(p, f) == f && seq_compose(f, p) == f, w);
    rec.check("associativity", seq_compose(seq_compose(p, q), r) == seq_compose(p, seq_compose(q, r)),
              [&] { return w() + ": " + rel_diff(seq_compose(seq_compose(p, q), r), seq_compose(p, seq_compose(q, r))); });
    const auto bs = smp.state_predicate();
    const rel b = rel::from(u, full_alpha, [&](const binding& x) { return bs(x.u.st) != x.u.ok; });
    rec.check("conditional right distribution",
              seq_compose(cond(p, b, q), r) == cond(seq_compose(p, r), b, seq_compose(q, r)), w);
    const std::vector<rel> fam{p, q, r};
    std::vector<rel> left, right;
    for (const auto& x : fam) {
      left.push_back(seq_compose(x, r));
      right.push_back(seq_compose(p, x));
    }
    rec.check("choice left distribution", seq_compose(inf(fam), r) == inf(left), w);
    rec.check("choice right distribution", seq_compose(p, inf(fam)) == inf(right), w);
    rec.check("lattice lower bound", refined_by(inf(fam), p) && refined_by(inf(fam), q), w);
    rec.check("lattice upper bound", refined_by(p, sup(fam)) && refined_by(q, sup(fam)), w);
    // Any common lower bound of the family is refined by its infimum.
    const rel lb = disj(inf(fam), smp.relation(full_alpha, 0.02));
    rec.check("lattice greatest lower bound", refined_by(lb, inf(fam)), w);
  }
  // Fixed points on the state alphabet.
  const rel top = rel::top(u, state_alpha), bot = rel::bottom(u, state_alpha);
  rec.check("mu identity is bottom", mu([](const rel& x) { return x; }, u, state_alpha) == bot);
  rec.check("nu identity is top", nu([](const rel& x) { return x; }, u, state_alpha) == top);
  for (int i = 0; i < n; ++i) {
    const rel p = smp.relation(state_alpha), q = smp.relation(state_alpha);
    rec.check("mu constant", mu([&](const rel&) { return p; }, u, state_alpha) == p);
    const rel_fn step = [&](const rel& x) { return disj(p, seq_compose(q, x)); };
    const rel m = mu(step, u, state_alpha), v = nu(step, u, state_alpha);
    rec.check("mu is a fixed point", step(m) == m);
    rec.check("nu is a fixed point", step(v) == v);
    rec.check("mu weakest", refined_by(m, v));
    // Kleene: the chain from false reaches nu.
    rel k = top;
    for (int j = 0; j < 64; ++j) k = step(k);
    rec.check("Kleene chain", k == v);
  }
  // x := 1 ; x := x + 1 saturating at the domain gives the composed substitution.
  for (int i = 0; i < n; ++i) {
    const state_fn s1 = smp.total_state_fn(), s2 = smp.total_state_fn();
    const rel lhs = seq_compose(assign_rel(u, state_alpha, s1), assign_rel(u, state_alpha, s2));
    const rel rhs = assign_rel(u, state_alpha, [&](int st) { return s2(*s1(st)); });
    rec.check("assignment composition", lhs == rhs);
  }
  rec.check("skip is identity assignment",
            skip_rel(u, full_alpha) == assign_rel(u, full_alpha, [](int s) { return std::optional<int>(s); }));
}

// ---------------------------------------------------------------- healthiness

void healthiness_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 50);
  std::vector<rel> rs;
  for (int i = 0; i < n; ++i) rs.push_back(smp.relation(full_alpha, 0.05 + 0.5 * smp.coin()));
  for (health h : {health::SRD, health::NSRD, health::RR, health::RC, health::Rs}) {
    const meta_report m = check_meta(h, rs, opt.seed);
    const std::string name = health_name(h);
    const std::string why = m.failures.empty() ? std::string() : m.failures.front();
    rec.check(name + " idempotent", m.idempotent, [&] { return why; });
    rec.check(name + " monotone", m.monotone, [&] { return why; });
    rec.check(name + " continuous", m.continuous, [&] { return why; });
  }
  rec.check("R1 R2c commute", commutes(health::R1, health::R2c, rs));
  rel w;
  rec.check("H1 R1 do not commute", !commutes(health::H1, health::R1, rs, &w));
  rec.check("R3h R2c commute", commutes(health::R3h, health::R2c, rs));
  rec.check("R3h R1 commute", commutes(health::R3h, health::R1, rs));

  const auto& ts = u->traces();
  for (int i = 0; i < n; ++i) {
    const rel& p = rs[static_cast<std::size_t>(i)];
    auto wi = [&] { return "sample " + std::to_string(i); };
    // Trace contribution form of R1 ∘ R2c.
    const rel lhs = apply(health::R1, apply(health::R2c, p));
    const rel rhs = rel::from(u, full_alpha, [&](const binding& b) {
      if (!ts.prefix_le(b.u.tr, b.p.tr)) return false;
      binding c = b;
      c.u.tr = ts.empty();
      c.p.tr = ts.subtract(b.p.tr, b.u.tr);
      return p.contains(c);
    });
    rec.check("R1 R2c trace contribution", lhs == rhs, [&] { return wi() + ": " + rel_diff(lhs, rhs); });
    const rel rs1 = apply(health::Rs, p);
    const rel rs2 = apply(health::R3h, apply(health::R2c, apply(health::R1, p)));
    rec.check("Rs order irrelevant", rs1 == rs2, wi);
    const rel s = apply(health::SRD, p);
    const rel d3 = apply(health::RD3, s);
    rec.check("RD3 subsumes RD2",
              apply(health::RD2, d3) == d3 && apply(health::RD3, apply(health::RD2, s)) == d3, wi);
    const rel rrp = apply(health::RR, p);
    rec.check("RC1 iff RC2 on RR", is_healthy(health::RC1, rrp) == is_healthy(health::RC2, rrp), wi);
    const rel c = to_full(smp.condition());
    rec.check("RC1 iff RC2 on RR", is_healthy(health::RC1, c) == is_healthy(health::RC2, c));
    rec.check("RC condition is RC1", is_healthy(health::RC1, c) && is_healthy(health::RC2, c));
  }

  // Design correspondences on the design alphabet.
  for (int i = 0; i < n; ++i) {
    const rel p = smp.relation(design_alpha);
    auto fix = [&](const rel& x, bool ok, bool ok1) {
      return rel::from(u, state_alpha, [&](const binding& b) {
        binding c = b;
        c.u.ok = ok;
        c.p.ok = ok1;
        return x.contains(c);
      });
    };
    const rel pf = fix(p, true, false), pt = fix(p, true, true);
    rec.check("H as design", apply(health::H, p) == make_design(neg(pf), pt));
    const rel some_f = exists(pf, primed(v_st));
    rec.check("N as design", apply(health::N, p) == make_design(neg(some_f), pt));
    const rel h2 = apply(health::H2, p);
    for (const rel& x : {p, h2}) {
      const bool h2_fixed = is_healthy(health::H2, x);
      const rel xf_all = rel::from(u, design_alpha, [&](const binding& b) {
        binding c = b;
        c.p.ok = false;
        return x.contains(c);
      });
      const rel xt_all = rel::from(u, design_alpha, [&](const binding& b) {
        binding c = b;
        c.p.ok = true;
        return x.contains(c);
      });
      rec.check("H2 characterisation", h2_fixed == xf_all.raw().subset_of(xt_all.raw()));
    }
    const rel n = apply(health::N, p);
    rec.check("H3 precondition is a condition", exists(pre_D(n), primed(v_st)) == pre_D(n));
  }

  // Theory lattice and the continuous-theory fixed point law.
  const theory_bounds srd = theory_lattice(health::SRD, u);
  rec.check("SRD top is Miracle", srd.top == expand(miracle(u)));
  rec.check("SRD bottom is Chaos", srd.bottom == expand(chaos(u)));
  rec.check("RR bottom is true_r", theory_lattice(health::RR, u).bottom == to_full(true_r(u)));
  rec.check("RR top is false", theory_lattice(health::RR, u).top == rel::top(u, full_alpha));
  for (int i = 0; i < 10; ++i) {
    const rel c = expand(smp.contract_sample(1));
    const rel_fn g = [&](const rel& x) { return apply(health::SRD, seq_compose(c, x)); };
    const rel theory_mu = iterate(g, srd.bottom);
    const rel plain_mu = mu([&](const rel& x) { return g(apply(health::SRD, x)); }, u, full_alpha);
    rec.check("theory fixed point", theory_mu == plain_mu, [&] { return rel_diff(theory_mu, plain_mu); });
  }
}

// ---------------------------------------------------------------- wp

void wp_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 100);
  for (int i = 0; i < n; ++i) {
    const rr p = smp.reactive(post_shape, 1), q = smp.reactive(post_shape, 1);
    const rr r = smp.condition(), s = smp.condition();
    auto w = [&] { return "sample " + std::to_string(i); };
    rec.check("wp true", wp_r(p, true_r(u)) == true_r(u), w);
    rec.check("wp conjunction", wp_r(p, conj_r(r, s)) == conj_r(wp_r(p, r), wp_r(p, s)), w);
    const auto b = smp.state_predicate();
    const rr g = state_cond(u, b), ng = neg_r(g);
    const rr pc = disj_r(conj_r(g, p), conj_r(ng, q));
    rec.check("wp conditional", wp_r(pc, r) == disj_r(conj_r(g, wp_r(p, r)), conj_r(ng, wp_r(q, r))), w);
    rec.check("wp sequence", wp_r(rr_seq(p, q), r) == wp_r(p, wp_r(q, r)),
              [&] { return w() + ": " + rr_diff(wp_r(rr_seq(p, q), r), wp_r(p, wp_r(q, r))); });
    rec.check("wp skip", wp_r(ii_r(u), r) == r, w);
    const state_fn sigma = smp.total_state_fn();
    rec.check("wp assignment", wp_r(assigns_r(u, sigma), r) == subst_state(r, sigma), w);
    rec.check("wp false", wp_r(false_r(u, post_shape), r) == true_r(u), w);
    rec.check("wp choice", wp_r(disj_r(p, q), r) == conj_r(wp_r(p, r), wp_r(q, r)), w);
    const rr t = smp.reactive(post_shape, 1);
    rec.check("wp indexed choice", wp_r(disj_r(disj_r(p, q), t), r) == conj_r(conj_r(wp_r(p, r), wp_r(q, r)), wp_r(t, r)), w);
    rec.check("wp literal form", wp_r(p, r) == wp_r_literal(p, r), w);
    rec.check("wp is a condition", is_rc(wp_r(p, r)), w);
    // Reactive Boolean algebra on contribution form.
    rec.check("double negation", neg_r(neg_r(p)) == p, w);
    rec.check("De Morgan", neg_r(conj_r(p, q)) == disj_r(neg_r(p), neg_r(q)), w);
    rec.check("distributivity", conj_r(p, disj_r(q, t)) == disj_r(conj_r(p, q), conj_r(p, t)), w);
    rec.check("complement", disj_r(p, neg_r(p)) == true_r(u, post_shape) && conj_r(p, neg_r(p)).empty(), w);
    const rc_check c = check_rc(r);
    rec.check("RC forms agree", c.agree() && c.prefix_closed, w);
    // Oracle: contribution composition against the full model.
    rec.check("rr_seq oracle", from_full(seq_compose(to_full(p), to_full(q)), post_shape) == rr_seq(p, q), w);
    rec.check("contribution round trip", from_full(to_full(p), post_shape) == p, w);
  }
  rec.check("to_full true_r", to_full(true_r(u)) == apply(health::RR, rel::bottom(u, full_alpha)));
  // ¬_r(⟨a⟩ ≤ tt) is a reactive condition; {⟨a⟩} alone is not.
  const int ta = u->traces().single(0);
  const rr after_a = rr::from(u, cond_shape, [&](const rr_row& r) { return u->traces().prefix_le(ta, r.tt); });
  rec.check("constrained prefix is RC", is_rc(neg_r(after_a)));
  const rr only_a = rr::from(u, cond_shape, [&](const rr_row& r) { return r.tt == ta; });
  rec.check("missing empty prefix is not RC", !is_rc(only_a));
  rec.check("wp rejects non-conditions", [&] {
    try {
      wp_r(ii_r(u), only_a);
      return false;
    } catch (const error& e) {
      return e.code() == errc::not_rc;
    }
  }());
}

// ---------------------------------------------------------------- rd laws

void rd_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 200);
  const contract mir = miracle(u), cha = chaos(u), skip = skip_srd(u);
  auto laws = [&](const contract& c, const std::string& tag) {
    auto w = [&] { return tag + "\n" + show(c); };
    const contract nopost(c.pre(), c.peri(), false_r(u, post_shape));
    rec.check("RD1", intchoice(mir, c) == c, w);
    rec.check("RD2", intchoice(cha, c) == cha, w);
    rec.check("RD3", seq(skip, c) == c, w);
    rec.check("RD4", seq(c, skip) == c, w);
    rec.check("RD5", seq(nopost, smp.contract_sample(1)) == nopost, w);
    rec.check("RD6", seq(mir, c) == mir, w);
    rec.check("RD7", seq(cha, c) == cha, w);
    rec.check("RD8", contract(false_r(u), c.peri(), c.post()) == cha, w);
    rec.check("RD9", seq(c, mir) == nopost, w);
    const contract rd10(conj_r(c.pre(), wp_r(c.post(), false_r(u))), c.peri(), false_r(u, post_shape));
    rec.check("RD10", seq(c, cha) == rd10, [&] { return w() + contract_diff(seq(c, cha), rd10); });
  };
  for (int i = 0; i < n; ++i) laws(smp.contract_sample(1), "sample " + std::to_string(i));
  // Golden instances with a concrete prefix.
  const contract pa = prefix_skip(u, 0);
  laws(pa, "a -> Skip");
  laws(stop(u), "Stop");
  {
    // a → Skip ; Miracle keeps the offer of a but never terminates.
    const contract expect(true_r(u), pa.peri(), false_r(u, post_shape));
    rec.check("RD9 golden", seq(pa, mir) == expect);
  }

  // Extraction round trip and the printed extraction equalities.
  for (int i = 0; i < n; ++i) {
    const contract c = smp.contract_sample(1);
    auto w = [&] { return show(c); };
    const rel e = expand(c);
    rec.check("extract round trip", contract_of(e) == c, w);
    rec.check("expansion is NSRD", is_healthy(health::NSRD, e), w);
    const rr p1 = smp.condition(), p2 = smp.reactive(peri_shape, 1), p3 = smp.reactive(post_shape, 1);
    const rel t = expand_triple(p1, p2, p3);
    rec.check("extract pre", pre_R(t) == to_full(p1));
    rec.check("extract peri", peri_R(t) == to_full(implies_r(p1, p2)));
    rec.check("extract post", post_R(t) == to_full(implies_r(p1, p3)));
  }
  rec.check("Miracle expansion", expand(mir) == apply(health::SRD, rel::top(u, full_alpha)));
  rec.check("Chaos expansion", expand(cha) == apply(health::SRD, rel::bottom(u, full_alpha)));
  // The contract Skip leaves the final refusal free; the identity copies it.
  rec.check("skip triple", exists(expand(skip), primed(v_ref)) == exists(ii_srd(u), primed(v_ref)) &&
                               contract_of(expand(skip)) == skip);

  // Triple-level operators against the full model.
  std::uint64_t before = truncations();
  for (int i = 0; i < n; ++i) {
    const contract a = smp.contract_sample(1), b = smp.contract_sample(1);
    const rel ea = expand(a), eb = expand(b);
    auto w = [&] { return "pair " + std::to_string(i) + "\n" + show(a) + show(b); };
    auto same = [&](const std::string& name, const contract& tri, const rel& mono) {
      const contract m = contract_of(mono);
      rec.check(name, tri == m, [&] { return w() + contract_diff(tri, m); });
    };
    same("oracle seq", seq(a, b), seq_compose(ea, eb));
    same("oracle intchoice", intchoice(a, b), disj(ea, eb));
    same("oracle conj", conj(a, b), conj(ea, eb));
    const auto bs = smp.state_predicate();
    same("oracle cond", cond(a, bs, b), cond(ea, rel::from(u, full_alpha, [&](const binding& x) { return bs(x.u.st); }), eb));
    same("oracle power 2", power(a, 2), seq_compose(ea, ea));
    rec.check("power 2 is seq", power(a, 2) == seq(a, a), w);
    rec.check("power 1 is identity", power(a, 1) == a, w);
    const contract_refinement r = refines(a, b);
    rec.check("refinement agrees with model", r.holds == refined_by(ea, eb), w);
    rec.check("equivalence agrees with model", equiv(a, b) == (ea == eb), w);
    rec.check("refines self", refines(a, a).holds, w);
    rec.check("Miracle refines all", refines(a, mir).holds && refines(cha, a).holds, w);
  }
  rec.check("no truncation in oracle pairs", truncations() == before);
  rec.check("power of skip", power(skip, 3) == skip);
  rec.check("productive prefix", is_productive(pa) && !is_productive(assigns_R(u, [](int s) { return std::optional<int>(s); })) &&
                                     is_productive(cha));
  rec.check("CDF refined by a -> Skip", refines(cdf(u), pa).holds);
  rec.check("CDF not refined by Stop", !refines(cdf(u), stop(u)).holds);
}

// ---------------------------------------------------------------- ra laws

void ra_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 200);
  const state_fn id = [](int s) { return std::optional<int>(s); };
  rec.check("RA1", assigns_R(u, id) == skip_srd(u));
  for (int i = 0; i < n; ++i) {
    const contract c = smp.contract_sample(1);
    const state_fn s = smp.total_state_fn(), r = smp.total_state_fn();
    auto w = [&] { return "sample " + std::to_string(i) + "\n" + show(c); };
    const contract lhs = seq(assigns_R(u, s), c);
    const contract rhs(subst_state(c.pre(), s), subst_state(c.peri(), s), subst_state(c.post(), s));
    rec.check("RA2", lhs == rhs, [&] { return w() + contract_diff(lhs, rhs); });
    rec.check("RA3", seq(assigns_R(u, s), assigns_R(u, r)) == assigns_R(u, [&](int st) { return r(*s(st)); }), w);
    rec.check("RA4", seq(assigns_R(u, s), miracle(u)) == miracle(u), w);
    rec.check("RA5", seq(assigns_R(u, s), chaos(u)) == chaos(u), w);
    rec.check("RA3 equiv", equiv(seq(assigns_R(u, s), assigns_R(u, r)), assigns_R(u, [&](int st) { return r(*s(st)); })), w);
  }
  // Golden: x := ¬x twice is skip; x := 1 then a → Skip keeps the assignment.
  const state_fn flip = [](int st) { return std::optional<int>(1 - st); };
  rec.check("RA3 golden", seq(assigns_R(u, flip), assigns_R(u, flip)) == skip_srd(u));
  const state_fn set1 = [](int) { return std::optional<int>(1); };
  const contract pa = prefix_skip(u, 0);
  const contract shifted(subst_state(pa.pre(), set1), subst_state(pa.peri(), set1), subst_state(pa.post(), set1));
  rec.check("RA2 golden", seq(assigns_R(u, set1), pa) == shifted);
  rec.check("RA4 golden", seq(assigns_R(u, set1), miracle(u)) == miracle(u));
  rec.check("RA5 golden", seq(assigns_R(u, set1), chaos(u)) == chaos(u));
}

// ---------------------------------------------------------------- parallel

void parallel_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 50);
  const merge_rel m = interleave_merge(u);
  rec.check("interleave merge symmetric", m.symmetric());
  const contract mir = miracle(u);
  std::uint64_t before = truncations();
  for (int i = 0; i < n; ++i) {
    const contract a = smp.contract_sample(1), b = smp.contract_sample(1);
    auto w = [&] { return "pair " + std::to_string(i) + "\n" + show(a) + show(b); };
    const rel ea = expand(a), eb = expand(b);
    const contract tri = rd_par(a, b, m);
    const rel mono = par_by_merge(ea, eb, m);
    const contract orc = contract_of(mono);
    rec.check("oracle rd_par", tri == orc, [&] { return w() + contract_diff(tri, orc); });
    rec.check("parallel pre", pre_R(mono) == to_full(tri.pre()), w);
    rec.check("parallel peri", peri_R(mono) == to_full(implies_r(tri.pre(), tri.peri())), w);
    rec.check("parallel post", post_R(mono) == to_full(implies_r(tri.pre(), tri.post())), w);
    rec.check("parallel NSRD closure", is_healthy(health::NSRD, mono), w);
    rec.check("parallel symmetric", rd_par(b, a, m) == tri, w);
    rec.check("Miracle annihilates", rd_par(mir, a, m) == mir && rd_par(a, mir, m) == mir, w);
    rec.check("Miracle annihilates in the model", par_by_merge(expand(mir), ea, m) == expand(mir), w);
    if (i < 5) {
      // R1 ∘ R2c closure on arbitrary reactive inputs.
      // Stuttering rows keep every before-side non-empty at every history, so
      // the bound cannot make emptiness depend on the trace history.
      const rel stutter = skip_rel(u, full_alpha);
      const rel p = apply(health::R1, apply(health::R2c, disj(stutter, smp.relation(full_alpha, 0.05))));
      const rel q = apply(health::R1, apply(health::R2c, disj(stutter, smp.relation(full_alpha, 0.05))));
      const rel pq = par_by_merge(p, q, m);
      rec.check("parallel R1 R2c closure", apply(health::R1, apply(health::R2c, pq)) == pq, w);
    }
    // Weakest rely laws.
    const rr r = smp.condition(), pp = smp.reactive(rel_shape, 1, 0.1), p2 = smp.reactive(rel_shape, 1, 0.1);
    rec.check("wpp false", wpp(false_r(u, rel_shape), m, r) == true_r(u), w);
    rec.check("wpp true", wpp(pp, m, true_r(u)) == true_r(u), w);
    rec.check("wpp choice", wpp(disj_r(pp, p2), m, r) == conj_r(wpp(pp, m, r), wpp(p2, m, r)), w);
    rec.check("wpp is a condition", is_rc(wpp(pp, m, r)), w);
  }
  rec.check("no truncation in oracle pairs", truncations() == before);
  // Worked example: a → Skip ||| b → Stop.
  const contract lhs = rd_par(prefix_skip(u, 0), seq(prefix_skip(u, 1), stop(u)), m);
  const contract rhs = extchoice(seq(prefix_skip(u, 0), seq(prefix_skip(u, 1), stop(u))),
                                 seq(prefix_skip(u, 1), seq(prefix_skip(u, 0), stop(u))));
  rec.check("interleaving calculation", lhs == rhs, [&] { return contract_diff(lhs, rhs); });
  // Chaos against the interleaving merge: recorded, not a law.
  const contract pc = rd_par(chaos(u), prefix_skip(u, 0), m);
  rec.check("Chaos interleaved with a -> Skip is Chaos (observed)", pc == chaos(u));
}

// ---------------------------------------------------------------- lifting

void lifting_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = law_universe();
  sampler smp(u, opt.seed);
  const int n = samples_or(opt, 100);
  rec.check("lift top", lift_RD(top_D(u)) == miracle(u));
  rec.check("lift bottom", lift_RD(bottom_D(u)) == chaos(u));
  rec.check("lift skip", lift_RD(ii_D(u)) == skip_srd(u));
  for (int i = 0; i < n; ++i) {
    const rel d = smp.normal_design(), e = smp.normal_design();
    auto w = [&] { return "sample " + std::to_string(i); };
    const contract ld = lift_RD(d), le = lift_RD(e);
    rec.check("lift choice", lift_RD(disj(d, e)) == intchoice(ld, le), w);
    const auto bs = smp.state_predicate();
    const rel b = rel::from(u, design_alpha, [&](const binding& x) { return bs(x.u.st); });
    rec.check("lift conditional", lift_RD(cond(d, b, e)) == cond(ld, bs, le), w);
    rec.check("lift sequence", lift_RD(seq_compose(d, e)) == seq(ld, le),
              [&] { return w() + contract_diff(lift_RD(seq_compose(d, e)), seq(ld, le)); });
    const state_fn s = smp.total_state_fn();
    rec.check("lift assignment", lift_RD(assign_D(u, s)) == assigns_R(u, s), w);
    rec.check("drop after lift", drop_DR(ld) == d, w);
    const bool dref = refined_by(d, e);
    rec.check("lift monotone", !dref || refines(ld, le).holds, w);
    rec.check("design refinement agrees", design_refines(d, e).holds() == dref, w);
    rec.check("design correspondence", make_design(pre_D(d), post_D(d)) == d, w);
    rec.check("design is H", is_healthy(health::H, d), w);
    rec.check("lifted design is NSRD", is_healthy(health::NSRD, expand(ld)), w);
    // Hoare triples: {p} Q {r} holds when Q's post under p lands in r.
    const rel pc = state_pred(u, smp.state_predicate());
    const rel rr_ = smp.relation(state_alpha);
    const bool direct = pc.raw().subset_of(pre_D(d).raw()) && conj(post_D(d), pc).raw().subset_of(rr_.raw());
    rec.check("hoare triple", hoare(pc, d, rr_) == direct, w);
    rec.check("hoare false", hoare(rel::top(u, state_alpha), d, rr_), w);
  }
  const rel x1 = rel::from(u, state_alpha, [](const binding& b) { return b.p.st == 1; });
  rec.check("design assigning 1 terminates with 1",
            make_design(rel::bottom(u, state_alpha), x1) == assign_D(u, [](int) { return std::optional<int>(1); }));
  rec.check("abort is bottom", make_design(rel::top(u, state_alpha), x1) == rel::bottom(u, design_alpha));
  rec.check("hoare assignment", hoare(rel::bottom(u, state_alpha), assign_D(u, [](int) { return std::optional<int>(1); }), x1));
}

// ---------------------------------------------------------------- recursion

void recursion_suite(recorder& rec, const law_options& opt) {
  const universe_ptr u = single_event_universe(4);
  const contract pa = prefix_skip(u, 0);
  int steps = 0;
  const contract t = tail_rec(pa, &steps);
  rec.check("tail recursion post is false", t.post().empty());
  rec.check("tail recursion pre is true", t.pre() == true_r(u));
  const auto& ts = u->traces();
  const rr expect = rr::from(u, peri_shape, [&](const rr_row& r) { return ts.length(r.tt) <= u->bound() && !(r.ref1 & 1u); });
  rec.check("tail recursion peri", t.peri() == expect, [&] { return rr_diff(t.peri(), expect); });
  rec.check("tail recursion stabilises", steps == u->bound() + 1, [&] { return std::to_string(steps); });
  const rel ea = expand(pa);
  const rel_fn f = [&](const rel& x) { return seq_compose(ea, apply(health::SRD, x)); };
  const rel lo = mu(f, u, full_alpha), hi = nu(f, u, full_alpha);
  rec.check("unique fixed point", lo == hi, [&] { return rel_diff(lo, hi); });
  rec.check("tail recursion is the fixed point", expand(t) == lo, [&] { return rel_diff(expand(t), lo); });

  std::vector<rel> samples;
  sampler smp(u, opt.seed);
  for (int i = 0; i < samples_or(opt, 10); ++i) samples.push_back(expand(smp.contract_sample(2)));
  rec.check("prefix body is guarded", gv_guard_check(f, samples, 3));
  rec.check("identity is unguarded", !gv_guard_check([](const rel& x) { return x; }, samples, 2));
  rec.check("constant is guarded", gv_guard_check([&](const rel&) { return ea; }, samples, 2));

  // Productive random bodies on the law universe.
  const universe_ptr w = law_universe(3);
  sampler s2(w, opt.seed + 1);
  for (int i = 0; i < samples_or(opt, 10); ++i) {
    contract c = s2.contract_sample(1);
    const rr post = conj_r(c.post(), rr::from(w, post_shape, [&](const rr_row& r) { return r.tt != 0; }));
    c = contract(c.pre(), c.peri(), post);
    rec.check("random body productive", is_productive(c));
    const contract tc = tail_rec(c);
    const rel ec = expand(c);
    const rel_fn g = [&](const rel& x) { return seq_compose(ec, apply(health::SRD, x)); };
    const rel m = mu(g, w, full_alpha);
    rec.check("random tail recursion is the fixed point", expand(tc) == m, [&] { return rel_diff(expand(tc), m); });
    rec.check("random unique fixed point", m == nu(g, w, full_alpha));
  }
  rec.check("non-productive rejected", [&] {
    try {
      tail_rec(skip_srd(u));
      return false;
    } catch (const error& e) {
      return e.code() == errc::not_productive;
    }
  }());
}

using suite_fn = void (*)(recorder&, const law_options&);

const std::vector<std::pair<std::string, suite_fn>>& registry() {
  static const std::vector<std::pair<std::string, suite_fn>> r = {
      {"trace", trace_suite},     {"relational", relational_suite}, {"healthiness", healthiness_suite},
      {"wp", wp_suite},           {"rdlaws", rd_suite},             {"ralaws", ra_suite},
      {"parallel", parallel_suite}, {"lifting", lifting_suite},     {"recursion", recursion_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

suite_report run_suite(const std::string& name, const law_options& opt) {
  for (const auto& [n, f] : registry()) {
    if (n != name) continue;
    suite_report rep;
    rep.suite = n;
    recorder rec(rep);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      f(rec, opt);
    } catch (const error& e) {
      rec.fail("suite completed", std::string(errc_name(e.code())) + ": " + e.what());
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  throw error(errc::unknown_suite, "unknown law suite: " + name);
}

std::vector<suite_report> run_suites(const std::string& name, const law_options& opt) {
  std::vector<suite_report> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, opt));
  } else {
    out.push_back(run_suite(name, opt));
  }
  return out;
}

std::string format_report(const suite_report& r) {
  std::ostringstream o;
  for (const auto& l : r.laws) {
    o << r.suite << "\t" << (l.holds ? "pass" : "FAIL") << "\t" << l.name << "\t" << l.checked << "\n";
    if (!l.holds && !l.witness.empty()) o << "  witness: " << l.witness << "\n";
  }
  return o.str();
}

}  // namespace rdc
