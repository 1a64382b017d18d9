#include "rdc/contract.hpp"

#include <sstream>

#include "rdc/health.hpp"

namespace rdc {

namespace {

rr as_shape(const rr& p, rr_shape to, errc code, const char* what) {
  try {
    return reshape(p, to);
  } catch (const error&) {
    throw error(code, what);
  }
}

rr restrict_to(const rr& p, const rr& pre) { return conj_r(p, pre); }

}  // namespace

contract::contract(rr pre, rr peri, rr post) {
  if (pre.uni_ptr() != peri.uni_ptr() || pre.uni_ptr() != post.uni_ptr())
    throw error(errc::alphabet_mismatch, "contract parts over different universes");
  pre_ = as_shape(pre, cond_shape, errc::not_rc, "precondition mentions primed observations");
  if (!is_rc(pre_)) throw error(errc::not_rc, "precondition is not a reactive condition");
  peri_ = as_shape(peri, peri_shape, errc::peri_mentions_final_state, "pericondition mentions the final state");
  post_ = as_shape(post, post_shape, errc::post_constrains_refusal, "postcondition constrains the refusal");
  peri_ = restrict_to(peri_, pre_);
  post_ = restrict_to(post_, pre_);
}

contract mk_contract(const rr& pre, const rr& peri, const rr& post) { return contract(pre, peri, post); }

contract miracle(const universe_ptr& u) { return {true_r(u), false_r(u, peri_shape), false_r(u, post_shape)}; }
contract chaos(const universe_ptr& u) { return {false_r(u), false_r(u, peri_shape), false_r(u, post_shape)}; }
contract skip_srd(const universe_ptr& u) { return {true_r(u), false_r(u, peri_shape), ii_r(u)}; }
contract assigns_R(const universe_ptr& u, const state_fn& sigma) {
  return {true_r(u), false_r(u, peri_shape), assigns_r(u, sigma)};
}

contract prefix_skip(const universe_ptr& u, int e) {
  const int eps = u->traces().empty(), one = u->traces().single(e);
  const unsigned bit = 1u << e;
  rr peri = rr::from(u, peri_shape, [&](const rr_row& r) { return r.tt == eps && !(r.ref1 & bit); });
  rr post = rr::from(u, post_shape, [&](const rr_row& r) { return r.tt == one && r.st1 == r.st; });
  return {true_r(u), peri, post};
}

contract stop(const universe_ptr& u) {
  const int eps = u->traces().empty();
  return {true_r(u), rr::from(u, peri_shape, [&](const rr_row& r) { return r.tt == eps; }), false_r(u, post_shape)};
}

contract cdf(const universe_ptr& u) {
  const unsigned all = u->all_events();
  return {true_r(u), rr::from(u, peri_shape, [&](const rr_row& r) { return r.ref1 != all; }), true_r(u, post_shape)};
}

rel expand_triple(const rr& pre, const rr& peri, const rr& post) {
  const rel p1 = to_full(pre), p2 = to_full(peri), p3 = to_full(post);
  rel design = rel::from(pre.uni_ptr(), full_alpha, [&](const binding& b) {
    if (!(b.u.ok && p1.contains(b))) return true;
    return b.p.ok && (b.p.wait ? p2.contains(b) : p3.contains(b));
  });
  return apply(health::Rs, design);
}

rel expand(const contract& c) { return expand_triple(c.pre(), c.peri(), c.post()); }

rel pre_R(const rel& p) {
  rel s = subst(p, [](binding& b) {
    b.u.ok = true;
    b.p.ok = false;
    b.u.wait = false;
  });
  return conj(neg(s), true_r_full(p.uni_ptr()));
}

rel peri_R(const rel& p) {
  return subst(p, [](binding& b) {
    b.u.ok = b.p.ok = true;
    b.u.wait = false;
    b.p.wait = true;
  });
}

rel post_R(const rel& p) {
  return subst(p, [](binding& b) {
    b.u.ok = b.p.ok = true;
    b.u.wait = b.p.wait = false;
  });
}

contract contract_of(const rel& p) {
  if (!is_healthy(health::SRD, p)) throw error(errc::not_srd_healthy, "relation is not SRD-healthy");
  rr pre = as_shape(from_full(pre_R(p)), cond_shape, errc::not_rc, "precondition mentions primed observations");
  rr peri = as_shape(from_full(peri_R(p)), peri_shape, errc::peri_mentions_final_state,
                     "pericondition mentions the final state");
  rr post = as_shape(from_full(post_R(p)), post_shape, errc::post_constrains_refusal,
                     "postcondition constrains the refusal");
  return {pre, peri, post};
}

contract seq(const contract& a, const contract& b) {
  rr pre = conj_r(a.pre(), wp_r(a.post(), b.pre()));
  rr peri = disj_r(a.peri(), rr_seq(a.post(), b.peri()));
  return {pre, peri, rr_seq(a.post(), b.post())};
}

contract intchoice(const contract& a, const contract& b) {
  return {conj_r(a.pre(), b.pre()), disj_r(a.peri(), b.peri()), disj_r(a.post(), b.post())};
}

contract intchoice(const std::vector<contract>& family) {
  if (family.empty()) throw error(errc::empty_family, "internal choice over an empty family");
  rr pre = family[0].pre(), peri = family[0].peri(), post = family[0].post();
  for (std::size_t i = 1; i < family.size(); ++i) {
    pre = conj_r(pre, family[i].pre());
    peri = disj_r(peri, family[i].peri());
    post = disj_r(post, family[i].post());
  }
  return {pre, peri, post};
}

contract conj(const contract& a, const contract& b) {
  rr pre = disj_r(a.pre(), b.pre());
  rr peri = conj_r(implies_r(a.pre(), a.peri()), implies_r(b.pre(), b.peri()));
  rr post = conj_r(implies_r(a.pre(), a.post()), implies_r(b.pre(), b.post()));
  return {pre, peri, post};
}

contract cond(const contract& a, const std::function<bool(int)>& b, const contract& c) {
  const universe_ptr& u = a.uni_ptr();
  rr g = state_cond(u, b), ng = neg_r(g);
  auto pick = [&](const rr& x, const rr& y) { return disj_r(conj_r(g, x), conj_r(ng, y)); };
  return {pick(a.pre(), c.pre()), pick(a.peri(), c.peri()), pick(a.post(), c.post())};
}

contract extchoice(const contract& a, const contract& b) { return extchoice(std::vector<contract>{a, b}); }

contract extchoice(const std::vector<contract>& family) {
  if (family.empty()) throw error(errc::empty_family, "external choice over an empty family");
  const universe_ptr& u = family[0].uni_ptr();
  rr pre = family[0].pre(), all = family[0].peri(), any = family[0].peri(), post = family[0].post();
  for (std::size_t i = 1; i < family.size(); ++i) {
    pre = conj_r(pre, family[i].pre());
    all = conj_r(all, family[i].peri());
    any = disj_r(any, family[i].peri());
    post = disj_r(post, family[i].post());
  }
  rr quiet = rr::from(u, cond_shape, [](const rr_row& r) { return r.tt == 0; });
  rr peri = disj_r(conj_r(quiet, all), conj_r(neg_r(quiet), any));
  return {pre, peri, post};
}

contract power(const contract& c, int n) {
  if (n < 1) throw error(errc::invalid_argument, "power needs at least one iteration");
  const universe_ptr& u = c.uni_ptr();
  rr ri = ii_r(u);
  rr pre = true_r(u), peri = false_r(u, peri_shape);
  for (int i = 0; i < n; ++i) {
    pre = conj_r(pre, wp_r(ri, c.pre()));
    peri = disj_r(peri, rr_seq(ri, c.peri()));
    ri = rr_seq(ri, c.post());
  }
  return {pre, peri, ri};
}

bool is_productive(const contract& c) {
  const rr& p = c.post();
  for (int st = 0; st < p.uni().n_states(); ++st)
    if (p.raw().any_in_range(p.block_of(st, p.uni().traces().empty()), p.block())) return false;
  return true;
}

contract tail_rec(const contract& c, int* steps) {
  if (!is_productive(c)) throw error(errc::not_productive, "recursion body can terminate without an event");
  const universe_ptr& u = c.uni_ptr();
  truncation_pause pause;
  rr ri = ii_r(u);
  rr pre = true_r(u), peri = false_r(u, peri_shape);
  int i = 0;
  while (!ri.empty()) {
    pre = conj_r(pre, wp_r(ri, c.pre()));
    peri = disj_r(peri, rr_seq(ri, c.peri()));
    ri = rr_seq(ri, c.post());
    ++i;
  }
  if (steps) *steps = i;
  return {pre, peri, false_r(u, post_shape)};
}

rel gv(const universe_ptr& u, int n) {
  const trace_space& ts = u->traces();
  return rel::from(u, full_alpha, [&](const binding& b) {
    return ts.prefix_le(b.u.tr, b.p.tr) && ts.length(b.p.tr) - ts.length(b.u.tr) < n;
  });
}

bool gv_guard_check(const rel_fn& f, const std::vector<rel>& samples, int n_max) {
  if (samples.empty()) return true;
  const universe_ptr& u = samples.front().uni_ptr();
  if (n_max > u->bound()) throw error(errc::invalid_argument, "guard check depth exceeds the trace bound");
  for (int n = 0; n < n_max; ++n) {
    rel lo = gv(u, n), hi = gv(u, n + 1);
    for (const auto& p : samples)
      if (!(conj(f(p), hi) == conj(f(conj(p, lo)), hi))) return false;
  }
  return true;
}

namespace {

obligation check_subset(const char* name, const rr& small, const rr& big, std::size_t cap) {
  obligation o;
  o.name = name;
  o.shape = small.shape() | big.shape();
  rr extra = conj_r(small, neg_r(big));
  o.holds = extra.empty();
  extra.raw().for_each([&](std::size_t i) {
    if (o.witnesses.size() < cap) o.witnesses.push_back(extra.row_at(i));
  });
  return o;
}

}  // namespace

contract_refinement refines(const contract& spec, const contract& impl, std::size_t max_witnesses) {
  contract_refinement r;
  r.obligations[0] = check_subset("pre", spec.pre(), impl.pre(), max_witnesses);
  r.obligations[1] = check_subset("peri", conj_r(impl.peri(), spec.pre()), spec.peri(), max_witnesses);
  r.obligations[2] = check_subset("post", conj_r(impl.post(), spec.pre()), spec.post(), max_witnesses);
  for (const auto& o : r.obligations) r.holds = r.holds && o.holds;
  return r;
}

bool equiv_triples(const rr& p1, const rr& p2, const rr& p3, const rr& q1, const rr& q2, const rr& q3) {
  return same_relation(p1, q1) && same_relation(conj_r(p2, q1), conj_r(q2, p1)) &&
         same_relation(conj_r(p3, q1), conj_r(q3, p1));
}

bool equiv(const contract& a, const contract& b) {
  return equiv_triples(a.pre(), a.peri(), a.post(), b.pre(), b.peri(), b.post());
}

std::string show(const contract& c) {
  std::ostringstream o;
  auto section = [&](const char* name, const rr& p) {
    o << name << ": " << p.size() << " rows\n";
    p.for_each([&](const rr_row& r) { o << "  " << show_row(c.uni(), p.shape(), r) << "\n"; });
  };
  section("pre", c.pre());
  section("peri", c.peri());
  section("post", c.post());
  return o.str();
}

std::string dump(const contract& c) {
  std::ostringstream o;
  auto section = [&](const char* name, const rr& p) {
    o << "#" << name << "\tst\ttt";
    if (p.has(d_st1)) o << "\tst'";
    if (p.has(d_ref1)) o << "\tref'";
    o << "\n";
    p.for_each([&](const rr_row& r) {
      o << name << "\t" << c.uni().show_state(r.st) << "\t" << c.uni().show_trace(r.tt);
      if (p.has(d_st1)) o << "\t" << c.uni().show_state(r.st1);
      if (p.has(d_ref1)) o << "\t" << c.uni().show_refusal(r.ref1);
      o << "\n";
    });
  };
  section("pre", c.pre());
  section("peri", c.peri());
  section("post", c.post());
  return o.str();
}

}  // namespace rdc
