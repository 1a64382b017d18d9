#include "rdc/design.hpp"

#include "rdc/health.hpp"

namespace rdc {

namespace {

void require_state(const rel& p) {
  if (p.alphabet() != state_alpha) throw error(errc::alphabet_mismatch, "design part must range over the state alone");
}

void require_design(const rel& d) {
  if (d.alphabet() != design_alpha) throw error(errc::alphabet_mismatch, "design must range over ok and the state");
}

// The state relation obtained by fixing ok and ok′.
rel slice(const rel& d, bool ok, bool ok1) {
  return rel::from(d.uni_ptr(), state_alpha, [&](const binding& b) {
    binding x = b;
    x.u.ok = ok;
    x.p.ok = ok1;
    return d.contains(x);
  });
}

}  // namespace

rel make_design(const rel& pre, const rel& post) {
  require_state(pre);
  require_state(post);
  return rel::from(pre.uni_ptr(), design_alpha, [&](const binding& b) {
    binding s{{false, false, 0, b.u.st, 0}, {false, false, 0, b.p.st, 0}};
    return !(b.u.ok && pre.contains(s)) || (b.p.ok && post.contains(s));
  });
}

rel pre_D(const rel& d) {
  require_design(d);
  if (!is_healthy(health::H, d)) throw error(errc::not_h_healthy, "design is not H-healthy");
  return neg(slice(d, true, false));
}

rel post_D(const rel& d) {
  require_design(d);
  if (!is_healthy(health::H, d)) throw error(errc::not_h_healthy, "design is not H-healthy");
  return slice(d, true, true);
}

rel top_D(const universe_ptr& u) { return make_design(rel::bottom(u, state_alpha), rel::top(u, state_alpha)); }
rel bottom_D(const universe_ptr& u) { return make_design(rel::top(u, state_alpha), rel::top(u, state_alpha)); }
rel ii_D(const universe_ptr& u) { return make_design(rel::bottom(u, state_alpha), skip_rel(u, state_alpha)); }
rel assign_D(const universe_ptr& u, const state_fn& sigma) {
  return make_design(rel::bottom(u, state_alpha), assign_rel(u, state_alpha, sigma));
}

rel state_pred(const universe_ptr& u, const std::function<bool(int)>& s) {
  return rel::from(u, state_alpha, [&](const binding& b) { return s(b.u.st); });
}

design_refinement design_refines(const rel& spec, const rel& impl) {
  const rel p1 = pre_D(spec), p2 = post_D(spec), q1 = pre_D(impl), q2 = post_D(impl);
  design_refinement r;
  r.pre_weakened = p1.raw().subset_of(q1.raw());
  r.post_strengthened = conj(q2, p1).raw().subset_of(p2.raw());
  return r;
}

bool hoare(const rel& p, const rel& q, const rel& r) { return refined_by(make_design(p, r), q); }

rel spec_stmt(const std::vector<int>& frame_vars, const rel& pre, const rel& post) {
  require_state(post);
  const universe& u = post.uni();
  std::vector<bool> free_slot(static_cast<std::size_t>(u.n_slots()), false);
  for (int v : frame_vars) {
    const var_decl& d = u.config().vars.at(static_cast<std::size_t>(v));
    const int width = d.kind == var_kind::map ? d.keys.size() : 1;
    for (int k = 0; k < width; ++k) free_slot[static_cast<std::size_t>(u.slot_of(v, k))] = true;
  }
  rel framed = rel::from(post.uni_ptr(), state_alpha, [&](const binding& b) {
    const std::vector<int> a = u.decode(b.u.st), c = u.decode(b.p.st);
    for (std::size_t s = 0; s < a.size(); ++s)
      if (!free_slot[s] && a[s] != c[s]) return false;
    return true;
  });
  return make_design(pre, conj(post, framed));
}

contract lift_RD(const rel& d) {
  require_design(d);
  if (!is_healthy(health::N, d)) throw error(errc::not_n_healthy, "design is not N-healthy");
  const universe_ptr& u = d.uni_ptr();
  const rel p = pre_D(d), q = post_D(d);
  const int eps = u->traces().empty();
  rr pre = rr::from(u, cond_shape, [&](const rr_row& r) { return p.contains({{false, false, 0, r.st, 0}, {}}); });
  rr post = rr::from(u, post_shape, [&](const rr_row& r) {
    return r.tt == eps && q.contains({{false, false, 0, r.st, 0}, {false, false, 0, r.st1, 0}});
  });
  return {pre, false_r(u, peri_shape), post};
}

rel drop_DR(const contract& c) {
  const universe_ptr& u = c.uni_ptr();
  const int eps = u->traces().empty();
  rel pre = rel::from(u, state_alpha, [&](const binding& b) { return c.pre().contains({b.u.st, eps, 0, 0}); });
  rel post = rel::from(u, state_alpha, [&](const binding& b) { return c.post().contains({b.u.st, eps, b.p.st, 0}); });
  return make_design(pre, post);
}

}  // namespace rdc
