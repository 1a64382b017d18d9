#include "rdc/parallel.hpp"

#include "rdc/health.hpp"

namespace rdc {

int contribution_count(const universe& u) { return u.n_traces() * u.n_states() * u.n_refusals(); }

int contribution_of(const universe& u, int tt, int st1, unsigned ref1) {
  return (tt * u.n_states() + st1) * u.n_refusals() + static_cast<int>(ref1);
}

rr_row contribution_row(const universe& u, int st, int c) {
  rr_row r;
  r.st = st;
  r.ref1 = static_cast<unsigned>(c % u.n_refusals());
  c /= u.n_refusals();
  r.st1 = c % u.n_states();
  r.tt = c / u.n_states();
  return r;
}

merge_rel::merge_rel(universe_ptr u, std::string name, generator g)
    : u_(std::move(u)), name_(std::move(name)), gen_(std::move(g)), symmetric_(std::make_shared<int>(-1)) {}

bool merge_rel::contains(int st, int left, int right, int out) const {
  bits o(static_cast<std::size_t>(contribution_count(*u_)));
  outputs(st, left, right, o);
  return o.test(static_cast<std::size_t>(out));
}

std::size_t merge_rel::size() const {
  const int nc = contribution_count(*u_);
  std::size_t n = 0;
  bits o(static_cast<std::size_t>(nc));
  for (int st = 0; st < u_->n_states(); ++st)
    for (int l = 0; l < nc; ++l)
      for (int r = 0; r < nc; ++r) {
        o = bits(static_cast<std::size_t>(nc));
        outputs(st, l, r, o);
        n += o.count();
      }
  return n;
}

bool merge_rel::symmetric() const {
  if (*symmetric_ >= 0) return *symmetric_ == 1;
  const int nc = contribution_count(*u_);
  if (static_cast<double>(u_->n_states()) * nc * nc > 1e8)
    throw error(errc::alphabet_too_large, "merge too large for the symmetry check");
  const std::size_t n = static_cast<std::size_t>(nc);
  bool sym = true;
  for (int st = 0; st < u_->n_states() && sym; ++st)
    for (int l = 0; l < nc && sym; ++l)
      for (int r = l + 1; r < nc && sym; ++r) {
        bits a(n), b(n);
        outputs(st, l, r, a);
        outputs(st, r, l, b);
        sym = a == b;
      }
  *symmetric_ = sym ? 1 : 0;
  return sym;
}

merge_rel interleave_merge(const universe_ptr& u) {
  // Interleavings per trace pair, tabulated when the trace space is small.
  const int nt = u->n_traces();
  auto table = std::make_shared<std::vector<std::vector<int>>>();
  auto cut = std::make_shared<std::vector<char>>();
  if (nt <= 256) {
    table->resize(static_cast<std::size_t>(nt * nt));
    cut->resize(static_cast<std::size_t>(nt * nt));
    for (int s = 0; s < nt; ++s)
      for (int t = 0; t < nt; ++t) {
        const std::size_t k = static_cast<std::size_t>(s * nt + t);
        (*cut)[k] = u->traces().interleave(s, t, (*table)[k]);
      }
  }
  auto gen = [u, table, cut, nt](int, int left, int right, bits& out) -> std::size_t {
    const universe& un = *u;
    const rr_row a = contribution_row(un, 0, left), b = contribution_row(un, 0, right);
    std::vector<int> local;
    const std::vector<int>* tts = &local;
    if (!table->empty()) {
      const std::size_t k = static_cast<std::size_t>(a.tt * nt + b.tt);
      if ((*cut)[k]) return 1;
      tts = &(*table)[k];
    } else if (un.traces().interleave(a.tt, b.tt, local)) {
      return 1;
    }
    const unsigned common = a.ref1 & b.ref1;
    for (int tt : *tts)
      for (int s = 0; s < un.n_states(); ++s) {
        // every subset of the common refusal, including the empty set
        unsigned sub = common;
        while (true) {
          out.set(static_cast<std::size_t>(contribution_of(un, tt, s, sub)));
          if (sub == 0) break;
          sub = (sub - 1) & common;
        }
      }
    return 0;
  };
  return merge_rel(u, "interleave", gen);
}

namespace {

void require_merge_universe(const rr& p, const merge_rel& m) {
  if (p.uni_ptr() != m.uni_ptr()) throw error(errc::alphabet_mismatch, "merge over a different universe");
}

}  // namespace

rr merge_par(const rr& p, const rr& q, const merge_rel& m) {
  require_merge_universe(p, m);
  require_merge_universe(q, m);
  const rr a = reshape(p, rel_shape), b = reshape(q, rel_shape);
  const universe& u = p.uni();
  const std::size_t nc = static_cast<std::size_t>(contribution_count(u));
  rr r(p.uni_ptr(), rel_shape);
  std::size_t cut = 0;
  for (int st = 0; st < u.n_states(); ++st) {
    const std::size_t base = static_cast<std::size_t>(st) * nc;
    bits acc(nc);
    for (std::size_t l = a.raw().next(base); l < base + nc; l = a.raw().next(l + 1))
      for (std::size_t k = b.raw().next(base); k < base + nc; k = b.raw().next(k + 1))
        cut += m.outputs(st, static_cast<int>(l - base), static_cast<int>(k - base), acc);
    r.raw().or_range(base, acc, 0, nc);
  }
  if (cut) count_truncation(cut);
  return r;
}

rr intermediate_merge(const rr& p, const rr& q, const merge_rel& m) {
  return reshape(hide(merge_par(p, q, m), d_st1), peri_shape);
}

rr wpp(const rr& p, const merge_rel& m, const rr& q) {
  rr cq;
  try {
    cq = reshape(q, cond_shape);
  } catch (const error&) {
    throw error(errc::not_rc, "wpp: condition mentions primed observations");
  }
  if (!is_rc(cq)) throw error(errc::not_rc, "wpp: argument is not a reactive condition");
  const universe& u = p.uni();
  const trace_space& ts = u.traces();
  // Interleavings past the bound only have extensions past the bound.
  truncation_pause pause;
  rr merged = reshape(hide(hide(merge_par(neg_r(cq), p, m), d_st1), d_ref1), cond_shape);
  rr closed(p.uni_ptr(), cond_shape);
  merged.for_each([&](const rr_row& r) {
    for (int t = 0; t < u.n_traces(); ++t)
      if (ts.prefix_le(r.tt, t)) closed.insert({r.st, t, 0, 0});
  });
  return neg_r(closed);
}

contract rd_par(const contract& a, const contract& b, const merge_rel& m) {
  if (!m.symmetric()) throw error(errc::merge_not_symmetric, "parallel composition needs a symmetric merge");
  const rr &p1 = a.pre(), &p2 = a.peri(), &p3 = a.post();
  const rr &q1 = b.pre(), &q2 = b.peri(), &q3 = b.post();
  rr pre = conj_r(conj_r(wpp(implies_r(p1, p2), m, q1), wpp(implies_r(p1, p3), m, q1)),
                  conj_r(wpp(implies_r(q1, q2), m, p1), wpp(implies_r(q1, q3), m, p1)));
  rr peri = disj_r(disj_r(intermediate_merge(p2, q2, m), intermediate_merge(p3, q2, m)),
                   intermediate_merge(p2, q3, m));
  return contract(pre, peri, merge_par(p3, q3, m));
}

rel par_by_merge(const rel& p, const rel& q, const merge_rel& m) {
  if (!p.same_space(q) || p.alphabet() != full_alpha)
    throw error(errc::alphabet_mismatch, "parallel composition needs full-alphabet relations over one universe");
  if (p.uni_ptr() != m.uni_ptr()) throw error(errc::alphabet_mismatch, "merge over a different universe");
  const universe& u = p.uni();
  const trace_space& ts = u.traces();
  const std::size_t ns = static_cast<std::size_t>(p.side_count());
  const std::size_t nc = static_cast<std::size_t>(contribution_count(u));
  rel r(p.uni_ptr(), full_alpha);
  std::vector<side> sides(ns);
  for (std::size_t i = 0; i < ns; ++i) sides[i] = p.side_at(static_cast<int>(i));

  auto put = [&](std::size_t ui, const side& v) { r.raw().set(ui * ns + static_cast<std::size_t>(r.side_index(v))); };
  // the merged side v followed by II_srd
  auto close = [&](std::size_t ui, const side& v) {
    if (!v.ok) {
      for (const side& w : sides)
        if (ts.prefix_le(v.tr, w.tr)) put(ui, w);
    } else if (v.wait) {
      side w = v;
      for (int s = 0; s < u.n_states(); ++s) {
        w.st = s;
        put(ui, w);
      }
    } else {
      put(ui, v);
    }
  };

  bits out(nc);
  for (std::size_t ui = 0; ui < ns; ++ui) {
    const side& x = sides[ui];
    const std::size_t row = ui * ns;
    if (!p.raw().any_in_range(row, ns) || !q.raw().any_in_range(row, ns)) continue;
    if (!x.ok || x.wait) {
      close(ui, x.ok ? x : side{false, false, x.tr, 0, 0});
      continue;
    }
    for (std::size_t i = p.raw().next(row); i < row + ns; i = p.raw().next(i + 1)) {
      const side& l = sides[i - row];
      if (!ts.prefix_le(x.tr, l.tr)) continue;
      const int cl = contribution_of(u, ts.subtract(l.tr, x.tr), l.st, l.ref);
      for (std::size_t k = q.raw().next(row); k < row + ns; k = q.raw().next(k + 1)) {
        const side& g = sides[k - row];
        if (!ts.prefix_le(x.tr, g.tr)) continue;
        const int cg = contribution_of(u, ts.subtract(g.tr, x.tr), g.st, g.ref);
        out.clear();
        m.outputs(x.st, cl, cg, out);
        out.for_each([&](std::size_t c) {
          const rr_row o = contribution_row(u, x.st, static_cast<int>(c));
          const int tr = ts.concat(x.tr, o.tt);
          if (tr < 0) return;  // past the bound; so is every extension
          close(ui, side{l.ok && g.ok, l.wait || g.wait, tr, o.st1, o.ref1});
        });
      }
    }
  }
  return r;
}

}  // namespace rdc
