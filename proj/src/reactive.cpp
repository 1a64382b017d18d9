#include "rdc/reactive.hpp"

#include <atomic>
#include <sstream>

#include "rdc/health.hpp"

namespace rdc {

namespace {

std::atomic<std::uint64_t> g_truncations{0};
thread_local int t_pause = 0;

void require_same_universe(const rr& p, const rr& q) {
  if (p.uni_ptr() != q.uni_ptr()) throw error(errc::alphabet_mismatch, "reactive relations over different universes");
}

// Rows of the target shape that agree with some row of p on the shared
// dimensions: hides dropped dimensions and leaves added ones free.
rr convert(const rr& p, rr_shape to) {
  if (p.shape() == to) return p;
  rr r(p.uni_ptr(), to);
  const universe& u = p.uni();
  const int ns = u.n_states(), nr = u.n_refusals();
  const bool add_st = (to & d_st1) && !p.has(d_st1);
  const bool add_ref = (to & d_ref1) && !p.has(d_ref1);
  p.for_each([&](const rr_row& row) {
    rr_row x = row;
    for (int s = 0; s < (add_st ? ns : 1); ++s) {
      if (add_st) x.st1 = s;
      for (int f = 0; f < (add_ref ? nr : 1); ++f) {
        if (add_ref) x.ref1 = static_cast<unsigned>(f);
        r.insert(x);
      }
    }
  });
  return r;
}

}  // namespace

rr::rr(universe_ptr u, rr_shape shape) : u_(std::move(u)), shape_(shape) {
  if (!u_) throw error(errc::invalid_argument, "reactive relation without a universe");
  ns_ = u_->n_states();
  nt_ = u_->n_traces();
  ns1_ = has(d_st1) ? ns_ : 1;
  nr1_ = has(d_ref1) ? u_->n_refusals() : 1;
  rows_ = bits(static_cast<std::size_t>(ns_) * nt_ * ns1_ * nr1_);
}

rr rr::all(universe_ptr u, rr_shape shape) {
  rr r(std::move(u), shape);
  r.rows_ = bits(r.rows_.size(), true);
  return r;
}

rr rr::from(universe_ptr u, rr_shape shape, const std::function<bool(const rr_row&)>& pred) {
  rr r(std::move(u), shape);
  for (std::size_t i = 0; i < r.rows_.size(); ++i)
    if (pred(r.row_at(i))) r.rows_.set(i);
  return r;
}

rr_row rr::row_at(std::size_t i) const {
  rr_row r;
  r.ref1 = static_cast<unsigned>(i % nr1_);
  i /= nr1_;
  r.st1 = static_cast<int>(i % ns1_);
  i /= ns1_;
  r.tt = static_cast<int>(i % nt_);
  r.st = static_cast<int>(i / nt_);
  return r;
}

std::uint64_t truncations() { return g_truncations.load(); }
void reset_truncations() { g_truncations.store(0); }
void count_truncation(std::uint64_t n) {
  if (t_pause == 0) g_truncations.fetch_add(n);
}
truncation_pause::truncation_pause() { ++t_pause; }
truncation_pause::~truncation_pause() { --t_pause; }

rr hide(const rr& p, rr_dim d) { return convert(p, p.shape() & ~d); }

bool depends_on(const rr& p, rr_dim d) {
  if (!p.has(d)) return false;
  return !(convert(hide(p, d), p.shape()) == p);
}

rr reshape(const rr& p, rr_shape to) {
  for (rr_dim d : {d_st1, d_ref1})
    if (p.has(d) && !(to & d) && depends_on(p, d))
      throw error(errc::alphabet_mismatch,
                  d == d_st1 ? "relation constrains the final state" : "relation constrains the refusal");
  return convert(p, to);
}

bool same_relation(const rr& p, const rr& q) {
  require_same_universe(p, q);
  rr_shape s = p.shape() | q.shape();
  return convert(p, s) == convert(q, s);
}

rr true_r(const universe_ptr& u, rr_shape shape) { return rr::all(u, shape); }
rr false_r(const universe_ptr& u, rr_shape shape) { return rr(u, shape); }

rr neg_r(const rr& p) {
  rr r = p;
  r.raw().flip();
  return r;
}

rr conj_r(const rr& p, const rr& q) {
  require_same_universe(p, q);
  rr_shape s = p.shape() | q.shape();
  rr r = convert(p, s);
  r.raw() &= convert(q, s).raw();
  return r;
}

rr disj_r(const rr& p, const rr& q) {
  require_same_universe(p, q);
  rr_shape s = p.shape() | q.shape();
  rr r = convert(p, s);
  r.raw() |= convert(q, s).raw();
  return r;
}

rr implies_r(const rr& p, const rr& q) { return disj_r(neg_r(p), q); }

rr rr_seq(const rr& p, const rr& q) {
  require_same_universe(p, q);
  const universe& u = p.uni();
  const trace_space& ts = u.traces();
  const int ns = u.n_states(), nt = u.n_traces(), bound = u.bound();
  rr r(p.uni_ptr(), q.shape());
  const std::size_t qb = q.block();
  std::vector<char> mid(ns);
  std::uint64_t cut = 0;
  for (int st = 0; st < ns; ++st) {
    for (int t1 = 0; t1 < nt; ++t1) {
      std::size_t pb = p.block_of(st, t1);
      if (!p.raw().any_in_range(pb, p.block())) continue;
      if (p.has(d_st1)) {
        const std::size_t nr = p.block() / ns;
        for (int m = 0; m < ns; ++m) mid[m] = p.raw().any_in_range(pb + m * nr, nr);
      } else {
        std::fill(mid.begin(), mid.end(), 1);
      }
      const int room = bound - ts.length(t1);
      for (int m = 0; m < ns; ++m) {
        if (!mid[m]) continue;
        for (int k = 0; k <= bound; ++k) {
          std::size_t src = q.block_of(m, ts.offset(k));
          std::size_t len = static_cast<std::size_t>(ts.count(k)) * qb;
          if (k > room) {
            if (q.raw().any_in_range(src, len)) ++cut;
            continue;
          }
          r.raw().or_range(r.block_of(st, ts.block_start(t1, k)), q.raw(), src, len);
        }
      }
    }
  }
  if (cut) count_truncation(cut);
  return r;
}

rr assigns_r(const universe_ptr& u, const state_fn& sigma) {
  rr r(u, post_shape);
  for (int st = 0; st < u->n_states(); ++st)
    if (auto s = sigma(st)) r.insert({st, u->traces().empty(), *s, 0});
  return r;
}

rr ii_r(const universe_ptr& u) {
  return assigns_r(u, [](int s) { return std::optional<int>(s); });
}

rr state_cond(const universe_ptr& u, const std::function<bool(int)>& s) {
  rr r(u, cond_shape);
  for (int st = 0; st < u->n_states(); ++st)
    if (s(st)) r.raw().set_range(r.block_of(st, 0), static_cast<std::size_t>(u->n_traces()));
  return r;
}

rr subst_state(const rr& p, const state_fn& sigma) {
  rr r(p.uni_ptr(), p.shape());
  const std::size_t span = static_cast<std::size_t>(p.uni().n_traces()) * p.block();
  for (int st = 0; st < p.uni().n_states(); ++st)
    if (auto s = sigma(st)) r.raw().or_range(r.block_of(st, 0), p.raw(), p.block_of(*s, 0), span);
  return r;
}

rc_check check_rc(const rr& p) {
  if (p.shape() != cond_shape) throw error(errc::not_rc, "reactive condition with primed observations");
  const universe& u = p.uni();
  const trace_space& ts = u.traces();
  rc_check c;
  for (int st = 0; st < u.n_states() && c.prefix_closed; ++st)
    for (int t = 1; t < u.n_traces(); ++t) {
      if (!p.contains({st, t, 0, 0})) continue;
      const auto& it = ts.items(t);
      int parent = ts.index(std::vector<int>(it.begin(), it.end() - 1));
      if (!p.contains({st, parent, 0, 0})) {
        c.prefix_closed = false;
        break;
      }
    }
  for (int st = 0; st < u.n_states() && c.complement_extension_closed; ++st)
    for (int t = 0; t < u.n_traces() && c.complement_extension_closed; ++t) {
      if (p.contains({st, t, 0, 0})) continue;
      for (int k = 1; k <= u.bound() - ts.length(t); ++k) {
        if (p.raw().any_in_range(p.block_of(st, ts.block_start(t, k)), static_cast<std::size_t>(ts.count(k)))) {
          c.complement_extension_closed = false;
          break;
        }
      }
    }
  return c;
}

bool is_rc(const rr& p) {
  rc_check c = check_rc(p);
  return c.prefix_closed && c.complement_extension_closed;
}

rr wp_r(const rr& p, const rr& q) {
  require_same_universe(p, q);
  if (q.shape() != cond_shape || !is_rc(q)) throw error(errc::not_rc, "wp: postcondition is not a reactive condition");
  const universe& u = p.uni();
  const trace_space& ts = u.traces();
  const int ns = u.n_states();
  rr r(p.uni_ptr(), cond_shape);
  std::vector<int> prefix;
  for (int st = 0; st < ns; ++st) {
    for (int t = 0; t < u.n_traces(); ++t) {
      const auto& it = ts.items(t);
      bool ok = true;
      for (std::size_t k = 0; k <= it.size() && ok; ++k) {
        prefix.assign(it.begin(), it.begin() + static_cast<std::ptrdiff_t>(k));
        int t1 = ts.index(prefix);
        int t2 = ts.subtract(t, t1);
        std::size_t pb = p.block_of(st, t1);
        if (!p.raw().any_in_range(pb, p.block())) continue;
        for (int m = 0; m < ns && ok; ++m) {
          bool reach = p.has(d_st1) ? p.raw().any_in_range(pb + m * (p.block() / ns), p.block() / ns) : true;
          if (reach && !q.contains({m, t2, 0, 0})) ok = false;
        }
      }
      if (ok) r.insert({st, t, 0, 0});
    }
  }
  return r;
}

rr wp_r_literal(const rr& p, const rr& q) {
  if (q.shape() != cond_shape || !is_rc(q)) throw error(errc::not_rc, "wp: postcondition is not a reactive condition");
  return neg_r(rr_seq(p, neg_r(q)));
}

rel to_full(const rr& p) {
  const universe_ptr& up = p.uni_ptr();
  const universe& u = *up;
  const trace_space& ts = u.traces();
  rel r(up, full_alpha);
  const int ns = u.n_states(), nr = u.n_refusals();
  p.for_each([&](const rr_row& row) {
    for (int tr = 0; tr < u.n_traces(); ++tr) {
      int tr1 = ts.concat(tr, row.tt);
      if (tr1 < 0) continue;
      for (int flags = 0; flags < 16; ++flags)
        for (int s1 = 0; s1 < (p.has(d_st1) ? 1 : ns); ++s1)
          for (int f1 = 0; f1 < (p.has(d_ref1) ? 1 : nr); ++f1)
            for (int f0 = 0; f0 < nr; ++f0) {
              binding b;
              b.u = {bool(flags & 1), bool(flags & 2), tr, row.st, static_cast<unsigned>(f0)};
              b.p = {bool(flags & 4), bool(flags & 8), tr1, p.has(d_st1) ? row.st1 : s1,
                     p.has(d_ref1) ? row.ref1 : static_cast<unsigned>(f1)};
              r.insert(b);
            }
    }
  });
  return r;
}

rr from_full(const rel& q, rr_shape shape) {
  if (q.alphabet() != full_alpha) throw error(errc::alphabet_mismatch, "from_full needs the full alphabet");
  if (!is_healthy(health::RR, q)) throw error(errc::not_rr_healthy, "relation is not RR-healthy");
  if (!(exists(q, v_ref) == q)) throw error(errc::not_rr_healthy, "relation depends on the initial refusal");
  const universe& u = q.uni();
  rr r(q.uni_ptr(), rel_shape);
  const int ns = u.n_states(), nr = u.n_refusals();
  for (int st = 0; st < ns; ++st)
    for (int tt = 0; tt < u.n_traces(); ++tt)
      for (int s1 = 0; s1 < ns; ++s1)
        for (int f1 = 0; f1 < nr; ++f1) {
          binding b;
          b.u = {false, false, u.traces().empty(), st, 0};
          b.p = {false, false, tt, s1, static_cast<unsigned>(f1)};
          if (q.contains(b)) r.insert({st, tt, s1, static_cast<unsigned>(f1)});
        }
  return reshape(r, shape);
}

std::string show_row(const universe& u, rr_shape shape, const rr_row& r) {
  std::ostringstream o;
  o << "{tt=" << u.show_trace(r.tt) << ", st=" << u.show_state(r.st);
  if (shape & d_st1) o << ", st'=" << u.show_state(r.st1);
  if (shape & d_ref1) o << ", ref'=" << u.show_refusal(r.ref1);
  o << "}";
  return o.str();
}

}  // namespace rdc
