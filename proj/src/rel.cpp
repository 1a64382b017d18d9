#include "rdc/rel.hpp"

#include <sstream>

namespace rdc {

namespace {

void require_same(const rel& p, const rel& q) {
  if (!p.same_space(q)) throw error(errc::alphabet_mismatch, "relations over different alphabets");
}

// Calls f on every side obtained from s by reassigning the fields in `mask`
// that belong to the alphabet of r.
template <class F>
void vary(const rel& r, side s, unsigned mask, F&& f) {
  mask &= r.alphabet();
  const universe& u = r.uni();
  if (mask & v_ok) {
    for (bool x : {false, true}) {
      s.ok = x;
      vary(r, s, mask & ~v_ok, f);
    }
  } else if (mask & v_wait) {
    for (bool x : {false, true}) {
      s.wait = x;
      vary(r, s, mask & ~v_wait, f);
    }
  } else if (mask & v_tr) {
    for (int t = 0; t < u.n_traces(); ++t) {
      s.tr = t;
      vary(r, s, mask & ~v_tr, f);
    }
  } else if (mask & v_st) {
    for (int x = 0; x < u.n_states(); ++x) {
      s.st = x;
      vary(r, s, mask & ~v_st, f);
    }
  } else if (mask & v_ref) {
    for (int x = 0; x < u.n_refusals(); ++x) {
      s.ref = static_cast<unsigned>(x);
      vary(r, s, mask & ~v_ref, f);
    }
  } else {
    f(s);
  }
}

}  // namespace

rel::rel(universe_ptr u, alpha a) : u_(std::move(u)), a_(a) {
  if (!u_) throw error(errc::invalid_argument, "relation without a universe");
  if (a_ & ~full_alpha) throw error(errc::invalid_argument, "unknown observational variable");
  n_tr_ = (a_ & v_tr) ? u_->n_traces() : 1;
  n_st_ = (a_ & v_st) ? u_->n_states() : 1;
  n_ref_ = (a_ & v_ref) ? u_->n_refusals() : 1;
  const double sides = ((a_ & v_ok) ? 2.0 : 1.0) * ((a_ & v_wait) ? 2 : 1) * n_tr_ * n_st_ * n_ref_;
  // 2^31 bindings is 256 MiB of bits; beyond that the monolithic model is out of reach.
  if (sides * sides > 2147483648.0)
    throw error(errc::alphabet_too_large, "universe too large for the full-binding model");
  nside_ = static_cast<int>(sides);
  rows_ = bits(static_cast<std::size_t>(nside_) * nside_);
}

rel rel::bottom(universe_ptr u, alpha a) {
  rel r(std::move(u), a);
  r.rows_ = bits(r.rows_.size(), true);
  return r;
}

rel rel::from(universe_ptr u, alpha a, const std::function<bool(const binding&)>& pred) {
  rel r(std::move(u), a);
  for (std::size_t i = 0; i < r.rows_.size(); ++i)
    if (pred(r.binding_at(i))) r.rows_.set(i);
  return r;
}

int rel::side_index(const side& s) const {
  int x = 0;
  if (a_ & v_ok) x = s.ok ? 1 : 0;
  if (a_ & v_wait) x = x * 2 + (s.wait ? 1 : 0);
  x = x * n_tr_ + ((a_ & v_tr) ? s.tr : 0);
  x = x * n_st_ + ((a_ & v_st) ? s.st : 0);
  x = x * n_ref_ + ((a_ & v_ref) ? static_cast<int>(s.ref) : 0);
  return x;
}

side rel::side_at(int i) const {
  side s;
  s.ref = static_cast<unsigned>(i % n_ref_);
  i /= n_ref_;
  s.st = i % n_st_;
  i /= n_st_;
  s.tr = i % n_tr_;
  i /= n_tr_;
  if (a_ & v_wait) {
    s.wait = i % 2;
    i /= 2;
  }
  if (a_ & v_ok) s.ok = i % 2;
  return s;
}

side rel::canonical(side s) const {
  if (!(a_ & v_ok)) s.ok = false;
  if (!(a_ & v_wait)) s.wait = false;
  if (!(a_ & v_tr)) s.tr = 0;
  if (!(a_ & v_st)) s.st = 0;
  if (!(a_ & v_ref)) s.ref = 0;
  return s;
}

bool rel::operator==(const rel& o) const { return same_space(o) && rows_ == o.rows_; }

rel conj(const rel& p, const rel& q) {
  require_same(p, q);
  rel r = p;
  r.raw() &= q.raw();
  return r;
}

rel disj(const rel& p, const rel& q) {
  require_same(p, q);
  rel r = p;
  r.raw() |= q.raw();
  return r;
}

rel neg(const rel& p) {
  rel r = p;
  r.raw().flip();
  return r;
}

rel implies(const rel& p, const rel& q) { return disj(neg(p), q); }

rel exists(const rel& p, var_set vars) {
  unsigned lo = vars & full_alpha, hi = (vars >> 5) & full_alpha;
  if ((lo | hi) & ~p.alphabet()) throw error(errc::alphabet_mismatch, "quantified variable not in alphabet");
  if (!lo && !hi) return p;
  rel r(p.uni_ptr(), p.alphabet());
  const int n = p.side_count();
  // Rows are independent on each side, so quantify the two sides separately.
  std::vector<std::vector<int>> lo_class(n), hi_class(n);
  for (int i = 0; i < n; ++i) {
    side s = p.side_at(i);
    vary(p, s, lo, [&](const side& t) { lo_class[i].push_back(p.side_index(t)); });
    vary(p, s, hi, [&](const side& t) { hi_class[i].push_back(p.side_index(t)); });
  }
  p.for_each([&](const binding& b) {
    int ui = p.side_index(b.u), pi = p.side_index(b.p);
    for (int a : lo_class[ui])
      for (int c : hi_class[pi]) r.raw().set(static_cast<std::size_t>(a) * n + c);
  });
  return r;
}

rel remap(const rel& p, const std::function<std::optional<binding>(const binding&)>& f) {
  rel r(p.uni_ptr(), p.alphabet());
  const std::size_t total = r.raw().size();
  for (std::size_t i = 0; i < total; ++i) {
    auto b = f(r.binding_at(i));
    if (b && p.contains(*b)) r.raw().set(i);
  }
  return r;
}

rel subst(const rel& p, const std::function<void(binding&)>& update) {
  return remap(p, [&](const binding& b) -> std::optional<binding> {
    binding c = b;
    update(c);
    c.u = p.canonical(c.u);
    c.p = p.canonical(c.p);
    return c;
  });
}

rel extend(const rel& p, alpha to) {
  if ((p.alphabet() & ~to) != 0) throw error(errc::alphabet_mismatch, "extend: target alphabet is smaller");
  rel r(p.uni_ptr(), to);
  const std::size_t total = r.raw().size();
  for (std::size_t i = 0; i < total; ++i) {
    binding b = r.binding_at(i);
    b.u = p.canonical(b.u);
    b.p = p.canonical(b.p);
    if (p.contains(b)) r.raw().set(i);
  }
  return r;
}

rel project(const rel& p, alpha to) {
  if ((to & ~p.alphabet()) != 0) throw error(errc::alphabet_mismatch, "project: target alphabet is larger");
  rel r(p.uni_ptr(), to);
  p.for_each([&](const binding& b) { r.insert({r.canonical(b.u), r.canonical(b.p)}); });
  return r;
}

rel seq_compose(const rel& p, const rel& q) {
  require_same(p, q);
  rel r(p.uni_ptr(), p.alphabet());
  const std::size_t n = static_cast<std::size_t>(p.side_count());
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t row = u * n;
    for (std::size_t m = p.raw().next(row); m < row + n; m = p.raw().next(m + 1))
      r.raw().or_range(row, q.raw(), (m - row) * n, n);
  }
  return r;
}

bool unprimed_only(const rel& b) {
  const std::size_t n = static_cast<std::size_t>(b.side_count());
  for (std::size_t u = 0; u < n; ++u) {
    bool any = b.raw().any_in_range(u * n, n);
    if (any) {
      for (std::size_t v = 0; v < n; ++v)
        if (!b.raw().test(u * n + v)) return false;
    }
  }
  return true;
}

rel cond(const rel& p, const rel& b, const rel& q) {
  require_same(p, q);
  require_same(p, b);
  if (!unprimed_only(b)) throw error(errc::invalid_argument, "conditional guard mentions primed variables");
  return disj(conj(b, p), conj(neg(b), q));
}

rel skip_rel(universe_ptr u, alpha a) {
  rel r(std::move(u), a);
  const std::size_t n = static_cast<std::size_t>(r.side_count());
  for (std::size_t i = 0; i < n; ++i) r.raw().set(i * n + i);
  return r;
}

rel assign_rel(universe_ptr u, alpha a, const std::function<std::optional<int>(int)>& sigma) {
  rel r(std::move(u), a);
  const int n = r.side_count();
  for (int i = 0; i < n; ++i) {
    side s = r.side_at(i);
    side t = s;
    if (a & v_st) {
      auto v = sigma(s.st);
      if (!v) continue;
      t.st = *v;
    }
    r.insert({s, t});
  }
  return r;
}

refinement refines(const rel& p, const rel& q, std::size_t max_witnesses) {
  require_same(p, q);
  refinement out;
  bits extra = q.raw();
  extra.subtract(p.raw());
  out.holds = extra.none();
  for (std::size_t i = extra.next(0); i < extra.size() && out.witnesses.size() < max_witnesses; i = extra.next(i + 1))
    out.witnesses.push_back(q.binding_at(i));
  return out;
}

bool refined_by(const rel& p, const rel& q) {
  require_same(p, q);
  return q.raw().subset_of(p.raw());
}

rel inf(const std::vector<rel>& family) {
  if (family.empty()) throw error(errc::empty_family, "infimum of an empty family");
  rel r = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) r = disj(r, family[i]);
  return r;
}

rel sup(const std::vector<rel>& family) {
  if (family.empty()) throw error(errc::empty_family, "supremum of an empty family");
  rel r = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) r = conj(r, family[i]);
  return r;
}

rel iterate(const rel_fn& f, rel start, int* steps) {
  int k = 0;
  while (true) {
    rel next = f(start);
    if (next == start) break;
    start = std::move(next);
    ++k;
  }
  if (steps) *steps = k;
  return start;
}

namespace {

void check_monotone(const rel_fn& f, const std::vector<rel>& samples) {
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      // samples[i] ∧ samples[j] ⊆ samples[i], so its image must be too.
      rel lo = conj(samples[i], samples[j]);
      if (!f(lo).raw().subset_of(f(samples[i]).raw()))
        throw error(errc::not_monotone, "function is not monotone on sampled relations");
    }
}

rel chain(const rel_fn& f, rel x, bool descending) {
  while (true) {
    rel next = f(x);
    if (next == x) return x;
    bool ordered = descending ? next.raw().subset_of(x.raw()) : x.raw().subset_of(next.raw());
    if (!ordered) throw error(errc::not_monotone, "fixed-point iteration is not a chain");
    x = std::move(next);
  }
}

}  // namespace

rel mu(const rel_fn& f, universe_ptr u, alpha a, const std::vector<rel>& samples) {
  check_monotone(f, samples);
  return chain(f, rel::bottom(std::move(u), a), true);
}

rel nu(const rel_fn& f, universe_ptr u, alpha a, const std::vector<rel>& samples) {
  check_monotone(f, samples);
  return chain(f, rel::top(std::move(u), a), false);
}

std::string show_binding(const universe& u, alpha a, const binding& b) {
  std::ostringstream o;
  bool first = true;
  auto field = [&](const std::string& name, const std::string& val) {
    o << (first ? "{" : ", ") << name << "=" << val;
    first = false;
  };
  if (a & v_ok) {
    field("ok", b.u.ok ? "1" : "0");
    field("ok'", b.p.ok ? "1" : "0");
  }
  if (a & v_wait) {
    field("wait", b.u.wait ? "1" : "0");
    field("wait'", b.p.wait ? "1" : "0");
  }
  if (a & v_tr) {
    field("tr", u.show_trace(b.u.tr));
    field("tr'", u.show_trace(b.p.tr));
  }
  if (a & v_st) {
    field("st", u.show_state(b.u.st));
    field("st'", u.show_state(b.p.st));
  }
  if (a & v_ref) {
    field("ref", u.show_refusal(b.u.ref));
    field("ref'", u.show_refusal(b.p.ref));
  }
  if (first) o << "{";
  o << "}";
  return o.str();
}

}  // namespace rdc
