#include "rdc/health.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace rdc {

namespace {

constexpr std::array<const char*, 20> names = {"R1", "R2c", "R3",  "R3h", "Rs",  "RD1", "RD2",
                                                "RD3", "SRD", "NSRD", "RR",  "RC1", "RC2", "RC",
                                                "R4",  "H1",  "H2",   "H3",  "H",   "N"};

void require_full(const rel& p) {
  if (p.alphabet() != full_alpha) throw error(errc::alphabet_mismatch, "reactive condition needs the full alphabet");
}

void require_ok(const rel& p) {
  if (!p.has(v_ok)) throw error(errc::alphabet_mismatch, "design condition needs ok in the alphabet");
}

rel r1(const rel& p) {
  require_full(p);
  const auto& ts = p.uni().traces();
  rel r = p;
  bits keep(r.raw().size());
  p.for_each([&](const binding& b) {
    if (ts.prefix_le(b.u.tr, b.p.tr)) keep.set(p.index(b));
  });
  r.raw() = std::move(keep);
  return r;
}

rel r2c(const rel& p) {
  require_full(p);
  const auto& ts = p.uni().traces();
  return remap(p, [&](const binding& b) -> std::optional<binding> {
    if (!ts.prefix_le(b.u.tr, b.p.tr)) return b;
    binding c = b;
    c.u.tr = ts.empty();
    c.p.tr = ts.subtract(b.p.tr, b.u.tr);
    return c;
  });
}

rel wait_cond(const universe_ptr& u) {
  return rel::from(u, full_alpha, [](const binding& b) { return b.u.wait; });
}

rel r3h(const rel& p) {
  require_full(p);
  return cond(ii_srd(p.uni_ptr()), wait_cond(p.uni_ptr()), p);
}

rel r3(const rel& p) {
  require_full(p);
  return cond(ii_rea(p.uni_ptr()), wait_cond(p.uni_ptr()), p);
}

rel rs(const rel& p) { return r1(r2c(r3h(p))); }

rel rd1(const rel& p) {
  require_full(p);
  // ok ⇒_r P = R1(¬ok) ∨ P
  rel not_ok = rel::from(p.uni_ptr(), full_alpha, [&](const binding& b) {
    return !b.u.ok && p.uni().traces().prefix_le(b.u.tr, b.p.tr);
  });
  return disj(not_ok, p);
}

rel rd2(const rel& p) { return seq_compose(p, j_rel(p.uni_ptr(), full_alpha)); }
rel rd3(const rel& p) { return seq_compose(p, ii_srd(p.uni_ptr())); }

rel rr(const rel& p) { return exists(r1(r2c(p)), ok_vars); }

rel rc1(const rel& p) {
  // ¬_r((¬_r P) ; true_r)
  const rel tr = true_r_full(p.uni_ptr());
  rel np = conj(neg(p), tr);
  return conj(neg(seq_compose(np, tr)), tr);
}

rel rc2(const rel& p) { return r1(seq_compose(p, trace_decreases(p.uni_ptr()))); }

rel r4(const rel& p) {
  require_full(p);
  const auto& ts = p.uni().traces();
  rel r(p.uni_ptr(), p.alphabet());
  p.for_each([&](const binding& b) {
    if (ts.prefix_le(b.u.tr, b.p.tr) && b.u.tr != b.p.tr) r.insert(b);
  });
  return r;
}

rel h1(const rel& p) {
  require_ok(p);
  rel not_ok = rel::from(p.uni_ptr(), p.alphabet(), [](const binding& b) { return !b.u.ok; });
  return disj(not_ok, p);
}

rel h2(const rel& p) {
  require_ok(p);
  return seq_compose(p, j_rel(p.uni_ptr(), p.alphabet()));
}

rel h3(const rel& p) {
  require_ok(p);
  return seq_compose(p, ii_design(p.uni_ptr(), p.alphabet()));
}

}  // namespace

const char* health_name(health h) { return names[static_cast<std::size_t>(h)]; }

std::optional<health> health_from_name(const std::string& s) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (s == names[i]) return static_cast<health>(i);
  return std::nullopt;
}

const std::vector<health>& all_health() {
  static const std::vector<health> v = [] {
    std::vector<health> r;
    for (std::size_t i = 0; i < names.size(); ++i) r.push_back(static_cast<health>(i));
    return r;
  }();
  return v;
}

rel ii_srd(const universe_ptr& u) {
  const auto& ts = u->traces();
  return rel::from(u, full_alpha, [&](const binding& b) {
    if (!b.u.ok) return ts.prefix_le(b.u.tr, b.p.tr);
    bool same = b.p.ok == b.u.ok && b.p.wait == b.u.wait && b.p.tr == b.u.tr && b.p.ref == b.u.ref;
    return same && (b.u.wait || b.p.st == b.u.st);
  });
}

rel ii_rea(const universe_ptr& u) {
  const auto& ts = u->traces();
  return rel::from(u, full_alpha, [&](const binding& b) {
    if (!b.u.ok) return ts.prefix_le(b.u.tr, b.p.tr);
    return b.u == b.p;
  });
}

rel j_rel(const universe_ptr& u, alpha a) {
  return rel::from(u, a, [](const binding& b) {
    side x = b.u, y = b.p;
    if (x.ok && !y.ok) return false;
    x.ok = y.ok = false;
    return x == y;
  });
}

rel ii_design(const universe_ptr& u, alpha a) {
  return rel::from(u, a, [](const binding& b) { return !b.u.ok || b.u == b.p; });
}

rel true_r_full(const universe_ptr& u) {
  const auto& ts = u->traces();
  return rel::from(u, full_alpha, [&](const binding& b) { return ts.prefix_le(b.u.tr, b.p.tr); });
}

rel trace_decreases(const universe_ptr& u) {
  const auto& ts = u->traces();
  return rel::from(u, full_alpha, [&](const binding& b) { return ts.prefix_le(b.p.tr, b.u.tr); });
}

rel apply(health h, const rel& p) {
  switch (h) {
    case health::R1: return r1(p);
    case health::R2c: return r2c(p);
    case health::R3: return r3(p);
    case health::R3h: return r3h(p);
    case health::Rs: return rs(p);
    case health::RD1: return rd1(p);
    case health::RD2: return rd2(p);
    case health::RD3: return rd3(p);
    case health::SRD: return rd1(rd2(rs(p)));
    case health::NSRD: return rd1(rd3(rs(p)));
    case health::RR: return rr(p);
    case health::RC1: return rc1(p);
    case health::RC2: return rc2(p);
    case health::RC: return rc1(rr(p));
    case health::R4: return r4(p);
    case health::H1: return h1(p);
    case health::H2: return h2(p);
    case health::H3: return h3(p);
    case health::H: return h1(h2(p));
    case health::N: return h1(h3(p));
  }
  throw error(errc::invalid_argument, "unknown healthiness condition");
}

bool is_healthy(health h, const rel& p) { return apply(h, p) == p; }

meta_report check_meta(const rel_fn& f, const std::vector<rel>& samples, std::uint64_t seed, int subsets) {
  meta_report rep;
  if (samples.empty()) return rep;
  std::vector<rel> image;
  image.reserve(samples.size());
  for (const auto& s : samples) image.push_back(f(s));

  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(f(image[i]) == image[i])) {
      rep.idempotent = false;
      rep.failures.push_back("idempotence fails on sample " + std::to_string(i));
    }
  }
  auto mono = [&](const rel& lo, const rel& hi, const rel& flo, const rel& fhi, const std::string& what) {
    // lo ⊆ hi in rows means hi ⊑ lo, so f(hi) ⊑ f(lo) is required.
    if (lo.raw().subset_of(hi.raw()) && !flo.raw().subset_of(fhi.raw())) {
      rep.monotone = false;
      rep.failures.push_back("monotonicity fails on " + what);
    }
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (i != j) mono(samples[i], samples[j], image[i], image[j], "pair " + std::to_string(i) + "," + std::to_string(j));
    }
    std::size_t j = (i + 1) % samples.size();
    rel lo = conj(samples[i], samples[j]);
    mono(lo, samples[i], f(lo), image[i], "meet with sample " + std::to_string(j));
  }

  std::mt19937_64 rng(seed);
  for (int k = 0; k < subsets; ++k) {
    std::size_t want = std::min<std::size_t>(samples.size(), 2 + rng() % 4);
    std::vector<std::size_t> pick(samples.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(want);
    std::vector<rel> fam, fimg;
    for (auto i : pick) {
      fam.push_back(samples[i]);
      fimg.push_back(image[i]);
    }
    if (!(f(inf(fam)) == inf(fimg))) {
      rep.continuous = false;
      rep.failures.push_back("continuity fails on subset " + std::to_string(k));
    }
  }
  return rep;
}

meta_report check_meta(health h, const std::vector<rel>& samples, std::uint64_t seed, int subsets) {
  return check_meta([h](const rel& p) { return apply(h, p); }, samples, seed, subsets);
}

bool commutes(const rel_fn& f, const rel_fn& g, const std::vector<rel>& samples, rel* witness) {
  for (const auto& s : samples) {
    if (!(f(g(s)) == g(f(s)))) {
      if (witness) *witness = s;
      return false;
    }
  }
  return true;
}

bool commutes(health a, health b, const std::vector<rel>& samples, rel* witness) {
  return commutes([a](const rel& p) { return apply(a, p); }, [b](const rel& p) { return apply(b, p); }, samples,
                  witness);
}

theory_bounds theory_lattice(health h, const universe_ptr& u, alpha a) {
  return {apply(h, rel::top(u, a)), apply(h, rel::bottom(u, a))};
}

}  // namespace rdc
