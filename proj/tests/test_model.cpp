#include "doctest.h"
#include "support.hpp"

using namespace rdc;

namespace {

state_fn set_x(const universe& u, int v) {
  return [&u, v](int st) { return test::with_slots(u, st, {{0, v}}); };
}

}  // namespace

TEST_CASE("lattice ends") {
  auto u = law_universe(1);
  const rel top = rel::top(u, full_alpha), bot = rel::bottom(u, full_alpha);
  CHECK(top.empty());
  const std::size_t sides = 2 * 2 * u->n_traces() * u->n_states() * u->n_refusals();
  CHECK(bot.size() == sides * sides);
  CHECK(refined_by(bot, top));
  CHECK_FALSE(refined_by(top, bot));
}

TEST_CASE("boolean structure") {
  auto u = law_universe(1);
  sampler s(u, 1);
  for (int i = 0; i < 10; ++i) {
    const rel p = s.relation(full_alpha);
    CHECK(conj(p, rel::bottom(u, full_alpha)) == p);
    CHECK(neg(neg(p)) == p);
    CHECK(disj(p, neg(p)) == rel::bottom(u, full_alpha));
    CHECK(exists(p, 0) == p);
  }
  CHECK(exists(rel::bottom(u, full_alpha), v_ok) == rel::bottom(u, full_alpha));
}

TEST_CASE("exists over the final state") {
  auto u = test::int_universe(0, 3);
  const rel x1 = rel::from(u, state_alpha, [&](const binding& b) { return u->decode(b.p.st)[0] == 1; });
  CHECK(exists(x1, primed(v_st)) == rel::bottom(u, state_alpha));
}

TEST_CASE("substitution") {
  auto u = law_universe(1);
  sampler s(u, 2);
  const rel p = s.relation(full_alpha);
  const rel ok = rel::from(u, full_alpha, [](const binding& b) { return b.u.ok; });
  auto set_ok = [](binding& b) { b.u.ok = true; };
  CHECK(subst(conj(ok, p), set_ok) == subst(p, set_ok));
  const rel same_tr = rel::from(u, full_alpha, [](const binding& b) { return b.p.tr == b.u.tr; });
  CHECK(subst(same_tr, [](binding& b) { b.p.tr = b.u.tr; }) == rel::bottom(u, full_alpha));
}

TEST_CASE("sequential composition") {
  auto u = test::int_universe(0, 3);
  sampler s(u, 3);
  const rel ii = skip_rel(u, state_alpha);
  for (int i = 0; i < 10; ++i) {
    const rel p = s.relation(state_alpha);
    CHECK(seq_compose(ii, p) == p);
    CHECK(seq_compose(p, ii) == p);
    CHECK(seq_compose(rel::top(u, state_alpha), p).empty());
    CHECK(seq_compose(p, rel::top(u, state_alpha)).empty());
  }
  // x := 1 ; x := x + 1 is x := 2, checked against an enumerated relation.
  const rel inc = assign_rel(u, state_alpha, [&](int st) -> std::optional<int> {
    return test::with_slots(*u, st, {{0, u->decode(st)[0] + 1}});
  });
  const rel two = rel::from(u, state_alpha, [&](const binding& b) { return u->decode(b.p.st)[0] == 2; });
  CHECK(seq_compose(assign_rel(u, state_alpha, set_x(*u, 1)), inc) == two);
}

TEST_CASE("conditional") {
  auto u = test::int_universe(0, 3);
  sampler s(u, 4);
  const rel pos = rel::from(u, state_alpha, [&](const binding& b) { return u->decode(b.u.st)[0] > 1; });
  for (int i = 0; i < 10; ++i) {
    const rel p = s.relation(state_alpha), q = s.relation(state_alpha), r = s.relation(state_alpha);
    CHECK(cond(p, rel::bottom(u, state_alpha), q) == p);
    CHECK(cond(p, pos, p) == p);
    CHECK(seq_compose(cond(p, pos, q), r) == cond(seq_compose(p, r), pos, seq_compose(q, r)));
  }
  CHECK_THROWS_AS(cond(pos, skip_rel(u, state_alpha), pos), rdc::error);
}

TEST_CASE("assignment") {
  auto u = test::int_universe(0, 1);
  CHECK(skip_rel(u, state_alpha) == assign_rel(u, state_alpha, [](int st) { return std::optional<int>(st); }));
  CHECK(assign_rel(u, state_alpha, set_x(*u, 1)).size() == static_cast<std::size_t>(u->n_states()));

  // σ then ρ equals ρ ∘ σ, enumerated over every pair of total state maps on x, y : 0..1.
  auto v = test::xy_universe();
  const int n = v->n_states();
  std::vector<std::vector<int>> maps;
  for (int code = 0; code < n * n * n * n; ++code) {
    std::vector<int> m(n);
    for (int k = 0, c = code; k < n; ++k, c /= n) m[k] = c % n;
    maps.push_back(m);
  }
  for (std::size_t i = 0; i < maps.size(); i += 7)
    for (std::size_t j = 0; j < maps.size(); j += 11) {
      auto sigma = [&](int st) { return std::optional<int>(maps[i][st]); };
      auto rho = [&](int st) { return std::optional<int>(maps[j][st]); };
      auto both = [&](int st) { return std::optional<int>(maps[j][maps[i][st]]); };
      CHECK(seq_compose(assign_rel(v, state_alpha, sigma), assign_rel(v, state_alpha, rho)) ==
            assign_rel(v, state_alpha, both));
    }
}

TEST_CASE("refinement") {
  auto u = test::xy_universe();
  sampler s(u, 5);
  const rel p = s.relation(design_alpha);
  CHECK(refines(p, p).holds);
  CHECK(refines(p, rel::top(u, design_alpha)).holds);
  const rel x1 = state_pred(u, [](int) { return true; });
  const rel post = rel::from(u, state_alpha, [&](const binding& b) { return u->decode(b.p.st)[0] == 1; });
  const rel post_frame = rel::from(u, state_alpha, [&](const binding& b) {
    return u->decode(b.p.st)[0] == 1 && u->decode(b.p.st)[1] == u->decode(b.u.st)[1];
  });
  CHECK(refines(make_design(x1, post), make_design(x1, post_frame)).holds);
  const auto r = refines(make_design(x1, post_frame), make_design(x1, post), 3);
  CHECK_FALSE(r.holds);
  CHECK(r.witnesses.size() == 3);
}

TEST_CASE("indexed infimum") {
  auto u = law_universe(1);
  sampler s(u, 6);
  const rel p = s.relation(full_alpha), q = s.relation(full_alpha), r = s.relation(full_alpha);
  CHECK(inf({p}) == p);
  CHECK(inf({p, rel::top(u, full_alpha)}) == p);
  CHECK(seq_compose(inf({p, q}), r) == inf({seq_compose(p, r), seq_compose(q, r)}));
  CHECK(seq_compose(r, inf({p, q})) == inf({seq_compose(r, p), seq_compose(r, q)}));
  CHECK_THROWS_AS(inf({}), rdc::error);
}

TEST_CASE("fixed points") {
  auto u = test::int_universe(0, 3);
  sampler s(u, 7);
  const rel p = s.relation(state_alpha);
  CHECK(mu([](const rel& x) { return x; }, u, state_alpha) == rel::bottom(u, state_alpha));
  CHECK(nu([](const rel& x) { return x; }, u, state_alpha).empty());
  CHECK(mu([&](const rel&) { return p; }, u, state_alpha) == p);
  // A non-monotone function is rejected.
  CHECK_THROWS_AS(mu([](const rel& x) { return neg(x); }, u, state_alpha, {p}), rdc::error);
}

TEST_CASE("universe rejects out-of-domain states") {
  auto u = test::int_universe(0, 3);
  CHECK_FALSE(u->encode({4}).has_value());
  CHECK(u->encode({2}).has_value());
}

TEST_CASE("relational suite passes") {
  const auto rep = run_suite("relational", {0, 30});
  for (const auto& l : rep.laws) {
    INFO(l.name << ": " << l.witness);
    CHECK(l.holds);
  }
}
