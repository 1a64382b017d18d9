#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace rdc;

TEST_CASE("interleaving merge") {
  auto u = law_universe(2);
  const merge_rel m = interleave_merge(u);
  const int a = test::event_ix(*u, "a"), b = test::event_ix(*u, "b");
  const auto& ts = u->traces();
  const int st = 0, empty_ref = 0;
  bits out(static_cast<std::size_t>(contribution_count(*u)));
  CHECK(m.outputs(st, contribution_of(*u, ts.single(a), st, empty_ref), contribution_of(*u, ts.single(b), st, empty_ref),
                  out) == 0);
  std::set<int> traces;
  out.for_each([&](std::size_t c) { traces.insert(contribution_row(*u, st, static_cast<int>(c)).tt); });
  CHECK(traces == std::set<int>{ts.index({a, b}), ts.index({b, a})});
  CHECK(m.symmetric());

  // Refusals intersect.
  const unsigned ra = 1u << a, rab = (1u << a) | (1u << b);
  bits out2(static_cast<std::size_t>(contribution_count(*u)));
  m.outputs(st, contribution_of(*u, ts.empty(), st, ra), contribution_of(*u, ts.empty(), st, rab), out2);
  out2.for_each([&](std::size_t c) { CHECK((contribution_row(*u, st, static_cast<int>(c)).ref1 & ~ra) == 0u); });
}

TEST_CASE("Miracle annihilates parallel composition") {
  auto u = law_universe(2);
  sampler s(u, 51);
  const merge_rel m = interleave_merge(u);
  for (int i = 0; i < 20; ++i) {
    const contract c = s.contract_sample(1);
    CHECK(rd_par(miracle(u), c, m) == miracle(u));
  }
}

TEST_CASE("parallel composition against the full model") {
  auto u = law_universe(2);
  sampler s(u, 52);
  const merge_rel m = interleave_merge(u);
  for (int i = 0; i < 3; ++i) {
    const contract c = s.contract_sample(1), d = s.contract_sample(1);
    reset_truncations();
    const contract triple = rd_par(c, d, m);
    CHECK(truncations() == 0);
    const rel mono = par_by_merge(expand(c), expand(d), m);
    CHECK(contract_of(mono) == triple);
    CHECK(is_healthy(health::NSRD, mono));
  }
  CHECK(par_by_merge(expand(miracle(u)), expand(s.contract_sample(1)), m) == expand(miracle(u)));
}

TEST_CASE("interleaving calculation") {
  const std::string src =
      "channel a\nchannel b\nbound 2\n"
      "process L = a -> skip\nprocess R = b -> stop\n"
      "process Par = L ||| R\n"
      "process Choice = a -> b -> stop [] b -> a -> stop\n";
  denoter d(parse_spec(src));
  CHECK(equiv(d.resolve("Par"), d.resolve("Choice")));
  CHECK(d.resolve("Par") == d.resolve("Choice"));
  CHECK(contract_of(par_by_merge(expand(d.resolve("L")), expand(d.resolve("R")), d.interleaving())) ==
        d.resolve("Par"));
}

TEST_CASE("weakest rely") {
  auto u = law_universe(2);
  sampler s(u, 53);
  const merge_rel m = interleave_merge(u);
  for (int i = 0; i < 10; ++i) {
    const rr p1 = s.reactive(rel_shape, 1), p2 = s.reactive(rel_shape, 1);
    const rr q = s.condition();
    CHECK(same_relation(wpp(false_r(u, rel_shape), m, q), true_r(u)));
    CHECK(same_relation(wpp(p1, m, true_r(u)), true_r(u)));
    CHECK(same_relation(wpp(disj_r(p1, p2), m, q), conj_r(wpp(p1, m, q), wpp(p2, m, q))));
    CHECK(is_rc(wpp(p1, m, q)));
  }
  const rr not_rc = rr::from(u, cond_shape, [&](const rr_row& r) { return r.tt == u->traces().single(0); });
  CHECK_THROWS_AS(wpp(true_r(u, rel_shape), m, not_rc), rdc::error);
}

TEST_CASE("asymmetric merges are rejected") {
  auto u = law_universe(1);
  const merge_rel left(u, "left", [&](int st, int l, int, bits& out) -> std::size_t {
    (void)st;
    out.set(static_cast<std::size_t>(l));
    return 0;
  });
  CHECK_FALSE(left.symmetric());
  try {
    rd_par(skip_srd(u), skip_srd(u), left);
    FAIL("expected merge_not_symmetric");
  } catch (const rdc::error& e) {
    CHECK(e.code() == errc::merge_not_symmetric);
  }
}

TEST_CASE("parallel suite passes") {
  const auto rep = run_suite("parallel", {0, 10});
  for (const auto& l : rep.laws) {
    INFO(l.name << ": " << l.witness);
    CHECK(l.holds);
  }
}
