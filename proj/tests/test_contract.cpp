#include "doctest.h"
#include "support.hpp"

using namespace rdc;

namespace {

contract a_skip(const universe_ptr& u) { return prefix_skip(u, test::event_ix(*u, "a")); }

std::vector<contract> contracts(const universe_ptr& u, int n, std::uint64_t seed) {
  sampler s(u, seed);
  std::vector<contract> out;
  for (int i = 0; i < n; ++i) out.push_back(s.contract_sample(1));
  return out;
}

}  // namespace

TEST_CASE("construction and normalisation") {
  auto u = law_universe(2);
  CHECK(mk_contract(true_r(u), false_r(u, peri_shape), ii_r(u)) == skip_srd(u));
  sampler s(u, 41);
  for (int i = 0; i < 5; ++i) {
    const rr peri = s.reactive(peri_shape, 2), post = s.reactive(post_shape, 2);
    CHECK(mk_contract(false_r(u), peri, post) == chaos(u));
    const contract c = mk_contract(s.condition(), peri, post);
    CHECK(is_healthy(health::NSRD, expand(c)));
    CHECK(contract_of(expand(c)) == c);
    CHECK(same_relation(from_full(peri_R(expand(c)), peri_shape), implies_r(c.pre(), peri)));
  }
  CHECK(expand(miracle(u)) == apply(health::SRD, rel::top(u, full_alpha)));
}

TEST_CASE("lattice ends") {
  auto u = law_universe(2);
  for (const contract& c : contracts(u, 10, 42)) {
    CHECK(refines(c, miracle(u)).holds);
    CHECK(refines(chaos(u), c).holds);
  }
  CHECK(assigns_R(u, [](int st) { return std::optional<int>(st); }) == skip_srd(u));
}

TEST_CASE("sequential composition") {
  auto u = law_universe(2);
  const auto cs = contracts(u, 10, 43);
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    const contract& c = cs[i];
    CHECK(seq(skip_srd(u), c) == c);
    CHECK(seq(c, miracle(u)) == mk_contract(c.pre(), c.peri(), false_r(u, post_shape)));
    reset_truncations();
    const contract triple = seq(c, cs[i + 1]);
    CHECK(truncations() == 0);
    CHECK(contract_of(seq_compose(expand(c), expand(cs[i + 1]))) == triple);
  }
}

TEST_CASE("choice, conjunction and conditional") {
  auto u = law_universe(2);
  const auto cs = contracts(u, 8, 44);
  auto x_set = [&](int st) { return u->decode(st)[0] == 1; };
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    const contract &c = cs[i], &d = cs[i + 1];
    CHECK(intchoice(miracle(u), c) == c);
    CHECK(intchoice(chaos(u), c) == chaos(u));
    CHECK(cond(c, [](int) { return true; }, d) == c);
    CHECK(contract_of(disj(expand(c), expand(d))) == intchoice(c, d));
    CHECK(contract_of(conj(expand(c), expand(d))) == conj(c, d));
    const rel b = rel::from(u, full_alpha, [&](const binding& x) { return x_set(x.u.st); });
    CHECK(contract_of(rdc::cond(expand(c), b, expand(d))) == cond(c, x_set, d));
  }
  CHECK_THROWS_AS(intchoice(std::vector<contract>{}), rdc::error);
}

TEST_CASE("powers") {
  auto u = law_universe(2);
  for (const contract& c : contracts(u, 6, 45)) {
    CHECK(power(c, 1) == c);
    CHECK(power(c, 2) == seq(c, c));
  }
  CHECK(power(skip_srd(u), 3) == skip_srd(u));
}

TEST_CASE("productivity") {
  auto u = law_universe(2);
  CHECK(is_productive(a_skip(u)));
  CHECK_FALSE(is_productive(assigns_R(u, [&](int st) { return test::with_slots(*u, st, {{0, 1}}); })));
  CHECK(is_productive(chaos(u)));
}

TEST_CASE("tail recursion of a -> Skip at bound 4") {
  auto u = single_event_universe(4);
  const int a = test::event_ix(*u, "a");
  reset_truncations();
  const contract rec = tail_rec(a_skip(u));
  CHECK(rec.post().empty());
  CHECK(same_relation(rec.pre(), true_r(u)));
  const rr expected = rr::from(u, peri_shape, [&](const rr_row& r) {
    const auto& items = u->traces().items(r.tt);
    return static_cast<int>(items.size()) <= u->bound() && !((r.ref1 >> a) & 1u);
  });
  CHECK(same_relation(rec.peri(), expected));
  // a⁰ through a⁴: the row at the bound still offers a.
  CHECK(rec.peri().size() == 5);
  CHECK_THROWS_AS(tail_rec(skip_srd(u)), rdc::error);

  const rel body = expand(a_skip(u));
  rel_fn f = [&](const rel& x) { return seq_compose(body, apply(health::SRD, x)); };
  const rel least = rdc::mu(f, u, full_alpha), greatest = rdc::nu(f, u, full_alpha);
  CHECK(least == greatest);
  CHECK(expand(rec) == least);
}

TEST_CASE("guardedness") {
  auto u = single_event_universe(3);
  sampler s(u, 46);
  std::vector<rel> samples;
  for (int i = 0; i < 5; ++i) samples.push_back(apply(health::SRD, s.relation(full_alpha, 0.3)));
  const rel body = expand(a_skip(u));
  CHECK(gv_guard_check([&](const rel& x) { return seq_compose(body, apply(health::SRD, x)); }, samples, 2));
  CHECK_FALSE(gv_guard_check([](const rel& x) { return x; }, samples, 2));
  CHECK(gv_guard_check([&](const rel&) { return body; }, samples, 2));
}

TEST_CASE("refinement and equivalence") {
  auto u = law_universe(2);
  for (const contract& c : contracts(u, 5, 47)) {
    CHECK(refines(c, c).holds);
    CHECK(equiv(c, c));
  }
  CHECK(refines(cdf(u), a_skip(u)).holds);
  const auto r = refines(cdf(u), stop(u));
  CHECK_FALSE(r.holds);
  CHECK(r.obligations[0].holds);
  CHECK_FALSE(r.obligations[1].holds);
  CHECK(r.obligations[2].holds);
  REQUIRE_FALSE(r.obligations[1].witnesses.empty());
  for (const auto& w : r.obligations[1].witnesses) CHECK(w.ref1 == u->all_events());

  CHECK(equiv(assigns_R(u, [](int st) { return std::optional<int>(st); }), skip_srd(u)));
  const state_fn flip = [&](int st) { return test::with_slots(*u, st, {{0, 1 - u->decode(st)[0]}}); };
  const state_fn one = [&](int st) { return test::with_slots(*u, st, {{0, 1}}); };
  CHECK(equiv(seq(assigns_R(u, flip), assigns_R(u, one)), assigns_R(u, [&](int st) { return one(*flip(st)); })));
}

TEST_CASE("rdlaws and ralaws suites pass") {
  for (const char* suite : {"rdlaws", "ralaws"}) {
    const auto rep = run_suite(suite, {0, 20});
    for (const auto& l : rep.laws) {
      INFO(suite << " " << l.name << ": " << l.witness);
      CHECK(l.holds);
    }
  }
}
