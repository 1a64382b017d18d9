// Acceptance runner: one PASS/FAIL line per criterion, with time limits.
//
//   acceptance [--only N[,M...]] [--expect-red N[,M...]]
//
// Exits 0 iff the set of failing criteria equals the expected-red set, so a
// criterion that is known to be unattainable stays visibly red without
// breaking the build, and any other regression (or an unexpected pass) fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mondex_oracle.hpp"
#include "support.hpp"

using namespace rdc;

namespace {

struct outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct criterion {
  int id;
  std::string title;
  double limit_s;  // 0: no time limit
  std::function<void(outcome&)> run;
};

// Law suites are shared between criteria; each is run once per sample size.
const suite_report& suite(const std::string& name, int samples) {
  static std::map<std::pair<std::string, int>, suite_report> cache;
  auto key = std::make_pair(name, samples);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, run_suite(name, {0, samples})).first;
  return it->second;
}

// Every law of the report whose name satisfies `pick` must hold and have been
// checked at least `min_checked` times; at least one law must match.
void require_laws(outcome& o, const suite_report& r, const std::function<bool(const std::string&)>& pick,
                  std::size_t min_checked = 1) {
  int matched = 0;
  for (const auto& l : r.laws) {
    if (!pick(l.name)) continue;
    ++matched;
    o.require(l.holds, r.suite + "/" + l.name + ": " + l.witness.substr(0, 200));
    o.require(l.checked >= min_checked,
              r.suite + "/" + l.name + " checked " + std::to_string(l.checked) + " < " + std::to_string(min_checked));
  }
  o.require(matched > 0, "no law selected in " + r.suite);
}

void require_law(outcome& o, const suite_report& r, const std::string& name, std::size_t min_checked = 1) {
  const law_result* l = r.find(name);
  o.require(l != nullptr, r.suite + "/" + name + " missing");
  if (l) require_laws(o, r, [&](const std::string& n) { return n == name; }, min_checked);
}

void report_counts(outcome& o, const suite_report& r) {
  std::size_t laws = r.laws.size(), failed = 0;
  for (const auto& l : r.laws) failed += !l.holds;
  o.detail << " " << r.suite << ": " << laws - failed << "/" << laws << " laws hold;";
}

// Closed equations are checked once; every other law must have seen `n` samples.
void require_sampled(outcome& o, const suite_report& r, const std::set<std::string>& closed, std::size_t n) {
  require_laws(o, r, [&](const std::string& name) { return closed.count(name) > 0; });
  require_laws(o, r, [&](const std::string& name) { return closed.count(name) == 0; }, n);
}

// ---------------------------------------------------------------- criteria

void c1_trace(outcome& o) {
  const auto& r = suite("trace", 0);
  require_laws(o, r, [](const std::string&) { return true; });
  for (const char* law : {"TA1 associativity", "TA2 unit", "TA3 left cancellation", "TA4 right cancellation",
                          "TA5 empty sum"})
    require_law(o, r, law);
  report_counts(o, r);
}

void c2_relational(outcome& o) {
  const auto& r = suite("relational", 100);
  require_sampled(o, r, {"mu identity is bottom", "nu identity is top", "skip is identity assignment"}, 100);
  report_counts(o, r);
}

void c3_healthiness(outcome& o) {
  const auto& r = suite("healthiness", 50);
  for (const char* h : {"SRD", "NSRD", "RR", "RC", "Rs"})
    for (const char* p : {" idempotent", " monotone", " continuous"}) require_law(o, r, std::string(h) + p);
  require_law(o, r, "R1 R2c commute");
  require_law(o, r, "H1 R1 do not commute");
  report_counts(o, r);
}

void c4_extraction(outcome& o) {
  const auto& r = suite("rdlaws", 200);
  require_law(o, r, "extract round trip", 200);
  for (const char* law : {"extract pre", "extract peri", "extract post"}) require_law(o, r, law, 200);
  report_counts(o, r);
}

void c5_laws(outcome& o) {
  const auto& rd = suite("rdlaws", 200);
  const auto& ra = suite("ralaws", 200);
  for (int i = 1; i <= 10; ++i) require_law(o, rd, "RD" + std::to_string(i), 200);
  for (int i = 1; i <= 5; ++i) require_law(o, ra, "RA" + std::to_string(i));
  // RD goldens are the a -> Skip and Stop instances folded into each RD law,
  // plus a dedicated RD9 check; RA1 is itself a closed equation.
  require_law(o, rd, "RD9 golden");
  for (const char* g : {"RA2 golden", "RA3 golden", "RA4 golden", "RA5 golden"}) require_law(o, ra, g);
  require_laws(o, rd, [](const std::string&) { return true; });
  require_laws(o, ra, [](const std::string&) { return true; });
  report_counts(o, rd);
  report_counts(o, ra);
  o.detail << " suite time " << rd.seconds + ra.seconds << "s;";
  o.require(rd.seconds + ra.seconds < 120, "law suites slower than 2 min");
}

void c6_oracle(outcome& o) {
  const auto& rd = suite("rdlaws", 200);
  const auto& par = suite("parallel", 200);
  for (const char* law : {"oracle seq", "oracle intchoice", "oracle conj", "oracle cond", "oracle power 2"})
    require_law(o, rd, law, 200);
  require_law(o, par, "oracle rd_par", 200);
  require_law(o, rd, "no truncation in oracle pairs");
  require_law(o, par, "no truncation in oracle pairs");
  report_counts(o, rd);
  report_counts(o, par);
}

void c7_examples(outcome& o) {
  denoter d(parse_spec(
      "channel a\nchannel b\nstate x : bool\nbound 2\n"
      "process PA = a -> skip\nprocess S = skip\nprocess T = stop\n"
      "process Div = a -> chaos [] b -> skip\n"
      "process AM = a -> miracle\nprocess Urgent = a -> skip [] miracle\n"
      "process Par = a -> skip ||| b -> stop\nprocess Choice = a -> b -> stop [] b -> a -> stop\n"));
  const auto u = d.uni_ptr();
  const auto& ts = u->traces();
  const int a = test::event_ix(*u, "a"), b = test::event_ix(*u, "b");
  const int e = ts.empty(), ta = ts.single(a), tb = ts.single(b), tab = ts.index({a, b}), tba = ts.index({b, a});
  auto offers = [](unsigned ref, int ev) { return !((ref >> ev) & 1u); };
  const rr tru = true_r(u);
  const rr no_peri = false_r(u, peri_shape), no_post = false_r(u, post_shape);

  // Printed triples, built row by row.
  const contract prefix(tru, rr::from(u, peri_shape, [&](const rr_row& r) { return r.tt == e && offers(r.ref1, a); }),
                        rr::from(u, post_shape, [&](const rr_row& r) { return r.tt == ta && r.st1 == r.st; }));
  o.require(d.resolve("PA") == prefix, "a -> Skip triple");
  const contract skip(tru, no_peri, rr::from(u, post_shape, [&](const rr_row& r) { return r.tt == e && r.st1 == r.st; }));
  o.require(d.resolve("S") == skip, "Skip triple");
  const contract stopc(tru, rr::from(u, peri_shape, [&](const rr_row& r) { return r.tt == e; }), no_post);
  o.require(d.resolve("T") == stopc, "Stop triple");

  const contract div(rr::from(u, cond_shape, [&](const rr_row& r) { return !ts.prefix_le(ta, r.tt); }),
                     rr::from(u, peri_shape, [&](const rr_row& r) { return r.tt == e && offers(r.ref1, a) && offers(r.ref1, b); }),
                     rr::from(u, post_shape, [&](const rr_row& r) { return r.tt == tb && r.st1 == r.st; }));
  o.require(d.resolve("Div") == div, "divergent process contract");

  denoter m(parse_spec("state m : map 0..1 to 0..1\nprocess P = m := {} ; m(0) := 1"));
  o.require(m.resolve("P") == chaos(m.uni_ptr()), "divergent indexed assignment is Chaos");

  // Full-binding forms R(true ⊢ Q). Intermediate observations leave st′ free
  // in this theory, so st′ = st is imposed on terminating observations only.
  auto rdesign = [&](const std::function<bool(const binding&, int)>& q) {
    return apply(health::SRD, rel::from(u, full_alpha, [&](const binding& x) {
      if (!x.u.ok) return true;
      if (!ts.prefix_le(x.u.tr, x.p.tr)) return false;
      return x.p.ok && q(x, ts.subtract(x.p.tr, x.u.tr));
    }));
  };
  o.require(expand(d.resolve("AM")) ==
                rdesign([&](const binding& x, int tt) { return tt == e && offers(x.p.ref, a) && x.p.wait; }),
            "a -> Miracle expansion");
  o.require(expand(d.resolve("Urgent")) ==
                rdesign([&](const binding& x, int tt) { return !x.p.wait && tt == ta && x.p.st == x.u.st; }),
            "a -> Skip [] Miracle expansion");

  // Interleaving: the final pericondition of the calculation, then the choice form.
  // Both completed orders are quiescent with any refusal.
  const contract inter(tru, rr::from(u, peri_shape, [&](const rr_row& r) {
                         if (r.tt == e) return offers(r.ref1, a) && offers(r.ref1, b);
                         return (offers(r.ref1, a) && r.tt == tb) || (offers(r.ref1, b) && r.tt == ta) || r.tt == tab || r.tt == tba;
                       }),
                       no_post);
  o.require(d.resolve("Par") == inter, "interleaving pericondition");
  if (!(d.resolve("Par") == inter)) {
    const rr got = d.resolve("Par").peri();
    got.for_each([&](const rr_row& r) { if (!inter.peri().contains(r)) o.detail << " +" << show_row(*u, peri_shape, r); });
    inter.peri().for_each([&](const rr_row& r) { if (!got.contains(r)) o.detail << " -" << show_row(*u, peri_shape, r); });
  }
  o.require(d.resolve("Choice") == inter, "interleaving equals the choice form");
  o.require(contract_of(par_by_merge(expand(d.resolve("PA")), expand(seq(prefix_skip(u, b), stop(u))),
                                     d.interleaving())) == inter,
            "interleaving through the full-binding merge");
  o.detail << " 9 worked examples compared row by row;";
}

void c8_cdf(outcome& o) {
  auto u = law_universe(2);
  const contract spec = cdf(u);
  o.require(refines(spec, prefix_skip(u, 0)).holds, "CDF refined by a -> Skip");
  const auto r = refines(spec, stop(u));
  o.require(!r.holds, "CDF not refined by Stop");
  o.require(!r.obligations[1].holds, "Stop fails the peri obligation");
  bool full_refusal = !r.obligations[1].witnesses.empty();
  for (const auto& w : r.obligations[1].witnesses) full_refusal = full_refusal && w.ref1 == u->all_events();
  o.require(full_refusal, "counterexample refuses every event");
  if (!r.obligations[1].witnesses.empty())
    o.detail << " counterexample " << show_row(*u, peri_shape, r.obligations[1].witnesses.front()) << ";";
}

void c9_recursion(outcome& o) {
  auto u = single_event_universe(4);
  const int a = 0;
  const auto& ts = u->traces();
  reset_truncations();
  const contract rec = tail_rec(prefix_skip(u, a));
  o.require(rec.post().empty(), "post is false");
  o.require(same_relation(rec.pre(), true_r(u)), "pre is true_r");
  // The stated row set stops at a³. A quiescent a⁴ that still offers a is a
  // trace of length L and is also produced by the least fixed point of the
  // full-binding model, so the stated set is checked literally and the
  // difference is reported.
  const rr stated = rr::from(u, peri_shape, [&](const rr_row& r) { return ts.length(r.tt) <= 3 && !(r.ref1 & 1u); });
  const rr to_bound = rr::from(u, peri_shape, [&](const rr_row& r) { return !(r.ref1 & 1u); });
  o.require(same_relation(rec.peri(), stated), "peri equals {a^i | i <= 3, a offered}");
  const rel body = expand(prefix_skip(u, a));
  const rel_fn f = [&](const rel& x) { return seq_compose(body, apply(health::SRD, x)); };
  const rel lo = rdc::mu(f, u, full_alpha), hi = rdc::nu(f, u, full_alpha);
  o.require(lo == hi, "mu F = nu F");
  o.detail << " peri has " << rec.peri().size() << " rows;";
  if (!same_relation(rec.peri(), stated)) {
    rec.peri().for_each([&](const rr_row& r) {
      if (!stated.contains(r)) o.detail << " extra row " << show_row(*u, peri_shape, r) << ";";
    });
    o.detail << " peri equals {a^i | i <= L}: " << (same_relation(rec.peri(), to_bound) ? "yes" : "no") << ";";
    o.detail << " tail_rec equals mu F: " << (expand(rec) == lo ? "yes" : "no") << ";";
  }
}

void c10_parallel(outcome& o) {
  const auto& par = suite("parallel", 200);
  require_law(o, par, "Miracle annihilates", 20);
  require_law(o, par, "Miracle annihilates in the model", 20);
  for (const char* law : {"wpp false", "wpp true", "wpp choice", "wpp is a condition"}) require_law(o, par, law);
  report_counts(o, par);
}

void c11_lifting(outcome& o) {
  const auto& r = suite("lifting", 100);
  require_sampled(o, r,
                  {"lift top", "lift bottom", "lift skip", "design assigning 1 terminates with 1", "abort is bottom",
                   "hoare assignment"},
                  100);
  report_counts(o, r);
}

std::string reduced_pay_source() {
  const std::string full = mondex_source({});
  const auto from = full.find("process Pay(");
  const auto to = full.find("\n//", from);
  return "channel pay(0..0, 1..1, 1..1)\nchannel reject(0..0)\nchannel accept(0..0)\n"
         "state accts : map 0..1 to 0..2\nbound 2\n" +
         full.substr(from, to - from) + "\n";
}

void c12_mondex(outcome& o) {
  denoter d(mondex_spec({}));
  const auto u = d.uni_ptr();
  o.detail << " " << u->n_events() << " events, " << u->n_states() << " states, " << u->n_traces() << " traces;";
  reset_truncations();
  const contract pay = d.resolve("Pay(0,1,1)");
  o.require(truncations() == 0, "no truncation");
  o.require(pay == test::pay_oracle(u, 0, 1, 1), "Pay(0,1,1) equals the direct encoding");
  o.require(d.resolve("Pay(1,0,1)") == test::pay_oracle(u, 1, 0, 1), "Pay(1,0,1) equals the direct encoding");
  o.require(d.resolve("Pay(0,0,1)") == test::pay_oracle(u, 0, 0, 1), "Pay(0,0,1) equals the direct encoding");

  // The full-binding route at the desk-scale alphabet needs ~10^15 bits; it is
  // run on a one-transfer alphabet with the same process text instead.
  denoter small(parse_spec(reduced_pay_source()));
  const contract tri = small.resolve("Pay(0,1,1)");
  const contract mono = contract_of(small.resolve_full("Pay(0,1,1)"));
  o.require(tri == mono, "reduced alphabet: triple route equals full-binding route");
  o.require(tri == test::pay_oracle(small.uni_ptr(), 0, 1, 1), "reduced alphabet: triple equals direct encoding");

  auto verify = [&](const std::string& spec, const std::string& impl) {
    const auto r = refines(d.resolve(spec), d.resolve(impl));
    o.require(r.holds, spec + " refined by " + impl);
  };
  for (const char* impl : {"Pay(0,1,1)", "Pay(1,0,1)", "Pay(0,0,1)", "SomePayAll", "System"}) {
    verify("Conservation", impl);
    verify("NoOverdraft", impl);
  }
  verify("Acceptance(0,1,1)", "Pay(0,1,1)");
  verify("Acceptance(1,0,1)", "Pay(1,0,1)");

  const auto broken = refines(d.resolve("Conservation"), d.resolve("PayCreditOnly(0,1,1)"), 1);
  o.require(!broken.holds && !broken.obligations[2].holds, "credit-only variant fails conservation");
  if (!broken.obligations[2].witnesses.empty()) {
    const auto& w = broken.obligations[2].witnesses.front();
    o.require(test::total(*u, w.st) != test::total(*u, w.st1), "counterexample changes the total");
    o.detail << " broken variant counterexample " << show_row(*u, post_shape, w) << ";";
  }
}

std::set<int> parse_ids(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expect_red;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = parse_ids(argv[++i]);
    else if (arg == "--expect-red" && i + 1 < argc) expect_red = parse_ids(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--only N,...] [--expect-red N,...]\n";
      return 2;
    }
  }

  const std::vector<criterion> criteria = {
      {1, "trace algebra axioms, exhaustive to length 3", 5, c1_trace},
      {2, "relational calculus laws on 100 relations", 30, c2_relational},
      {3, "healthiness meta-properties on 50 samples", 60, c3_healthiness},
      {4, "extraction round trip on 200 contracts", 0, c4_extraction},
      {5, "RD1-RD10 and RA1-RA5 on 200 tuples with goldens", 120, c5_laws},
      {6, "triple route equals full-binding route on 200 pairs", 0, c6_oracle},
      {7, "worked examples reproduced as row sets", 0, c7_examples},
      {8, "deadlock freedom contract", 0, c8_cdf},
      {9, "tail recursion of a -> Skip at L = 4", 60, c9_recursion},
      {10, "parallel composition laws", 0, c10_parallel},
      {11, "lifting homomorphisms on 100 designs", 0, c11_lifting},
      {12, "card system at desk scale", 300, c12_mondex},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "time limit exceeded");
    if (!o.pass) failed.insert(c.id);
    std::printf("CRITERION %2d %s  %7.2fs", c.id, o.pass ? "PASS" : "FAIL", secs);
    if (c.limit_s > 0) std::printf(" (limit %.0fs)", c.limit_s);
    std::printf("  %s:%s\n", c.title.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }

  std::set<int> expected;
  for (int id : expect_red)
    if (only.empty() || only.count(id)) expected.insert(id);
  std::printf("failing:");
  for (int id : failed) std::printf(" %d", id);
  std::printf("  expected red:");
  for (int id : expected) std::printf(" %d", id);
  std::printf("\n");
  return failed == expected ? 0 : 1;
}
