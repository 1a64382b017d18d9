#include "rdc/rdc.h"

#include <array>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "rdc/circus.hpp"
#include "rdc/health.hpp"
#include "rdc/laws.hpp"

struct rdc_model {
  std::unique_ptr<rdc::denoter> d;
};

struct rdc_contract {
  rdc::contract c;
  std::string text, dumped;
};

struct rdc_refinement {
  rdc::contract_refinement r;
  std::array<std::vector<std::string>, 3> witnesses;
  std::string text;
};

struct rdc_laws {
  std::vector<rdc::suite_report> reports;
  std::vector<std::pair<const rdc::suite_report*, const rdc::law_result*>> flat;
  std::string text;
};

namespace {

struct last_error {
  std::string message;
  int line = 0, col = 0;
};
thread_local last_error g_err;

int fail(int status, const std::string& msg, int line = 0, int col = 0) {
  g_err = {msg, line, col};
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
int guarded(F&& f) {
  try {
    f();
    return RDC_OK;
  } catch (const rdc::syntax_error& e) {
    return fail(RDC_SYNTAX_ERROR, e.what(), e.line(), e.col());
  } catch (const rdc::error& e) {
    return fail(static_cast<int>(e.code()) + 1, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RDC_ALPHABET_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDC_INTERNAL_ERROR, e.what());
  }
}

#define RDC_REQUIRE(cond)                                                    \
  do {                                                                       \
    if (!(cond)) return fail(RDC_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

rdc_contract* wrap(rdc::contract c) {
  auto* h = new rdc_contract;
  h->c = std::move(c);
  return h;
}

// Fields in fixed order; ok and wait describe the offending observation of
// the implementation: divergent, quiescent or terminating.
std::string format_witness(const rdc::universe& u, int obligation, rdc::rr_shape shape, const rdc::rr_row& r) {
  std::ostringstream o;
  o << "{ok=" << (obligation == 0 ? "false" : "true") << ", wait=" << (obligation == 1 ? "true" : "false")
    << ", tt=" << u.show_trace(r.tt) << ", st=" << u.show_state(r.st);
  if (shape & rdc::d_st1) o << ", st'=" << u.show_state(r.st1);
  if (shape & rdc::d_ref1) o << ", ref'=" << u.show_refusal(r.ref1);
  o << "}";
  return o.str();
}

}  // namespace

extern "C" {

const char* rdc_status_name(int status) {
  if (status == RDC_OK) return "OK";
  if (status == RDC_IO_ERROR) return "IOError";
  if (status == RDC_INTERNAL_ERROR) return "InternalError";
  if (status >= 1 && status <= RDC_INVALID_ARGUMENT) return rdc::errc_name(static_cast<rdc::errc>(status - 1));
  return "Unknown";
}

const char* rdc_last_error(void) { return g_err.message.c_str(); }
int rdc_last_error_line(void) { return g_err.line; }
int rdc_last_error_col(void) { return g_err.col; }

int rdc_model_load_text(const char* text, int bound_override, rdc_model** out) {
  RDC_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<rdc_model>();
    m->d = std::make_unique<rdc::denoter>(rdc::parse_spec(text), bound_override);
    *out = m.release();
  });
}

int rdc_model_load_file(const char* path, int bound_override, rdc_model** out) {
  RDC_REQUIRE(path && out);
  *out = nullptr;
  std::ifstream in(path);
  if (!in) return fail(RDC_IO_ERROR, std::string("cannot read ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return rdc_model_load_text(ss.str().c_str(), bound_override, out);
}

void rdc_model_free(rdc_model* m) { delete m; }

int rdc_model_has(const rdc_model* m, const char* name) {
  if (!m || !name) return 0;
  try {
    return m->d->is_known(name) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

int rdc_model_bound(const rdc_model* m) { return m ? m->d->uni_ptr()->bound() : 0; }
int rdc_model_events(const rdc_model* m) { return m ? m->d->uni_ptr()->n_events() : 0; }

int rdc_calc(rdc_model* m, const char* name, rdc_contract** out) {
  RDC_REQUIRE(m && name && out);
  *out = nullptr;
  return guarded([&] { *out = wrap(m->d->resolve(name)); });
}

int rdc_calc_full(rdc_model* m, const char* name, rdc_contract** out) {
  RDC_REQUIRE(m && name && out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rdc::contract_of(m->d->resolve_full(name))); });
}

void rdc_contract_free(rdc_contract* c) { delete c; }

const char* rdc_contract_text(rdc_contract* c) {
  if (!c) return "";
  if (c->text.empty()) c->text = rdc::show(c->c);
  return c->text.c_str();
}

const char* rdc_contract_dump(rdc_contract* c) {
  if (!c) return "";
  if (c->dumped.empty()) c->dumped = rdc::dump(c->c);
  return c->dumped.c_str();
}

size_t rdc_contract_rows(const rdc_contract* c, int part) {
  if (!c) return 0;
  switch (part) {
    case RDC_PRE: return c->c.pre().size();
    case RDC_PERI: return c->c.peri().size();
    case RDC_POST: return c->c.post().size();
    default: return 0;
  }
}

int rdc_contract_equal(const rdc_contract* a, const rdc_contract* b) {
  return a && b && a->c == b->c ? 1 : 0;
}

int rdc_refine(rdc_model* m, const char* spec, const char* impl, size_t max_counterexamples, rdc_refinement** out) {
  RDC_REQUIRE(m && spec && impl && out);
  *out = nullptr;
  return guarded([&] {
    const rdc::contract s = m->d->resolve(spec);
    const rdc::contract i = m->d->resolve(impl);
    auto h = std::make_unique<rdc_refinement>();
    h->r = rdc::refines(s, i, max_counterexamples);
    std::ostringstream o;
    for (int k = 0; k < 3; ++k) {
      const auto& ob = h->r.obligations[k];
      o << ob.name << ": " << (ob.holds ? "holds" : "FAILS") << "\n";
      for (const auto& w : ob.witnesses) {
        h->witnesses[k].push_back(format_witness(s.uni(), k, ob.shape, w));
        o << "  counterexample " << h->witnesses[k].back() << "\n";
      }
    }
    o << "refinement: " << (h->r.holds ? "holds" : "fails") << "\n";
    h->text = o.str();
    *out = h.release();
  });
}

void rdc_refinement_free(rdc_refinement* r) { delete r; }
int rdc_refinement_holds(const rdc_refinement* r) { return r && r->r.holds ? 1 : 0; }

const char* rdc_refinement_name(const rdc_refinement* r, int k) {
  return r && k >= 0 && k < 3 ? r->r.obligations[k].name.c_str() : "";
}

int rdc_refinement_obligation_holds(const rdc_refinement* r, int k) {
  return r && k >= 0 && k < 3 && r->r.obligations[k].holds ? 1 : 0;
}

size_t rdc_refinement_witness_count(const rdc_refinement* r, int k) {
  return r && k >= 0 && k < 3 ? r->witnesses[k].size() : 0;
}

const char* rdc_refinement_witness(const rdc_refinement* r, int k, size_t i) {
  if (!r || k < 0 || k >= 3 || i >= r->witnesses[k].size()) return "";
  return r->witnesses[k][i].c_str();
}

const char* rdc_refinement_text(rdc_refinement* r) { return r ? r->text.c_str() : ""; }

int rdc_equiv(rdc_model* m, const char* a, const char* b, int* result) {
  RDC_REQUIRE(m && a && b && result);
  return guarded([&] { *result = rdc::equiv(m->d->resolve(a), m->d->resolve(b)) ? 1 : 0; });
}

int rdc_healthy(rdc_model* m, const char* name, const char* health, int* result) {
  RDC_REQUIRE(m && name && health && result);
  const auto h = rdc::health_from_name(health);
  if (!h) return fail(RDC_INVALID_ARGUMENT, std::string("unknown healthiness condition ") + health);
  return guarded([&] { *result = rdc::is_healthy(*h, rdc::expand(m->d->resolve(name))) ? 1 : 0; });
}

int rdc_laws_run(const char* suite, uint64_t seed, int samples, rdc_laws** out) {
  RDC_REQUIRE(suite && out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<rdc_laws>();
    h->reports = rdc::run_suites(suite, {seed, samples});
    for (const auto& rep : h->reports) {
      h->text += rdc::format_report(rep);
      for (const auto& law : rep.laws) h->flat.emplace_back(&rep, &law);
    }
    *out = h.release();
  });
}

void rdc_laws_free(rdc_laws* l) { delete l; }

int rdc_laws_holds(const rdc_laws* l) {
  if (!l) return 0;
  for (const auto& r : l->reports)
    if (!r.holds()) return 0;
  return 1;
}

size_t rdc_laws_count(const rdc_laws* l) { return l ? l->flat.size() : 0; }

const char* rdc_laws_name(const rdc_laws* l, size_t i) {
  return l && i < l->flat.size() ? l->flat[i].second->name.c_str() : "";
}

const char* rdc_laws_suite(const rdc_laws* l, size_t i) {
  return l && i < l->flat.size() ? l->flat[i].first->suite.c_str() : "";
}

int rdc_laws_law_holds(const rdc_laws* l, size_t i) {
  return l && i < l->flat.size() && l->flat[i].second->holds ? 1 : 0;
}

const char* rdc_laws_witness(const rdc_laws* l, size_t i) {
  return l && i < l->flat.size() ? l->flat[i].second->witness.c_str() : "";
}

const char* rdc_laws_text(rdc_laws* l) { return l ? l->text.c_str() : ""; }

uint64_t rdc_truncations(void) { return rdc::truncations(); }
void rdc_reset_truncations(void) { rdc::reset_truncations(); }

int rdc_mondex_source(int cards, int max_balance, const int* amounts, size_t n_amounts, int initial, int bound,
                      char** out) {
  RDC_REQUIRE(out && (amounts || n_amounts == 0));
  *out = nullptr;
  return guarded([&] {
    rdc::mondex_params p;
    p.cards = cards;
    p.max_balance = max_balance;
    p.amounts.assign(amounts, amounts + n_amounts);
    p.initial = initial;
    p.bound = bound;
    const std::string s = rdc::mondex_source(p);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void rdc_string_free(char* s) { delete[] s; }

}  // extern "C"
