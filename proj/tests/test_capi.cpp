#include <string>

#include "doctest.h"
#include "rdc/rdc.h"
#include "support.hpp"

namespace {

const char* k_src =
    "channel a\nchannel b\nbound 2\n"
    "process P = a -> skip\nprocess S = stop\n"
    "contract CDF = [true |- a notin ref' or b notin ref' <> true]\n";

struct model {
  rdc_model* m = nullptr;
  explicit model(const char* src) { REQUIRE(rdc_model_load_text(src, 0, &m) == RDC_OK); }
  ~model() { rdc_model_free(m); }
};

}  // namespace

TEST_CASE("load, calculate and compare routes") {
  model md(k_src);
  CHECK(rdc_model_has(md.m, "P") == 1);
  CHECK(rdc_model_has(md.m, "Q") == 0);
  CHECK(rdc_model_bound(md.m) == 2);
  CHECK(rdc_model_events(md.m) == 2);
  rdc_contract *c = nullptr, *full = nullptr;
  REQUIRE(rdc_calc(md.m, "P", &c) == RDC_OK);
  REQUIRE(rdc_calc_full(md.m, "P", &full) == RDC_OK);
  CHECK(rdc_contract_equal(c, full) == 1);
  CHECK(rdc_contract_rows(c, RDC_PRE) == 7);
  CHECK(rdc_contract_rows(c, RDC_PERI) == 2);
  CHECK(rdc_contract_rows(c, RDC_POST) == 1);
  const std::string text = rdc_contract_text(c);
  CHECK(text.find("post: 1 rows\n  {tt=<a>, st=(), st'=()}") != std::string::npos);
  const std::string dump = rdc_contract_dump(c);
  CHECK(dump.find("#peri\tst\ttt\tref'\n") != std::string::npos);
  CHECK(dump.find("post\t()\t<a>\t()\n") != std::string::npos);
  rdc_contract_free(c);
  rdc_contract_free(full);
}

TEST_CASE("bound override") {
  rdc_model* m = nullptr;
  REQUIRE(rdc_model_load_text(k_src, 3, &m) == RDC_OK);
  CHECK(rdc_model_bound(m) == 3);
  rdc_model_free(m);
}

TEST_CASE("refinement verdicts and counterexamples") {
  model md(k_src);
  rdc_refinement* r = nullptr;
  REQUIRE(rdc_refine(md.m, "CDF", "P", 5, &r) == RDC_OK);
  CHECK(rdc_refinement_holds(r) == 1);
  rdc_refinement_free(r);

  REQUIRE(rdc_refine(md.m, "CDF", "S", 5, &r) == RDC_OK);
  CHECK(rdc_refinement_holds(r) == 0);
  CHECK(std::string(rdc_refinement_name(r, 1)) == "peri");
  CHECK(rdc_refinement_obligation_holds(r, 0) == 1);
  CHECK(rdc_refinement_obligation_holds(r, 1) == 0);
  REQUIRE(rdc_refinement_witness_count(r, 1) == 1);
  CHECK(std::string(rdc_refinement_witness(r, 1, 0)) == "{ok=true, wait=true, tt=<>, st=(), ref'={a,b}}");
  CHECK(std::string(rdc_refinement_witness(r, 1, 7)).empty());
  rdc_refinement_free(r);
}

TEST_CASE("equivalence and healthiness") {
  model md("channel a\nchannel b\nbound 2\nprocess L = a -> skip ||| b -> stop\n"
           "process R = a -> b -> stop [] b -> a -> stop\n");
  int eq = 0, ok = 0;
  REQUIRE(rdc_equiv(md.m, "L", "R", &eq) == RDC_OK);
  CHECK(eq == 1);
  REQUIRE(rdc_healthy(md.m, "L", "NSRD", &ok) == RDC_OK);
  CHECK(ok == 1);
  CHECK(rdc_healthy(md.m, "L", "XYZ", &ok) == RDC_INVALID_ARGUMENT);
}

TEST_CASE("errors") {
  rdc_model* m = nullptr;
  CHECK(rdc_model_load_text("channel a\nprocess P = a -> (skip [] stop", 0, &m) == RDC_SYNTAX_ERROR);
  CHECK(m == nullptr);
  CHECK(rdc_last_error_line() == 2);
  CHECK(rdc_last_error_col() > 0);
  CHECK(std::string(rdc_status_name(RDC_SYNTAX_ERROR)) == "SyntaxError");
  CHECK(rdc_model_load_file("/nonexistent/file.rdc", 0, &m) == RDC_IO_ERROR);
  CHECK(rdc_model_load_text(nullptr, 0, &m) == RDC_INVALID_ARGUMENT);

  model md("channel a\nstate x : int 0..1\nprocess P = mu X . x := 1 ; X\n");
  rdc_contract* c = nullptr;
  CHECK(rdc_calc(md.m, "P", &c) == RDC_NOT_PRODUCTIVE);
  CHECK(c == nullptr);
  CHECK(rdc_calc(md.m, "Missing", &c) == RDC_UNDECLARED);
  CHECK(std::string(rdc_last_error()).find("Missing") != std::string::npos);
}

TEST_CASE("full-binding route refuses oversized universes") {
  char* src = nullptr;
  const int amounts[] = {1};
  REQUIRE(rdc_mondex_source(2, 2, amounts, 1, 1, 4, &src) == RDC_OK);
  model md(src);
  rdc_string_free(src);
  rdc_contract* c = nullptr;
  CHECK(rdc_calc_full(md.m, "Pay(0,1,1)", &c) == RDC_ALPHABET_TOO_LARGE);
  rdc_reset_truncations();
  REQUIRE(rdc_calc(md.m, "Pay(0,1,1)", &c) == RDC_OK);
  CHECK(rdc_truncations() == 0);
  rdc_contract_free(c);
}

TEST_CASE("law suites") {
  rdc_laws* l = nullptr;
  REQUIRE(rdc_laws_run("trace", 0, 0, &l) == RDC_OK);
  CHECK(rdc_laws_holds(l) == 1);
  CHECK(rdc_laws_count(l) > 5);
  CHECK(std::string(rdc_laws_suite(l, 0)) == "trace");
  CHECK(std::string(rdc_laws_text(l)).find("TA1 associativity") != std::string::npos);
  rdc_laws_free(l);
  CHECK(rdc_laws_run("nope", 0, 0, &l) == RDC_UNKNOWN_SUITE);
}

TEST_CASE("card-system source") {
  char* src = nullptr;
  const int amounts[] = {1};
  REQUIRE(rdc_mondex_source(2, 2, amounts, 1, 1, 4, &src) == RDC_OK);
  CHECK(std::string(src).find("process Pay(i, j, n)") != std::string::npos);
  rdc_string_free(src);
  const int many[] = {1, 2, 3};
  CHECK(rdc_mondex_source(4, 3, many, 3, 1, 4, &src) == RDC_ALPHABET_TOO_LARGE);
}
