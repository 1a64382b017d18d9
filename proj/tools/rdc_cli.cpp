// rdc: calculate reactive contracts of process specifications and check them.
//
// Exit codes: 0 success (or verdict true), 1 parse error, 2 denotation or
// usage error, 3 verdict false.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rdc/rdc.h"

namespace {

constexpr int exit_parse = 1;
constexpr int exit_denote = 2;
constexpr int exit_false = 3;

struct run_config {
  std::string file;
  std::uint64_t seed = 0;
  int samples = 0;
  std::size_t max_counterexamples = 5;
  std::string format = "text";
  int bound_override = 0;
};

int report_error(int status) {
  std::cerr << "error (" << rdc_status_name(status) << "): " << rdc_last_error() << "\n";
  return status == RDC_SYNTAX_ERROR || status == RDC_IO_ERROR ? exit_parse : exit_denote;
}

// Owns a loaded model; status is nonzero when loading failed.
struct model_guard {
  rdc_model* m = nullptr;
  int status = RDC_OK;
  explicit model_guard(const run_config& cfg) { status = rdc_model_load_file(cfg.file.c_str(), cfg.bound_override, &m); }
  ~model_guard() { rdc_model_free(m); }
};

void print_truncations() { std::cout << "truncations: " << rdc_truncations() << "\n"; }

int cmd_calc(const run_config& cfg, const std::string& name, bool full) {
  model_guard g(cfg);
  if (g.status) return report_error(g.status);
  rdc_contract* c = nullptr;
  const int st = full ? rdc_calc_full(g.m, name.c_str(), &c) : rdc_calc(g.m, name.c_str(), &c);
  if (st) return report_error(st);
  std::cout << (cfg.format == "dump" ? rdc_contract_dump(c) : rdc_contract_text(c));
  rdc_contract_free(c);
  print_truncations();
  return 0;
}

int cmd_refine(const run_config& cfg, const std::string& spec, const std::string& impl) {
  model_guard g(cfg);
  if (g.status) return report_error(g.status);
  rdc_refinement* r = nullptr;
  const int st = rdc_refine(g.m, spec.c_str(), impl.c_str(), cfg.max_counterexamples, &r);
  if (st) return report_error(st);
  std::cout << rdc_refinement_text(r);
  const bool holds = rdc_refinement_holds(r);
  rdc_refinement_free(r);
  print_truncations();
  return holds ? 0 : exit_false;
}

int cmd_equiv(const run_config& cfg, const std::string& a, const std::string& b) {
  model_guard g(cfg);
  if (g.status) return report_error(g.status);
  int result = 0;
  if (int st = rdc_equiv(g.m, a.c_str(), b.c_str(), &result)) return report_error(st);
  std::cout << "equivalent: " << (result ? "true" : "false") << "\n";
  print_truncations();
  return result ? 0 : exit_false;
}

int cmd_healthy(const run_config& cfg, const std::string& name, const std::string& health) {
  model_guard g(cfg);
  if (g.status) return report_error(g.status);
  int result = 0;
  if (int st = rdc_healthy(g.m, name.c_str(), health.c_str(), &result)) return report_error(st);
  std::cout << health << "-healthy: " << (result ? "true" : "false") << "\n";
  return result ? 0 : exit_false;
}

int cmd_laws(const run_config& cfg, const std::string& suite) {
  rdc_laws* l = nullptr;
  if (int st = rdc_laws_run(suite.c_str(), cfg.seed, cfg.samples, &l)) return report_error(st);
  std::cout << rdc_laws_text(l);
  const bool holds = rdc_laws_holds(l);
  rdc_laws_free(l);
  return holds ? 0 : exit_false;
}

int cmd_mondex(int cards, int max_balance, int amount, int initial, int bound) {
  char* src = nullptr;
  if (int st = rdc_mondex_source(cards, max_balance, &amount, 1, initial, bound, &src)) return report_error(st);
  std::cout << src;
  rdc_string_free(src);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reactive design contract calculator"};
  app.require_subcommand(1);
  app.fallthrough();
  run_config cfg;
  app.add_option("--seed", cfg.seed, "Random seed for law suites")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Samples per law (0: suite default)")->capture_default_str();
  app.add_option("--max-counterexamples", cfg.max_counterexamples, "Counterexamples printed per obligation")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Contract output format")
      ->check(CLI::IsMember({"text", "dump"}))
      ->capture_default_str();
  app.add_option("--bound-override", cfg.bound_override, "Replace the declared trace bound")
      ->check(CLI::NonNegativeNumber);

  std::string a, b, c;
  bool full = false;
  auto* calc = app.add_subcommand("calc", "Print the contract of a process or contract definition");
  calc->add_option("file", cfg.file)->required()->check(CLI::ExistingFile);
  calc->add_option("name", a)->required();
  calc->add_flag("--monolithic", full, "Compose at the full-binding level, then extract the triple");

  auto* refine = app.add_subcommand("refine", "Check that an implementation refines a specification");
  refine->add_option("file", cfg.file)->required()->check(CLI::ExistingFile);
  refine->add_option("spec", a)->required();
  refine->add_option("impl", b)->required();

  auto* equiv = app.add_subcommand("equiv", "Check contract equivalence");
  equiv->add_option("file", cfg.file)->required()->check(CLI::ExistingFile);
  equiv->add_option("first", a)->required();
  equiv->add_option("second", b)->required();

  auto* healthy = app.add_subcommand("healthy", "Check a healthiness condition on the expansion");
  healthy->add_option("file", cfg.file)->required()->check(CLI::ExistingFile);
  healthy->add_option("name", a)->required();
  healthy->add_option("health", c)->required();

  auto* laws = app.add_subcommand("laws", "Run an algebraic law suite");
  laws->add_option("suite", a)->required();

  int cards = 2, max_balance = 2, amount = 1, initial = 1, bound = 4;
  auto* mondex = app.add_subcommand("mondex", "Print the generated card-system model");
  mondex->add_option("--cards", cards)->capture_default_str();
  mondex->add_option("--max-balance", max_balance)->capture_default_str();
  mondex->add_option("--amount", amount)->capture_default_str();
  mondex->add_option("--initial", initial)->capture_default_str();
  mondex->add_option("--bound", bound)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_denote;
  }

  if (*calc) return cmd_calc(cfg, a, full);
  if (*refine) return cmd_refine(cfg, a, b);
  if (*equiv) return cmd_equiv(cfg, a, b);
  if (*healthy) return cmd_healthy(cfg, a, c);
  if (*laws) return cmd_laws(cfg, a);
  if (*mondex) return cmd_mondex(cards, max_balance, amount, initial, bound);
  return exit_denote;
}
