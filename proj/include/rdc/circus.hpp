#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rdc/parallel.hpp"

namespace rdc {

// ---------------------------------------------------------------- expressions

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

enum class expr_kind {
  num, boolean,
  name,      // state variable, parameter or (primed) state variable
  tt, ref1,  // trace contribution and final refusal
  event,     // channel with argument expressions
  trace,     // <e1, ..., en>
  empty_coll,  // {}
  set_lit,   // {a, b}
  map_lit,   // {k |-> v, ...}
  update,    // m[k |-> v]
  apply,     // m(k)
  dom, sum, len, last,
  neg, lnot,
  binary,
};

enum class bin_op { add, sub, eq, ne, lt, le, gt, ge, land, lor, implies, in, notin, concat };

struct expr {
  expr_kind kind = expr_kind::num;
  long num = 0;
  std::string name;
  bool primed = false;
  bin_op op = bin_op::add;
  std::vector<expr_ptr> args;  // operands, event arguments, literal items (k, v pairs for maps)
  int line = 0, col = 0;
};

// A dynamically typed value. Sets and maps are sorted by key.
struct value {
  enum kind_t { num, boolean, set, map, trace, event, refusal, empty_coll } kind = num;
  long n = 0;
  std::vector<long> items;                   // set elements, trace events
  std::vector<std::pair<long, long>> entries;  // map entries
  bool operator==(const value&) const = default;
};

// Evaluation context: the parts of a reactive row that are available.
struct eval_ctx {
  const universe* u = nullptr;
  const std::map<std::string, long>* env = nullptr;  // process parameters and bound inputs
  int st = -1, st1 = -1, tt = -1;
  bool has_ref1 = false;
  unsigned ref1 = 0;
  // Set when an expression queries an event's membership in ref′.
  unsigned* ref_queries = nullptr;
  bool* ref_whole = nullptr;  // the whole refusal set was read
};

// nullopt: undefined (map application outside the domain, unknown event).
std::optional<value> eval(const expr& e, const eval_ctx& c);
// Boolean atoms over undefined operands are false.
bool eval_bool(const expr& e, const eval_ctx& c);
std::optional<long> eval_int(const expr& e, const eval_ctx& c);

struct expr_uses {
  bool st = false, st1 = false, tt = false, ref1 = false;
};
expr_uses uses(const expr& e, const std::map<std::string, long>& env);

std::string show_expr(const expr& e);

// ---------------------------------------------------------------- processes

struct proc;
using proc_ptr = std::shared_ptr<const proc>;

enum class proc_kind {
  skip, stop, chaos, miracle,
  prefix,      // event -> body; event fields are expressions or ?inputs
  guard,       // cond & body
  assign,      // var := value
  iassign,     // var(index) := value
  seq, extchoice, intchoice, interleave,  // n-ary, flattened
  cond,        // if cond then l else r
  mu,          // mu X . body ; X
  ref,         // NAME(args)
};

struct event_field {
  expr_ptr value;     // output or literal field
  std::string input;  // ?x when value is null
};

struct proc {
  proc_kind kind = proc_kind::skip;
  std::string name;                 // channel, variable, reference or recursion variable
  std::vector<event_field> fields;  // prefix
  std::vector<expr_ptr> exprs;      // guard/cond: [cond]; assign: [value]; iassign: [index, value]; ref: args
  std::vector<proc_ptr> kids;
  int line = 0, col = 0;
};

std::string show_proc(const proc& p);

struct proc_def {
  std::string name;
  std::vector<std::string> params;
  proc_ptr body;
};

struct contract_def {
  std::string name;
  std::vector<std::string> params;
  expr_ptr pre, peri, post;
};

struct model_spec {
  universe_config config;
  std::vector<proc_def> procs;
  std::vector<contract_def> contracts;
  const proc_def* find_proc(const std::string& name) const;
  const contract_def* find_contract(const std::string& name) const;
};

// Throws syntax_error with the position of the furthest failure.
model_spec parse_spec(const std::string& text);
// A single process body, for tests and the C API.
proc_ptr parse_proc(const std::string& text);
expr_ptr parse_expr(const std::string& text);

// ---------------------------------------------------------------- denotation

class denoter {
 public:
  explicit denoter(model_spec spec, int bound_override = 0);

  const model_spec& spec() const { return spec_; }
  const universe_ptr& uni_ptr() const { return u_; }

  // Names may carry constant arguments, e.g. "Pay(0,1,1)". Processes and
  // contract definitions share the namespace; processes are tried first.
  contract resolve(const std::string& name_with_args);
  bool is_known(const std::string& name_with_args) const;
  contract process(const std::string& name, const std::vector<long>& args);
  contract contract_spec(const std::string& name, const std::vector<long>& args);
  contract denote(const proc& p, const std::map<std::string, long>& env = {});

  // Independent route: composes expand-level relations for every operator.
  // Only the leaves (prefix, assignment, skip, stop) are expanded contracts.
  rel denote_full(const proc& p, const std::map<std::string, long>& env = {});
  rel resolve_full(const std::string& name_with_args);

  const merge_rel& interleaving();

 private:
  contract prefix_event(const proc& p, const std::vector<expr_ptr>& fields, const std::map<std::string, long>& env);
  contract assign(const proc& p, const std::map<std::string, long>& env);
  contract iassign(const proc& p, const std::map<std::string, long>& env);
  std::vector<std::pair<std::vector<expr_ptr>, std::map<std::string, long>>> expand_inputs(
      const proc& p, const std::map<std::string, long>& env) const;
  std::function<bool(int)> state_test(const expr& e, const std::map<std::string, long>& env) const;

  model_spec spec_;
  universe_ptr u_;
  std::optional<merge_rel> merge_;
  std::vector<std::string> active_;  // references being expanded
};

// Splits "Name(1,2)" into the name and its constant arguments.
std::pair<std::string, std::vector<long>> split_call(const std::string& s);

// Reactive relation of a predicate over the row fields of `shape`.
rr pred_rr(const universe_ptr& u, rr_shape shape, const expr& e, const std::map<std::string, long>& env);

// ---------------------------------------------------------------- Mondex

struct mondex_params {
  int cards = 2;
  int max_balance = 2;
  std::vector<int> amounts{1};
  int initial = 1;  // starting balance of every card
  int bound = 4;
};

// Source text of the card system: Pay, PaySet/SomePay, Cycle, System, the
// reject and broken-credit variants, and the three specification contracts.
// Throws alphabet_too_large when the event alphabet exceeds the universe cap.
std::string mondex_source(const mondex_params& p);
model_spec mondex_spec(const mondex_params& p);

}  // namespace rdc
