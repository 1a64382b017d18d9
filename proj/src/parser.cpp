#include <cctype>
#include <set>

#include "rdc/circus.hpp"

namespace rdc {

namespace {

enum class tok_kind { ident, nat, sym, end };

struct token {
  tok_kind kind = tok_kind::end;
  std::string text;
  bool primed = false;  // identifier immediately followed by '
  long num = 0;
  int line = 1, col = 1;
};

// Longest symbols first.
const char* const symbols[] = {"|||", "|~|", "|->", "|-", "->", ":=", "[]", "<>", "<=", ">=", "!=", "=>", "..",
                               "(",   ")",   ",",   ".",  "?",  "=",  "<",  ">",  "+",  "-",  "&",  ";",  "[",
                               "]",   "{",   "}",   ":",  "#",  "^"};

std::vector<token> lex(const std::string& s) {
  std::vector<token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = tok_kind::ident;
      t.text = s.substr(i, j - i);
      advance(j - i);
      if (i < s.size() && s[i] == '\'') {
        t.primed = true;
        advance(1);
      }
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = tok_kind::nat;
      t.text = s.substr(i, j - i);
      t.num = std::stol(t.text);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    bool matched = false;
    for (const char* sym : symbols) {
      const std::string x = sym;
      if (s.compare(i, x.size(), x) == 0) {
        t.kind = tok_kind::sym;
        t.text = x;
        advance(x.size());
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (!matched) throw syntax_error(line, col, "a token");
  }
  token e;
  e.line = line;
  e.col = col;
  out.push_back(e);
  return out;
}

const std::set<std::string> keywords = {"channel", "state", "bound", "process", "contract", "skip", "stop",
                                        "chaos",   "miracle", "if",  "then",    "else",     "mu",   "and",
                                        "or",      "not",   "in",    "notin",   "dom",      "sum",  "last",
                                        "true",    "false", "tt",    "ref",     "int",      "bool", "map", "to"};

class parser {
 public:
  explicit parser(const std::string& text) : toks_(lex(text)) {}

  model_spec spec() {
    model_spec m;
    guarded([&] {
      while (!at_end()) item(m);
    });
    return m;
  }

  proc_ptr whole_proc() {
    proc_ptr p;
    guarded([&] {
      p = process();
      if (!at_end()) fail("end of input");
    });
    return p;
  }

  expr_ptr whole_expr() {
    expr_ptr e;
    guarded([&] {
      e = expression();
      if (!at_end()) fail("end of input");
    });
    return e;
  }

 private:
  // ---- token helpers

  const token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == tok_kind::end; }
  bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == tok_kind::sym && peek(k).text == s; }
  bool is_kw(const char* s, std::size_t k = 0) const { return peek(k).kind == tok_kind::ident && peek(k).text == s; }
  bool is_name(std::size_t k = 0) const {
    return peek(k).kind == tok_kind::ident && !keywords.count(peek(k).text);
  }

  [[noreturn]] void fail(const std::string& expected) {
    const token& t = peek();
    note(t.line, t.col, expected);
    throw syntax_error(t.line, t.col, expected);
  }

  void note(int line, int col, const std::string& expected) {
    if (line > best_line_ || (line == best_line_ && col > best_col_)) {
      best_line_ = line;
      best_col_ = col;
      best_expected_ = expected;
    } else if (line == best_line_ && col == best_col_ && best_expected_.find(expected) == std::string::npos) {
      best_expected_ += " or " + expected;
    }
  }

  // Rethrows the furthest failure seen, which is the most useful position
  // after backtracking.
  template <class F>
  void guarded(F&& f) {
    try {
      f();
    } catch (const syntax_error&) {
      throw syntax_error(best_line_, best_col_, best_expected_);
    }
  }

  template <class F>
  bool attempt(F&& f) {
    const std::size_t save = pos_;
    try {
      f();
      return true;
    } catch (const syntax_error&) {
      pos_ = save;
      return false;
    }
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }
  std::string name(const char* what = "a name") {
    if (!is_name() || peek().primed) fail(what);
    return toks_[pos_++].text;
  }
  long integer() {
    bool neg = false;
    if (is_sym("-")) {
      neg = true;
      ++pos_;
    }
    if (peek().kind != tok_kind::nat) fail("a number");
    const long v = toks_[pos_++].num;
    return neg ? -v : v;
  }
  range range_() {
    range r;
    r.lo = static_cast<int>(integer());
    expect_sym("..");
    r.hi = static_cast<int>(integer());
    if (r.hi < r.lo) fail("a non-empty range");
    return r;
  }

  // ---- declarations

  void item(model_spec& m) {
    if (is_kw("channel")) {
      ++pos_;
      channel_decl c;
      c.name = name("a channel name");
      if (is_sym("(")) {
        ++pos_;
        c.params.push_back(range_());
        while (is_sym(",")) {
          ++pos_;
          c.params.push_back(range_());
        }
        expect_sym(")");
      }
      m.config.channels.push_back(c);
    } else if (is_kw("state")) {
      ++pos_;
      var_decl v;
      v.name = name("a variable name");
      expect_sym(":");
      if (is_kw("int")) {
        ++pos_;
        v.kind = var_kind::integer;
        v.values = range_();
      } else if (is_kw("bool")) {
        ++pos_;
        v.kind = var_kind::boolean;
        v.values = {0, 1};
      } else if (is_kw("map")) {
        ++pos_;
        v.kind = var_kind::map;
        v.keys = range_();
        expect_kw("to");
        v.values = range_();
      } else {
        fail("'int', 'bool' or 'map'");
      }
      m.config.vars.push_back(v);
    } else if (is_kw("bound")) {
      ++pos_;
      if (peek().kind != tok_kind::nat) fail("a number");
      m.config.bound = static_cast<int>(toks_[pos_++].num);
    } else if (is_kw("process")) {
      ++pos_;
      proc_def d;
      d.name = name("a process name");
      d.params = params();
      expect_sym("=");
      d.body = process();
      m.procs.push_back(d);
    } else if (is_kw("contract")) {
      ++pos_;
      contract_def d;
      d.name = name("a contract name");
      d.params = params();
      expect_sym("=");
      expect_sym("[");
      d.pre = expression();
      expect_sym("|-");
      d.peri = expression();
      expect_sym("<>");
      d.post = expression();
      expect_sym("]");
      m.contracts.push_back(d);
    } else {
      fail("a declaration");
    }
  }

  std::vector<std::string> params() {
    std::vector<std::string> ps;
    if (!is_sym("(")) return ps;
    ++pos_;
    ps.push_back(name("a parameter name"));
    while (is_sym(",")) {
      ++pos_;
      ps.push_back(name("a parameter name"));
    }
    expect_sym(")");
    return ps;
  }

  // ---- processes

  std::shared_ptr<proc> node(proc_kind k, const token& at) {
    auto p = std::make_shared<proc>();
    p->kind = k;
    p->line = at.line;
    p->col = at.col;
    return p;
  }

  proc_ptr process() {
    const token start = peek();
    proc_ptr first = seq_level();
    const char* ops[] = {"[]", "|~|", "|||"};
    const proc_kind kinds[] = {proc_kind::extchoice, proc_kind::intchoice, proc_kind::interleave};
    for (int k = 0; k < 3; ++k) {
      if (!is_sym(ops[k])) continue;
      auto p = node(kinds[k], start);
      p->kids.push_back(first);
      while (is_sym(ops[k])) {
        ++pos_;
        p->kids.push_back(seq_level());
      }
      for (int j = 0; j < 3; ++j)
        if (is_sym(ops[j])) fail("parentheses between distinct choice or parallel operators");
      return p;
    }
    return first;
  }

  proc_ptr seq_level() {
    const token start = peek();
    proc_ptr first = prefix_level();
    if (!is_sym(";")) return first;
    auto p = node(proc_kind::seq, start);
    p->kids.push_back(first);
    while (is_sym(";")) {
      ++pos_;
      p->kids.push_back(prefix_level());
    }
    return p;
  }

  proc_ptr prefix_level() {
    const token at = peek();
    if (is_kw("skip")) return ++pos_, node(proc_kind::skip, at);
    if (is_kw("stop")) return ++pos_, node(proc_kind::stop, at);
    if (is_kw("chaos")) return ++pos_, node(proc_kind::chaos, at);
    if (is_kw("miracle")) return ++pos_, node(proc_kind::miracle, at);
    if (is_kw("if")) {
      ++pos_;
      auto p = node(proc_kind::cond, at);
      p->exprs.push_back(expression());
      expect_kw("then");
      p->kids.push_back(process());
      expect_kw("else");
      p->kids.push_back(process());
      return p;
    }
    if (is_kw("mu")) return mu(at);
    proc_ptr result;
    if (is_name()) {
      if (is_sym(":=", 1)) {
        auto p = node(proc_kind::assign, at);
        p->name = name();
        ++pos_;
        p->exprs.push_back(expression());
        return p;
      }
      if (attempt([&] { result = prefix(at); })) return result;
      if (attempt([&] { result = indexed_assign(at); })) return result;
    }
    if (attempt([&] { result = guard(at); })) return result;
    if (is_sym("(")) {
      ++pos_;
      result = process();
      expect_sym(")");
      return result;
    }
    if (is_name()) {
      auto p = node(proc_kind::ref, at);
      p->name = name();
      if (is_sym("(")) p->exprs = call_args();
      return p;
    }
    fail("a process");
  }

  std::vector<expr_ptr> call_args() {
    std::vector<expr_ptr> args;
    expect_sym("(");
    args.push_back(expression());
    while (is_sym(",")) {
      ++pos_;
      args.push_back(expression());
    }
    expect_sym(")");
    return args;
  }

  proc_ptr prefix(const token& at) {
    auto p = node(proc_kind::prefix, at);
    p->name = name("a channel name");
    while (is_sym(".") || is_sym("?")) {
      if (is_sym("?")) {
        ++pos_;
        p->fields.push_back({nullptr, name("an input variable")});
      } else {
        ++pos_;
        p->fields.push_back({atom(), {}});
      }
    }
    expect_sym("->");
    p->kids.push_back(prefix_level());
    return p;
  }

  proc_ptr indexed_assign(const token& at) {
    auto p = node(proc_kind::iassign, at);
    p->name = name();
    expect_sym("(");
    p->exprs.push_back(expression());
    expect_sym(")");
    expect_sym(":=");
    p->exprs.push_back(expression());
    return p;
  }

  proc_ptr guard(const token& at) {
    auto p = node(proc_kind::guard, at);
    p->exprs.push_back(expression());
    expect_sym("&");
    p->kids.push_back(prefix_level());
    return p;
  }

  proc_ptr mu(const token& at) {
    ++pos_;
    auto p = node(proc_kind::mu, at);
    p->name = name("a recursion variable");
    expect_sym(".");
    std::vector<proc_ptr> parts{prefix_level()};
    while (is_sym(";")) {
      ++pos_;
      parts.push_back(prefix_level());
    }
    const proc& last = *parts.back();
    if (parts.size() < 2 || last.kind != proc_kind::ref || last.name != p->name || !last.exprs.empty())
      fail("recursion in tail form 'mu X . P ; X'");
    parts.pop_back();
    for (const auto& q : parts)
      if (mentions(*q, p->name)) fail("recursion variable only in tail position");
    if (parts.size() == 1) {
      p->kids.push_back(parts[0]);
    } else {
      auto s = node(proc_kind::seq, at);
      s->kids = parts;
      p->kids.push_back(s);
    }
    return p;
  }

  static bool mentions(const proc& p, const std::string& x) {
    if (p.kind == proc_kind::ref && p.name == x) return true;
    if (p.kind == proc_kind::mu && p.name == x) return false;
    for (const auto& k : p.kids)
      if (mentions(*k, x)) return true;
    return false;
  }

  // ---- expressions

  std::shared_ptr<expr> enode(expr_kind k, const token& at) {
    auto e = std::make_shared<expr>();
    e->kind = k;
    e->line = at.line;
    e->col = at.col;
    return e;
  }
  expr_ptr bin(bin_op op, expr_ptr a, expr_ptr b, const token& at) {
    auto e = enode(expr_kind::binary, at);
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  expr_ptr expression() {
    const token at = peek();
    expr_ptr a = disjunction();
    if (is_sym("=>")) {
      ++pos_;
      return bin(bin_op::implies, a, expression(), at);
    }
    return a;
  }

  expr_ptr disjunction() {
    const token at = peek();
    expr_ptr a = conjunction();
    while (is_kw("or")) {
      ++pos_;
      a = bin(bin_op::lor, a, conjunction(), at);
    }
    return a;
  }

  expr_ptr conjunction() {
    const token at = peek();
    expr_ptr a = negation();
    while (is_kw("and")) {
      ++pos_;
      a = bin(bin_op::land, a, negation(), at);
    }
    return a;
  }

  expr_ptr negation() {
    const token at = peek();
    if (is_kw("not")) {
      ++pos_;
      auto e = enode(expr_kind::lnot, at);
      e->args.push_back(negation());
      return e;
    }
    return comparison();
  }

  expr_ptr comparison() {
    const token at = peek();
    expr_ptr a = additive();
    static const std::pair<const char*, bin_op> ops[] = {{"=", bin_op::eq}, {"!=", bin_op::ne}, {"<=", bin_op::le},
                                                          {">=", bin_op::ge}, {"<", bin_op::lt},  {">", bin_op::gt}};
    for (const auto& [s, op] : ops)
      if (is_sym(s)) {
        ++pos_;
        return bin(op, a, additive(), at);
      }
    if (is_kw("in") || is_kw("notin")) {
      const bin_op op = is_kw("in") ? bin_op::in : bin_op::notin;
      ++pos_;
      return bin(op, a, additive(), at);
    }
    return a;
  }

  expr_ptr additive() {
    const token at = peek();
    expr_ptr a = unary();
    while (is_sym("+") || is_sym("-") || is_sym("^")) {
      const bin_op op = is_sym("+") ? bin_op::add : is_sym("-") ? bin_op::sub : bin_op::concat;
      ++pos_;
      a = bin(op, a, unary(), at);
    }
    return a;
  }

  expr_ptr unary() {
    const token at = peek();
    if (is_sym("-")) {
      ++pos_;
      auto e = enode(expr_kind::neg, at);
      e->args.push_back(unary());
      return e;
    }
    if (is_sym("#")) {
      ++pos_;
      auto e = enode(expr_kind::len, at);
      e->args.push_back(unary());
      return e;
    }
    return postfix();
  }

  expr_ptr postfix() {
    expr_ptr a = primary();
    while (true) {
      const token at = peek();
      if (is_sym("(")) {
        ++pos_;
        auto e = enode(expr_kind::apply, at);
        e->args = {a, expression()};
        expect_sym(")");
        a = e;
      } else if (is_sym("[") && !is_sym("]", 1)) {
        ++pos_;
        auto e = enode(expr_kind::update, at);
        e->args.push_back(a);
        maplets(*e, "]");
        a = e;
      } else {
        return a;
      }
    }
  }

  void maplets(expr& e, const char* close) {
    while (true) {
      e.args.push_back(expression());
      expect_sym("|->");
      e.args.push_back(expression());
      if (!is_sym(",")) break;
      ++pos_;
    }
    expect_sym(close);
  }

  // Event fields and prefix arguments: numbers, names or parenthesised expressions.
  expr_ptr atom() {
    const token at = peek();
    if (peek().kind == tok_kind::nat) {
      auto e = enode(expr_kind::num, at);
      e->num = toks_[pos_++].num;
      return e;
    }
    if (is_sym("(")) {
      ++pos_;
      expr_ptr e = expression();
      expect_sym(")");
      return e;
    }
    if (is_name() && !peek().primed) {
      auto e = enode(expr_kind::name, at);
      e->name = toks_[pos_++].text;
      return e;
    }
    fail("an event field");
  }

  expr_ptr primary() {
    const token at = peek();
    if (peek().kind == tok_kind::nat) return atom();
    if (is_kw("true") || is_kw("false")) {
      auto e = enode(expr_kind::boolean, at);
      e->num = is_kw("true");
      ++pos_;
      return e;
    }
    if (is_kw("tt")) return ++pos_, enode(expr_kind::tt, at);
    if (is_kw("ref")) {
      if (!peek().primed) fail("ref'");
      ++pos_;
      return enode(expr_kind::ref1, at);
    }
    if (is_kw("dom") || is_kw("sum") || is_kw("last")) {
      const expr_kind k = is_kw("dom") ? expr_kind::dom : is_kw("sum") ? expr_kind::sum : expr_kind::last;
      ++pos_;
      auto e = enode(k, at);
      e->args.push_back(postfix());
      return e;
    }
    if (is_sym("(")) {
      ++pos_;
      expr_ptr e = expression();
      expect_sym(")");
      return e;
    }
    if (is_sym("<>")) return ++pos_, enode(expr_kind::trace, at);
    if (is_sym("<")) {
      ++pos_;
      auto e = enode(expr_kind::trace, at);
      e->args.push_back(event_expr());
      while (is_sym(",")) {
        ++pos_;
        e->args.push_back(event_expr());
      }
      expect_sym(">");
      return e;
    }
    if (is_sym("{")) {
      ++pos_;
      if (is_sym("}")) return ++pos_, enode(expr_kind::empty_coll, at);
      auto e = enode(expr_kind::set_lit, at);
      e->args.push_back(expression());
      if (is_sym("|->")) {
        e->kind = expr_kind::map_lit;
        ++pos_;
        e->args.push_back(expression());
        if (is_sym(",")) {
          ++pos_;
          maplets(*e, "}");
        } else {
          expect_sym("}");
        }
        return e;
      }
      while (is_sym(",")) {
        ++pos_;
        e->args.push_back(expression());
      }
      expect_sym("}");
      return e;
    }
    if (is_name()) {
      if (peek().primed) {
        auto e = enode(expr_kind::name, at);
        e->name = toks_[pos_++].text;
        e->primed = true;
        return e;
      }
      if (is_sym(".", 1)) return event_expr();
      auto e = enode(expr_kind::name, at);
      e->name = toks_[pos_++].text;
      return e;
    }
    fail("an expression");
  }

  expr_ptr event_expr() {
    const token at = peek();
    auto e = enode(expr_kind::event, at);
    e->name = name("an event");
    while (is_sym(".")) {
      ++pos_;
      e->args.push_back(atom());
    }
    return e;
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
  int best_line_ = 0, best_col_ = 0;
  std::string best_expected_;
};

}  // namespace

model_spec parse_spec(const std::string& text) { return parser(text).spec(); }
proc_ptr parse_proc(const std::string& text) { return parser(text).whole_proc(); }
expr_ptr parse_expr(const std::string& text) { return parser(text).whole_expr(); }

const proc_def* model_spec::find_proc(const std::string& name) const {
  for (const auto& p : procs)
    if (p.name == name) return &p;
  return nullptr;
}

const contract_def* model_spec::find_contract(const std::string& name) const {
  for (const auto& c : contracts)
    if (c.name == name) return &c;
  return nullptr;
}

std::string show_proc(const proc& p) {
  auto kids = [&](const char* sep) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.kids.size(); ++i) s += (i ? sep : "") + show_proc(*p.kids[i]);
    return s + ")";
  };
  switch (p.kind) {
    case proc_kind::skip: return "Skip";
    case proc_kind::stop: return "Stop";
    case proc_kind::chaos: return "Chaos";
    case proc_kind::miracle: return "Miracle";
    case proc_kind::prefix: {
      std::string s = "Prefix(" + p.name + ",[";
      for (std::size_t i = 0; i < p.fields.size(); ++i) {
        if (i) s += ",";
        s += p.fields[i].value ? show_expr(*p.fields[i].value) : "?" + p.fields[i].input;
      }
      return s + "]," + show_proc(*p.kids[0]) + ")";
    }
    case proc_kind::guard: return "Guard(" + show_expr(*p.exprs[0]) + "," + show_proc(*p.kids[0]) + ")";
    case proc_kind::assign: return "Assign(" + p.name + "," + show_expr(*p.exprs[0]) + ")";
    case proc_kind::iassign:
      return "IndexedAssign(" + p.name + "," + show_expr(*p.exprs[0]) + "," + show_expr(*p.exprs[1]) + ")";
    case proc_kind::seq: return "Seq" + kids(",");
    case proc_kind::extchoice: return "ExtChoice" + kids(",");
    case proc_kind::intchoice: return "IntChoice" + kids(",");
    case proc_kind::interleave: return "Interleave" + kids(",");
    case proc_kind::cond:
      return "Cond(" + show_expr(*p.exprs[0]) + "," + show_proc(*p.kids[0]) + "," + show_proc(*p.kids[1]) + ")";
    case proc_kind::mu: return "MuTail(" + show_proc(*p.kids[0]) + ")";
    case proc_kind::ref: {
      std::string s = "Ref(" + p.name;
      for (const auto& a : p.exprs) s += "," + show_expr(*a);
      return s + ")";
    }
  }
  return "?";
}

}  // namespace rdc
