#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdc/bits.hpp"
#include "rdc/universe.hpp"

namespace rdc {

// Observational variables. A relation is homogeneous over a subset of these:
// each present variable occurs both unprimed and primed. The unprimed refusal
// `ref` exists so that identities can copy refusals across a composition.
enum obs_var : unsigned { v_ok = 1, v_wait = 2, v_tr = 4, v_st = 8, v_ref = 16 };
using alpha = unsigned;
inline constexpr alpha full_alpha = v_ok | v_wait | v_tr | v_st | v_ref;
inline constexpr alpha design_alpha = v_ok | v_st;
inline constexpr alpha state_alpha = v_st;

// Variable selection for quantifiers: unprimed in the low bits, primed shifted.
using var_set = unsigned;
constexpr var_set primed(unsigned v) { return v << 5; }
inline constexpr var_set ok_vars = v_ok | primed(v_ok) | v_wait | primed(v_wait);

struct side {
  bool ok = false, wait = false;
  int tr = 0, st = 0;
  unsigned ref = 0;
  bool operator==(const side&) const = default;
};

struct binding {
  side u;  // before
  side p;  // after
  bool operator==(const binding&) const = default;
};

class rel {
 public:
  rel() = default;
  rel(universe_ptr u, alpha a);  // empty: false

  static rel top(universe_ptr u, alpha a) { return rel(std::move(u), a); }
  static rel bottom(universe_ptr u, alpha a);
  static rel from(universe_ptr u, alpha a, const std::function<bool(const binding&)>& pred);

  const universe& uni() const { return *u_; }
  const universe_ptr& uni_ptr() const { return u_; }
  alpha alphabet() const { return a_; }
  bool has(obs_var v) const { return (a_ & v) != 0; }

  int side_count() const { return nside_; }
  int side_index(const side& s) const;
  side side_at(int i) const;
  std::size_t index(const binding& b) const {
    return static_cast<std::size_t>(side_index(b.u)) * nside_ + side_index(b.p);
  }
  binding binding_at(std::size_t i) const { return {side_at(static_cast<int>(i / nside_)), side_at(static_cast<int>(i % nside_))}; }
  // Drops fields outside the alphabet so that lookups are well defined.
  side canonical(side s) const;

  bool contains(const binding& b) const { return rows_.test(index(b)); }
  void insert(const binding& b) { rows_.set(index(b)); }
  std::size_t size() const { return rows_.count(); }
  bool empty() const { return rows_.none(); }

  template <class F>
  void for_each(F&& f) const {
    rows_.for_each([&](std::size_t i) { f(binding_at(i)); });
  }

  bits& raw() { return rows_; }
  const bits& raw() const { return rows_; }

  bool same_space(const rel& o) const { return u_ == o.u_ && a_ == o.a_; }
  bool operator==(const rel& o) const;

 private:
  universe_ptr u_;
  alpha a_ = 0;
  int nside_ = 0;
  int n_tr_ = 1, n_st_ = 1, n_ref_ = 1;
  bits rows_;
};

// Boolean structure (set operations within the universe).
rel conj(const rel& p, const rel& q);
rel disj(const rel& p, const rel& q);
rel neg(const rel& p);
rel implies(const rel& p, const rel& q);

// b ∈ result iff some reassignment of `vars` in b lies in p.
rel exists(const rel& p, var_set vars);

// b ∈ result iff f(b) ∈ p; nullopt excludes b (undefined expression).
rel remap(const rel& p, const std::function<std::optional<binding>(const binding&)>& f);
// P[e/x]: `update` writes the substituted values into a copy of the binding.
rel subst(const rel& p, const std::function<void(binding&)>& update);

// Alphabet change: `extend` leaves the new variables unconstrained, `project`
// hides the dropped ones existentially.
rel extend(const rel& p, alpha to);
rel project(const rel& p, alpha to);

// ∃ v0 • P[v0/v′] ∧ Q[v0/v]
rel seq_compose(const rel& p, const rel& q);

// (b ∧ P) ∨ (¬b ∧ Q); b may only constrain unprimed variables.
rel cond(const rel& p, const rel& b, const rel& q);
bool unprimed_only(const rel& b);

// II: every variable of the alphabet is unchanged.
rel skip_rel(universe_ptr u, alpha a);
// State update: st′ = σ(st), everything else unchanged; undefined σ excludes the row.
rel assign_rel(universe_ptr u, alpha a, const std::function<std::optional<int>(int)>& sigma);

struct refinement {
  bool holds = true;
  std::vector<binding> witnesses;  // implementation bindings the specification rules out
};
// P ⊑ Q iff Q ⊆ P.
refinement refines(const rel& p, const rel& q, std::size_t max_witnesses = 10);
bool refined_by(const rel& p, const rel& q);

rel inf(const std::vector<rel>& family);  // union; non-empty family
rel sup(const std::vector<rel>& family);  // intersection; non-empty family

using rel_fn = std::function<rel(const rel&)>;
// Least fixed point, iterating from true; monotonicity is sampled on `samples`
// and along the iteration chain.
rel mu(const rel_fn& f, universe_ptr u, alpha a, const std::vector<rel>& samples = {});
// Greatest fixed point, iterating from false.
rel nu(const rel_fn& f, universe_ptr u, alpha a, const std::vector<rel>& samples = {});
// Iterates from `start` until stable; returns the number of steps taken.
rel iterate(const rel_fn& f, rel start, int* steps = nullptr);

std::string show_binding(const universe& u, alpha a, const binding& b);

}  // namespace rdc
