#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "rdc/rel.hpp"

namespace rdc {

// Which primed observations a reactive relation keeps besides (st, tt).
// A dimension that is absent is unconstrained.
enum rr_dim : unsigned { d_st1 = 1, d_ref1 = 2 };
using rr_shape = unsigned;
inline constexpr rr_shape cond_shape = 0;               // {st, tt}
inline constexpr rr_shape peri_shape = d_ref1;          // {st, tt, ref′}
inline constexpr rr_shape post_shape = d_st1;           // {st, tt, st′}
inline constexpr rr_shape rel_shape = d_st1 | d_ref1;   // {st, tt, st′, ref′}

struct rr_row {
  int st = 0, tt = 0, st1 = 0;
  unsigned ref1 = 0;
  bool operator==(const rr_row&) const = default;
};

// A reactive relation in trace-contribution form: tt stands for tr′ − tr.
class rr {
 public:
  rr() = default;
  rr(universe_ptr u, rr_shape shape);  // false

  static rr all(universe_ptr u, rr_shape shape);  // true_r
  static rr from(universe_ptr u, rr_shape shape, const std::function<bool(const rr_row&)>& pred);

  const universe& uni() const { return *u_; }
  const universe_ptr& uni_ptr() const { return u_; }
  rr_shape shape() const { return shape_; }
  bool has(rr_dim d) const { return (shape_ & d) != 0; }

  std::size_t index(const rr_row& r) const {
    return ((static_cast<std::size_t>(r.st) * nt_ + r.tt) * ns1_ + (has(d_st1) ? r.st1 : 0)) * nr1_ +
           (has(d_ref1) ? r.ref1 : 0);
  }
  rr_row row_at(std::size_t i) const;
  bool contains(const rr_row& r) const { return rows_.test(index(r)); }
  void insert(const rr_row& r) { rows_.set(index(r)); }
  std::size_t size() const { return rows_.count(); }
  bool empty() const { return rows_.none(); }

  template <class F>
  void for_each(F&& f) const {
    rows_.for_each([&](std::size_t i) { f(row_at(i)); });
  }

  // Bits for one (st, tt) pair: ns1 * nr1 consecutive positions.
  std::size_t block() const { return static_cast<std::size_t>(ns1_) * nr1_; }
  std::size_t block_of(int st, int tt) const { return (static_cast<std::size_t>(st) * nt_ + tt) * block(); }

  bits& raw() { return rows_; }
  const bits& raw() const { return rows_; }

  bool operator==(const rr& o) const { return u_ == o.u_ && shape_ == o.shape_ && rows_ == o.rows_; }

 private:
  universe_ptr u_;
  rr_shape shape_ = 0;
  int ns_ = 1, nt_ = 1, ns1_ = 1, nr1_ = 1;
  bits rows_;
};

// Bound truncation: compositions whose trace would exceed the bound are
// dropped and counted here.
std::uint64_t truncations();
void reset_truncations();
void count_truncation(std::uint64_t n = 1);

// Suspends truncation counting for the lifetime of the guard (closures whose
// dropped rows are extensions of rows already present).
class truncation_pause {
 public:
  truncation_pause();
  ~truncation_pause();
  truncation_pause(const truncation_pause&) = delete;
  truncation_pause& operator=(const truncation_pause&) = delete;
};

// Shape conversion. `reshape` adds free dimensions and drops ones the relation
// does not depend on; dropping a constrained dimension throws.
rr reshape(const rr& p, rr_shape to);
bool depends_on(const rr& p, rr_dim d);
rr hide(const rr& p, rr_dim d);  // ∃ over the dimension
bool same_relation(const rr& p, const rr& q);

// Reactive Boolean operators. Shapes are unified by widening.
rr true_r(const universe_ptr& u, rr_shape shape = cond_shape);
rr false_r(const universe_ptr& u, rr_shape shape = cond_shape);
rr neg_r(const rr& p);
rr conj_r(const rr& p, const rr& q);
rr disj_r(const rr& p, const rr& q);
rr implies_r(const rr& p, const rr& q);

// Sequential composition; the intermediate refusal is hidden.
rr rr_seq(const rr& p, const rr& q);

// ⟨σ⟩_r, II_r and [s]_r. Undefined σ excludes the initial state.
using state_fn = std::function<std::optional<int>(int)>;
rr assigns_r(const universe_ptr& u, const state_fn& sigma);
rr ii_r(const universe_ptr& u);
rr state_cond(const universe_ptr& u, const std::function<bool(int)>& s);
// σ † P: the initial state is replaced by σ(st).
rr subst_state(const rr& p, const state_fn& sigma);

// Reactive conditions: prefix closure (RC2 form) and extension closure of the
// complement (RC1 form) are both checked.
struct rc_check {
  bool prefix_closed = true;
  bool complement_extension_closed = true;
  bool agree() const { return prefix_closed == complement_extension_closed; }
};
rc_check check_rc(const rr& p);
bool is_rc(const rr& p);

// Weakest reactive precondition, by decomposition of the trace.
rr wp_r(const rr& p, const rr& q);
// The same from its definition ¬_r (P ; ¬_r Q).
rr wp_r_literal(const rr& p, const rr& q);

// Conversion to and from the full-binding model.
rel to_full(const rr& p);
rr from_full(const rel& q, rr_shape shape = rel_shape);

std::string show_row(const universe& u, rr_shape shape, const rr_row& r);

}  // namespace rdc
