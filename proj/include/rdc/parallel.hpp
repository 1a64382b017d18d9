#pragma once

#include <functional>
#include <memory>
#include <string>

#include "rdc/contract.hpp"

namespace rdc {

// A contribution is one (tt, st′, ref′) triple, numbered as the low part of a
// rel-shaped rr index: (tt * S + st′) * R + ref′.
int contribution_count(const universe& u);
int contribution_of(const universe& u, int tt, int st1, unsigned ref1);
rr_row contribution_row(const universe& u, int st, int c);

// An inner merge: for an initial state and the contributions of the two
// sides, the set of merged contributions. Only contributions are stored, so
// ok/wait copies are never visible and trace history is never read.
// The generator ORs outputs into `out` (contribution_count bits) and returns
// the number of outputs it had to drop because they exceed the bound.
class merge_rel {
 public:
  using generator = std::function<std::size_t(int st, int left, int right, bits& out)>;

  merge_rel() = default;
  merge_rel(universe_ptr u, std::string name, generator g);

  const universe& uni() const { return *u_; }
  const universe_ptr& uni_ptr() const { return u_; }
  const std::string& name() const { return name_; }

  std::size_t outputs(int st, int left, int right, bits& out) const { return gen_(st, left, right, out); }
  bool contains(int st, int left, int right, int out) const;
  std::size_t size() const;  // number of (st, left, right, out) rows

  // Swap test over every input pair; cached after the first call.
  bool symmetric() const;

 private:
  universe_ptr u_;
  std::string name_;
  generator gen_;
  std::shared_ptr<int> symmetric_;  // -1 unknown, 0 no, 1 yes
};

// tt ∈ interleavings(tt₀, tt₁), ref′ ⊆ ref₀′ ∩ ref₁′, st′ unconstrained.
merge_rel interleave_merge(const universe_ptr& u);

// Contribution-level P ∥_M Q on rel-shaped relations. Dropped interleavings
// are counted as truncations.
rr merge_par(const rr& p, const rr& q, const merge_rel& m);
// P ⌊M⌋ Q: the final state of the merge is hidden; result is peri-shaped.
rr intermediate_merge(const rr& p, const rr& q, const merge_rel& m);
// ¬_r((¬_r Q) ∥_{M ; true_r} P). Throws not_rc unless Q is a reactive condition.
rr wpp(const rr& p, const merge_rel& m, const rr& q);

// Triple-level parallel composition. Throws merge_not_symmetric.
contract rd_par(const contract& a, const contract& b, const merge_rel& m);

// (P₀ ∧ Q₁ ∧ v′ = v) ; M_R(M) over full bindings, where M_R(M) is
// RD3(RD1(R3h(N1(M)))) and N1 sets wait′ = 0.wait ∨ 1.wait, ok′ = 0.ok ∧ 1.ok,
// tr ≤ tr′ and the inner merge on the two contributions.
rel par_by_merge(const rel& p, const rel& q, const merge_rel& m);

}  // namespace rdc
