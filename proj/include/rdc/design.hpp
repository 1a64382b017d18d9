#pragma once

#include <functional>
#include <vector>

#include "rdc/contract.hpp"

namespace rdc {

// Designs are relations over {ok, st}; their parts are relations over {st}.

// (ok ∧ pre) ⇒ (ok′ ∧ post)
rel make_design(const rel& pre, const rel& post);
// Both require H1 ∘ H2; throw not_h_healthy otherwise.
rel pre_D(const rel& d);   // ¬D[ok, ¬ok′]
rel post_D(const rel& d);  // D[ok, ok′]

rel top_D(const universe_ptr& u);     // true ⊢ false
rel bottom_D(const universe_ptr& u);  // false ⊢ false
rel ii_D(const universe_ptr& u);      // true ⊢ II
// true ⊢ st′ = σ(st); an undefined σ makes the design miraculous at st.
rel assign_D(const universe_ptr& u, const state_fn& sigma);

// Condition over the initial state as a state relation.
rel state_pred(const universe_ptr& u, const std::function<bool(int)>& s);

struct design_refinement {
  bool pre_weakened = true;       // [P₁ ⇒ Q₁]
  bool post_strengthened = true;  // [Q₂ ∧ P₁ ⇒ P₂]
  bool holds() const { return pre_weakened && post_strengthened; }
};
// (P₁ ⊢ P₂) ⊑ (Q₁ ⊢ Q₂) by the two obligations on extracted parts.
design_refinement design_refines(const rel& spec, const rel& impl);

// {p} Q {r} iff (p ⊢ r) ⊑ Q.
bool hoare(const rel& p, const rel& q, const rel& r);
// frame : [pre, post] = pre ⊢ post ∧ every variable outside the frame unchanged.
rel spec_stmt(const std::vector<int>& frame_vars, const rel& pre, const rel& post);

// Lifting between designs and contracts. lift_RD requires N; throws not_n_healthy.
contract lift_RD(const rel& d);
rel drop_DR(const contract& c);

}  // namespace rdc
