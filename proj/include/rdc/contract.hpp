#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rdc/reactive.hpp"

namespace rdc {

// ⦗pre ⊢ peri ⋄ post⦘ with pre a reactive condition over (st, tt), peri over
// (st, tt, ref′) and post over (st, tt, st′). Peri and post are stored
// intersected with pre, so equal contracts have equal rows.
class contract {
 public:
  contract() = default;
  contract(rr pre, rr peri, rr post);

  const rr& pre() const { return pre_; }
  const rr& peri() const { return peri_; }
  const rr& post() const { return post_; }
  const universe_ptr& uni_ptr() const { return pre_.uni_ptr(); }
  const universe& uni() const { return pre_.uni(); }

  bool operator==(const contract& o) const { return pre_ == o.pre_ && peri_ == o.peri_ && post_ == o.post_; }

 private:
  rr pre_, peri_, post_;
};

contract mk_contract(const rr& pre, const rr& peri, const rr& post);

contract miracle(const universe_ptr& u);
contract chaos(const universe_ptr& u);
contract skip_srd(const universe_ptr& u);
contract assigns_R(const universe_ptr& u, const state_fn& sigma);
// e → Skip: offers e without refusing it, then terminates with the state unchanged.
contract prefix_skip(const universe_ptr& u, int e);
// Quiescent on the empty trace forever.
contract stop(const universe_ptr& u);
// Deadlock freedom: no quiescent observation refuses every event.
contract cdf(const universe_ptr& u);

// Full-binding view: Rs applied to the design with a diamond.
rel expand(const contract& c);
rel expand_triple(const rr& pre, const rr& peri, const rr& post);
rel pre_R(const rel& p);
rel peri_R(const rel& p);
rel post_R(const rel& p);
// Requires SRD; the pre must be a condition, peri free of st′, post free of ref′.
contract contract_of(const rel& p);

contract seq(const contract& a, const contract& b);
contract intchoice(const contract& a, const contract& b);
contract intchoice(const std::vector<contract>& family);
contract conj(const contract& a, const contract& b);
contract cond(const contract& a, const std::function<bool(int)>& b, const contract& c);
contract extchoice(const contract& a, const contract& b);
contract extchoice(const std::vector<contract>& family);
contract power(const contract& c, int n);

bool is_productive(const contract& c);
// Weakest fixed point of X ↦ c ; X for productive c. `steps` receives the
// iteration at which the body's powers became empty.
contract tail_rec(const contract& c, int* steps = nullptr);

// gv(n) = tr ≤ tr′ ∧ #tt < n over the full alphabet.
rel gv(const universe_ptr& u, int n);
// Bounded check of the guardedness equation on sampled relations, n < n_max.
bool gv_guard_check(const rel_fn& f, const std::vector<rel>& samples, int n_max);

struct obligation {
  std::string name;
  bool holds = true;
  rr_shape shape = cond_shape;
  std::vector<rr_row> witnesses;
};

struct contract_refinement {
  bool holds = true;
  std::array<obligation, 3> obligations;
};

// Three obligations: pre weakened, peri and post strengthened within pre.
contract_refinement refines(const contract& spec, const contract& impl, std::size_t max_witnesses = 10);
bool equiv(const contract& a, const contract& b);
// Equivalence on triples as given, without normalisation.
bool equiv_triples(const rr& p1, const rr& p2, const rr& p3, const rr& q1, const rr& q2, const rr& q3);

std::string show(const contract& c);
std::string dump(const contract& c);

}  // namespace rdc
