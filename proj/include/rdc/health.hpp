#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdc/rel.hpp"

namespace rdc {

enum class health { R1, R2c, R3, R3h, Rs, RD1, RD2, RD3, SRD, NSRD, RR, RC1, RC2, RC, R4, H1, H2, H3, H, N };

const char* health_name(health h);
std::optional<health> health_from_name(const std::string& s);
const std::vector<health>& all_health();

// Reactive conditions need the full alphabet; the design conditions H* and N
// accept any alphabet containing ok.
rel apply(health h, const rel& p);
bool is_healthy(health h, const rel& p);

// Identities and units used by the transformers.
rel ii_srd(const universe_ptr& u);                 // state hidden in intermediate states
rel ii_rea(const universe_ptr& u);                 // state copied in intermediate states
rel j_rel(const universe_ptr& u, alpha a);         // (ok ⇒ ok′) ∧ every other variable unchanged
rel ii_design(const universe_ptr& u, alpha a);     // true ⊢ II
rel true_r_full(const universe_ptr& u);            // tr ≤ tr′
rel trace_decreases(const universe_ptr& u);        // tr′ ≤ tr, everything else free

struct meta_report {
  bool idempotent = true, monotone = true, continuous = true;
  std::vector<std::string> failures;
  bool ok() const { return idempotent && monotone && continuous; }
};

// Idempotence per sample, monotonicity on every ordered pair (including the
// pair (P ∧ Q, P)), continuity on seeded random subsets of size 2 to 5.
meta_report check_meta(const rel_fn& f, const std::vector<rel>& samples, std::uint64_t seed, int subsets = 40);
meta_report check_meta(health h, const std::vector<rel>& samples, std::uint64_t seed, int subsets = 40);

bool commutes(const rel_fn& f, const rel_fn& g, const std::vector<rel>& samples, rel* witness = nullptr);
bool commutes(health a, health b, const std::vector<rel>& samples, rel* witness = nullptr);

struct theory_bounds {
  rel top, bottom;
};
theory_bounds theory_lattice(health h, const universe_ptr& u, alpha a = full_alpha);

}  // namespace rdc
