#include "rdc/sampling.hpp"

#include <memory>

namespace rdc {

bool sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

int sampler::below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

rel sampler::relation(alpha a, double density) {
  rel r(u_, a);
  for (std::size_t i = 0; i < r.raw().size(); ++i)
    if (coin(density)) r.raw().set(i);
  return r;
}

rr sampler::reactive(rr_shape shape, int max_tt, double density) {
  const trace_space& ts = u_->traces();
  rr r(u_, shape);
  for (std::size_t i = 0; i < r.raw().size(); ++i)
    if (ts.length(r.row_at(i).tt) <= max_tt && coin(density)) r.raw().set(i);
  return r;
}

rr sampler::condition(double keep) {
  const trace_space& ts = u_->traces();
  rr r(u_, cond_shape);
  for (int st = 0; st < u_->n_states(); ++st) {
    if (!coin(keep)) continue;
    r.insert({st, ts.empty(), 0, 0});
    // traces are ordered by length, so a parent is decided before its children
    for (int t = 1; t < ts.size(); ++t) {
      const auto& items = ts.items(t);
      const int parent = ts.index(std::vector<int>(items.begin(), items.end() - 1));
      if (r.contains({st, parent, 0, 0}) && coin(keep)) r.insert({st, t, 0, 0});
    }
  }
  return r;
}

contract sampler::contract_sample(int max_tt, double density) {
  rr pre = below(3) == 0 ? true_r(u_) : condition();
  rr peri = reactive(peri_shape, max_tt, density);
  rr post = reactive(post_shape, max_tt, density);
  return {pre, peri, post};
}

state_fn sampler::total_state_fn() {
  auto table = std::make_shared<std::vector<int>>();
  for (int st = 0; st < u_->n_states(); ++st) table->push_back(below(u_->n_states()));
  return [table](int st) -> std::optional<int> { return (*table)[static_cast<std::size_t>(st)]; };
}

std::function<bool(int)> sampler::state_predicate(double density) {
  auto table = std::make_shared<std::vector<bool>>();
  for (int st = 0; st < u_->n_states(); ++st) table->push_back(coin(density));
  return [table](int st) { return static_cast<bool>((*table)[static_cast<std::size_t>(st)]); };
}

rel sampler::normal_design(double pre_density, double post_density) {
  std::vector<bool> pre;
  for (int st = 0; st < u_->n_states(); ++st) pre.push_back(coin(pre_density));
  rel p = rel::from(u_, state_alpha, [&](const binding& b) { return static_cast<bool>(pre[static_cast<std::size_t>(b.u.st)]); });
  return make_design(p, relation(state_alpha, post_density));
}

}  // namespace rdc
