#include <algorithm>
#include <sstream>

#include "rdc/circus.hpp"

namespace rdc {

namespace {

constexpr int event_cap = 12;

std::string card_set(int cards) {
  std::string s = "{";
  for (int k = 0; k < cards; ++k) s += (k ? ", " : "") + std::to_string(k);
  return s + "}";
}

}  // namespace

std::string mondex_source(const mondex_params& p) {
  if (p.cards < 1 || p.amounts.empty() || p.max_balance < 0)
    throw error(errc::invalid_argument, "card system needs cards, amounts and a balance range");
  const int lo = *std::min_element(p.amounts.begin(), p.amounts.end());
  const int hi = *std::max_element(p.amounts.begin(), p.amounts.end());
  const long events = static_cast<long>(p.cards) * p.cards * (hi - lo + 1) + 2L * p.cards;
  if (events > event_cap)
    throw error(errc::alphabet_too_large, "card system needs " + std::to_string(events) + " events; the cap is " +
                                              std::to_string(event_cap));
  const int last = p.cards - 1;
  std::ostringstream o;
  o << "// Card system: " << p.cards << " cards, balances 0.." << p.max_balance << ".\n";
  o << "channel pay(0.." << last << ", 0.." << last << ", " << lo << ".." << hi << ")\n";
  o << "channel reject(0.." << last << ")\n";
  o << "channel accept(0.." << last << ")\n";
  o << "state accts : map 0.." << last << " to 0.." << p.max_balance << "\n";
  o << "bound " << p.bound << "\n\n";

  const std::string invalid = "i = j or not (i in dom accts) or n <= 0 or n > accts(i)";
  o << "process Pay(i, j, n) = pay.i.j.n -> (if " << invalid << " then reject.i -> skip\n"
    << "  else (accts(i) := accts(i) - n ; accts(j) := accts(j) + n ; accept.i -> skip))\n";
  o << "// Broken variant: credits the payee without debiting the payer.\n";
  o << "process PayCreditOnly(i, j, n) = pay.i.j.n -> (if " << invalid << " then reject.i -> skip\n"
    << "  else (accts(j) := accts(j) + n ; accept.i -> skip))\n";

  auto choice = [&](bool distinct) {
    std::string s;
    for (int i = 0; i < p.cards; ++i)
      for (int j = 0; j < p.cards; ++j)
        for (int n : p.amounts) {
          if (distinct && i == j) continue;
          s += (s.empty() ? "" : " |~| ") + std::string("Pay(") + std::to_string(i) + ", " + std::to_string(j) + ", " +
               std::to_string(n) + ")";
        }
    return s.empty() ? std::string("stop") : s;
  };
  o << "process SomePay = " << choice(true) << "\n";
  o << "// Includes i = j, which always takes the reject branch.\n";
  o << "process SomePayAll = " << choice(false) << "\n";
  o << "process Cycle = mu X . SomePay ; X\n";
  std::string init = "{";
  for (int k = 0; k < p.cards; ++k) init += (k ? ", " : "") + std::to_string(k) + " |-> " + std::to_string(p.initial);
  init += "}";
  o << "process System = accts := " << init << " ; Cycle\n\n";

  const std::string cs = "dom(accts) = " + card_set(p.cards);
  o << "contract Conservation = [" << cs << " |- true <> sum(accts) = sum(accts')]\n";
  std::string nonneg;
  for (int k = 0; k < p.cards; ++k)
    nonneg += (k ? " and " : "") + std::string("(accts(") + std::to_string(k) + ") >= 0 => accts'(" + std::to_string(k) +
              ") >= 0)";
  o << "contract NoOverdraft = [" << cs << " |- true <> " << nonneg << "]\n";
  o << "contract Acceptance(i, j, n) = [" << cs
    << " |- (tt != <> and last(tt) = pay.i.j.n and n <= accts(i)) => accept.i notin ref' <> true]\n";
  return o.str();
}

model_spec mondex_spec(const mondex_params& p) { return parse_spec(mondex_source(p)); }

}  // namespace rdc
