// A short tour of the library on S5 and the quintic x^5 - x - 1.

#include <iostream>

#include "restind/report.hpp"

using namespace restind;

int main() {
  auto G = named_group("S5");
  auto t = character_table(G);
  std::cout << "S5: order " << G->order() << ", " << G->class_count() << " classes, degrees";
  for (auto d : t->degrees()) std::cout << " " << d;
  std::cout << "\n";

  RestrictionContext ctx(G);
  const auto A5 = even_subgroup(G);
  TOptions opt;
  opt.allow_shortcuts = false;
  const auto d = check_hypothesis_T(ctx, A5, opt);
  std::cout << "T(S5, A5): " << verdict_name(d.verdict) << ", rank " << d.rank << " of " << d.target.size() << " using "
            << d.certificate.size() << " restricted inductions\n";
  auto [cyc, target] = cyclic_only_rank(ctx, A5);
  std::cout << "cyclic subgroups alone reach rank " << cyc << " of " << target << "\n";

  const auto rep = malle_report(natural_action(G), A5);
  std::cout << "natural action: a = " << rep.a << ", m_pi = " << to_pq(rep.m_pi) << ", m_reg = " << to_pq(rep.m_reg) << "\n";

  const auto f = parse_polynomial("x^5-x-1");
  const auto fib = fibered_check(chebotarev_tally(f, 100000));
  std::cout << f.to_string() << " up to 10^5, disc " << fib.tally.disc.get_str() << ":\n";
  for (const auto& r : fib.rows)
    std::cout << "  " << cycle_type_string(r.type) << "  observed " << r.observed << "  predicted " << r.predicted.get_d() << "\n";
  std::cout << "parity identities " << (fib.parity_even && fib.parity_odd ? "exact" : "broken") << "\n";

  RegionParams p{100.0, 0.5, 120};
  const auto eta = eta_K_log(std::log(1e30), p);
  std::cout << "eta_K at x = 1e30: " << eta.closed_form << " (grid " << eta.grid << ")\n";
}
