// Acceptance gate: every structural and numeric law the library promises, run
// end to end on the full built-in grid, one pass/fail line per criterion.
// Exact equalities throughout; no tolerances. Single-threaded so the runtime
// budget (60 s total, 5 s for the enumeration oracle) means one core.

#include <chrono>
#include <iostream>
#include <vector>

#include "primel/suites.hpp"

using namespace primel;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void criterion(int number, const std::string& title,
               const std::vector<detail::check_task>& tasks, double budget_seconds = 0.0) {
  auto start = std::chrono::steady_clock::now();
  std::vector<check_result> results = detail::run_tasks(tasks, 1);
  double elapsed = seconds_since(start);
  std::size_t passed = 0;
  std::string first_failure;
  for (const auto& r : results) {
    if (r.pass)
      ++passed;
    else if (first_failure.empty())
      first_failure = r.check + " " + r.subject + ": " + r.detail;
  }
  bool ok = passed == results.size();
  if (budget_seconds > 0.0 && elapsed > budget_seconds) {
    ok = false;
    first_failure = "runtime " + std::to_string(elapsed) + " s exceeds " +
                    std::to_string(budget_seconds) + " s";
  }
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << title << " (" << passed << "/"
            << results.size() << " checks)";
  if (!ok) std::cout << " -- " << first_failure;
  std::cout << "\n";
  if (!ok) ++failures;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();

  criterion(1, "rank law: rank(G^x) = |G|-1 and J_G is a rank-1 direct summand",
            tasks_rank_law());
  criterion(2, "measure structure: D_G rank-1 summand, perfect pairing, A (x) D_G = A'",
            tasks_duality());
  criterion(3, "Oort-Tate formula: Ann(x) = span{x^(p-1) - a} for p in {2,3,5}",
            tasks_oort_tate());
  criterion(4, "Raynaud group formula: J = span{x1 x2 - d1 d2} over Z/4",
            tasks_raynaud_formula());
  criterion(5, "product formula: J_{G1 x G2} = J_1 (x) J_2", tasks_product_formula());
  criterion(6, "integration in stages: invariant, lift-independent, Haar to Haar",
            tasks_integration());
  criterion(7, "extension formulas: J_A = pi^{-1}(J_B) J_C A and the cartesian-square tests",
            tasks_extensions());
  criterion(8, "primitive rank law: rank = (p^h - 1) p^(h(i-1)) on all towers", tasks_towers());
  criterion(9, "point semantics: worked non-nullity examples and the p*Phi_p(y) rule",
            tasks_points());
  criterion(10, "base-change commutation: pushing J equals J after base change",
            tasks_base_change());
  criterion(11, "oracle equivalence: normal-form kernels/annihilators match enumeration",
            tasks_oracle_equivalence(), 5.0);
  criterion(12, "etale decomposition: A = I (+) J for constant groups and over Q",
            tasks_etale_split());

  double total = seconds_since(start);
  std::cout << (failures == 0 ? "[PASS]" : "[FAIL]") << " total: " << (12 - failures)
            << "/12 criteria, " << total << " s on one core\n";
  if (total > 60.0) {
    std::cout << "[FAIL] runtime budget: " << total << " s exceeds 60 s\n";
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
