// Copyright 2026 The Multibattle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Times the OpenMP kernels against their serial reference and confirms
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multibattle/design.hpp"
#include "multibattle/simulate.hpp"
#include "multibattle/verification.hpp"

using namespace multibattle;

namespace {

template <typename F>
double ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-22s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run serially\n\n");
#endif

  {
    const ContestParams params{20, 0.8, 1.0, 1.5};
    const PrizeRule rule = tie_margin_rule(20, 17);
    const EquilibriumSolution sol = candidate_equilibrium(params, rule);
    ScanOptions opts;
    opts.points = 200001;
    BestResponse rs, rp;
    const double ts = ms([&] {
      rs = global_best_response(params, rule, Player::B, sol.x_a, opts,
                                Exec::serial);
    });
    const double tp = ms([&] {
      rp = global_best_response(params, rule, Player::B, sol.x_a, opts,
                                Exec::parallel);
    });
    report("best-response scan", ts, tp,
           rs.effort == rp.effort && rs.payoff == rp.payoff);
  }

  {
    const ContestParams params{29, 0.06, 1.0, 2.0};
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    BruteForceResult rs, rp;
    const double ts =
        ms([&] { rs = brute_force_optimal(params, grid, Exec::serial); });
    const double tp =
        ms([&] { rp = brute_force_optimal(params, grid, Exec::parallel); });
    report("brute-force search", ts, tp,
           rs.rule.shares == rp.rule.shares && rs.spread == rp.spread);
  }

  {
    const ContestParams params{20, 0.8, 1.0, 1.5};
    const PrizeRule rule = tie_margin_rule(20, 17);
    const EquilibriumSolution sol = candidate_equilibrium(params, rule);
    const EffortProfile a(20, sol.x_a), b(20, sol.x_b);
    SimulationSummary rs, rp;
    const double ts = ms([&] {
      rs = simulate_contest(params, rule, a, b, 2000000, 42, Exec::serial);
    });
    const double tp = ms([&] {
      rp = simulate_contest(params, rule, a, b, 2000000, 42, Exec::parallel);
    });
    report("monte-carlo contests", ts, tp, rs == rp);
  }
  return 0;
}
