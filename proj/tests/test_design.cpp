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

#include "multibattle/design.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

using namespace multibattle;

TEST_CASE("g profile: closed-form values and symmetry") {
  // n=5, p=0.9: the boundary scores are exact decimals.
  const std::vector<double> g = g_values(5, 0.9);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == doctest::Approx(0.6562).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.2952).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(0.0972).epsilon(1e-12));
  CHECK(g[3] == doctest::Approx(g[1]).epsilon(1e-15));
  CHECK(g[4] == doctest::Approx(g[0]).epsilon(1e-15));

  // Single battle: both one-sided tails are the whole distribution.
  const std::vector<double> g1 = g_values(1, 0.6);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == doctest::Approx(2.0).epsilon(1e-15));

  std::mt19937_64 gen(808);
  std::uniform_real_distribution<double> up(0.5, 0.999);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 25);
    const std::vector<double> gr = g_values(n, up(gen));
    for (int k = 0; k < n; ++k) {
      CHECK(gr[static_cast<size_t>(k)] ==
            doctest::Approx(gr[static_cast<size_t>(n - 1 - k)]).epsilon(1e-13));
    }
  }

  CHECK_THROWS_AS(g_values(0, 0.6), std::domain_error);
  CHECK_THROWS_AS(g_values(5, 0.4), std::domain_error);
  CHECK_THROWS_AS(g_values(5, 1.0), std::domain_error);
}

TEST_CASE("k-star selection: interior, corner, and tie handling") {
  // Lopsided contest concentrates the prize: k* = 0, winner-take-all.
  CHECK(optimal_k_star(5, 0.9) == 0);
  // Balanced contest uses the narrowest margin available.
  CHECK(optimal_k_star(5, 0.5) == 2);
  CHECK(optimal_k_star(4, 0.5) == 1);
  CHECK(optimal_k_star(1, 0.7) == 0);
  // n=20 at the asymmetric baseline probability below stays narrow.
  CHECK(optimal_k_star(20, 0.5803893920284021) == 9);
}

TEST_CASE("optimal rule: majority at symmetric costs, monotone threshold") {
  for (int n : {3, 5, 7, 9, 11, 13, 15}) {
    const ContestParams params{n, 0.1, 1.0, 1.0};
    const DesignResult res = optimal_rule(params);
    CHECK(res.threshold == (n + 1) / 2);
    CHECK(res.rule.shares == majority_rule(n).shares);
    CHECK(res.within_sufficient_bound == (params.r <= 2.0 / (n + 1)));
  }

  // The asymmetric version routes through the baseline probability.
  const ContestParams params{20, 0.08, 1.0, 1.5};
  const DesignResult via_costs = optimal_rule(params);
  const DesignResult via_p = optimal_rule_at(params, baseline_probs(params).a);
  CHECK(via_costs.threshold == 11);
  CHECK(via_costs.rule.shares == via_p.rule.shares);
  CHECK(via_costs.equilibrium.total_effort ==
        doctest::Approx(via_p.equilibrium.total_effort).epsilon(1e-15));
  CHECK(via_costs.rule.shares == tie_margin_rule(20, 11).shares);

  CHECK_THROWS_AS(optimal_rule_at(params, 0.3), std::domain_error);
}

TEST_CASE("threshold sweep is weakly increasing and matches pointwise") {
  const std::array<double, 10> grid = {0.50, 0.55, 0.60, 0.65, 0.70,
                                       0.75, 0.80, 0.85, 0.90, 0.95};
  const std::vector<int> ts = sweep_threshold(5, grid);
  const std::vector<int> expected = {3, 3, 3, 3, 3, 4, 4, 5, 5, 5};
  CHECK(ts == expected);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(ts[i] == 5 - optimal_k_star(5, grid[i]));
  }

  for (int n : {3, 8, 13, 21}) {
    std::vector<double> fine;
    for (int i = 0; i < 200; ++i) fine.push_back(0.5 + 0.49 * i / 199.0);
    const std::vector<int> t = sweep_threshold(n, fine);
    for (size_t i = 1; i < t.size(); ++i) CHECK(t[i] >= t[i - 1]);
    CHECK(t.front() == n / 2 + 1);
    CHECK(t.back() == n);
  }

  CHECK(sweep_threshold(5, std::span<const double>{}).empty());
  const std::array<double, 2> bad = {0.7, 0.6};
  CHECK_THROWS_AS(sweep_threshold(5, bad), std::invalid_argument);
  const std::array<double, 1> out = {0.4};
  CHECK_THROWS_AS(sweep_threshold(5, out), std::domain_error);
}

TEST_CASE("brute force: counts, winners, and agreement with the rule") {
  const std::array<double, 3> coarse = {0.0, 0.5, 1.0};

  // n=5 over {0, 1/2, 1}: three free upper shares from {1/2, 1} give
  // C(4,3) = 4 feasible rules, and the majority rule wins near p = 1/2.
  const ContestParams params{5, 0.2, 1.0, 1.3};
  const BruteForceResult bf = brute_force_optimal(params, coarse);
  CHECK(bf.enumerated == 4);
  const DesignResult opt = optimal_rule(params);
  CHECK(bf.rule.shares == opt.rule.shares);
  CHECK(bf.total_effort ==
        doctest::Approx(opt.equilibrium.total_effort).epsilon(1e-12));
  CHECK(bf.spread == doctest::Approx(opt.equilibrium.spread).epsilon(1e-12));

  // Even n: the middle share is forced to 1/2, two free slots remain.
  const ContestParams even{4, 0.2, 1.0, 1.0};
  const BruteForceResult bfe = brute_force_optimal_at(even, 0.55, coarse);
  CHECK(bfe.enumerated == 3);
  CHECK(bfe.rule.shares == optimal_rule_at(even, 0.55).rule.shares);

  // Tenths grid: six usable levels, C(8,3) = 56 rules; the tie-margin
  // optimum still wins even though non-tie-margin shapes are available.
  std::vector<double> tenths;
  for (int i = 0; i <= 10; ++i) tenths.push_back(i / 10.0);
  for (double p : {0.5, 0.62, 0.73, 0.88, 0.97}) {
    const BruteForceResult rich = brute_force_optimal_at(params, p, tenths);
    CHECK(rich.enumerated == 56);
    const DesignResult best = optimal_rule_at(params, p);
    CHECK(rich.rule.shares == best.rule.shares);
    CHECK(rich.total_effort ==
          doctest::Approx(best.equilibrium.total_effort).epsilon(1e-12));
  }
}

TEST_CASE("brute force: validation and budget") {
  const ContestParams params{5, 0.2, 1.0, 1.0};
  const std::array<double, 2> no_half = {0.0, 1.0};
  CHECK_THROWS_AS(brute_force_optimal_at(params, 0.6, no_half),
                  std::invalid_argument);
  const std::array<double, 3> out_of_range = {0.0, 0.5, 1.5};
  CHECK_THROWS_AS(brute_force_optimal_at(params, 0.6, out_of_range),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_optimal_at(params, 0.2,
                                         std::array<double, 3>{0.0, 0.5, 1.0}),
                  std::domain_error);

  // 21 levels above 1/2 across 15 free slots is ~3.2e9 tuples.
  std::vector<double> fine;
  for (int i = 0; i <= 40; ++i) fine.push_back(i / 40.0);
  const ContestParams big{29, 0.05, 1.0, 1.0};
  CHECK_THROWS_AS(brute_force_optimal_at(big, 0.6, fine), std::length_error);
}

TEST_CASE("brute force: serial and parallel agree exactly") {
  std::mt19937_64 gen(909);
  std::uniform_real_distribution<double> up(0.5, 0.98);
  std::vector<double> tenths;
  for (int i = 0; i <= 10; ++i) tenths.push_back(i / 10.0);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 8);
    const ContestParams params =
        test_support::random_params(gen, n, 2.0 / (n + 1), 10.0);
    const double p = up(gen);
    const BruteForceResult s =
        brute_force_optimal_at(params, p, tenths, Exec::serial);
    const BruteForceResult par =
        brute_force_optimal_at(params, p, tenths, Exec::parallel);
    CHECK(s.rule.shares == par.rule.shares);
    CHECK(s.spread == par.spread);
    CHECK(s.total_effort == par.total_effort);
    CHECK(s.enumerated == par.enumerated);
  }
}

TEST_CASE("decisiveness bounds") {
  CHECK(asymmetric_r_bound(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(asymmetric_r_bound(7) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(asymmetric_r_bound(19) == doctest::Approx(0.1).epsilon(1e-15));

  CHECK(symmetric_r_bound(1) == 1.0);
  CHECK(symmetric_r_bound(3) == 1.0);   // 8/6 clips at 1
  CHECK(symmetric_r_bound(5) == 1.0);   // 32/30 clips at 1
  CHECK(symmetric_r_bound(7) ==
        doctest::Approx(128.0 / 140.0).epsilon(1e-13));
  CHECK(symmetric_r_bound(9) ==
        doctest::Approx(512.0 / 630.0).epsilon(1e-13));
  CHECK(symmetric_r_bound(31) ==
        doctest::Approx(0.4465882774848136).epsilon(1e-12));

  CHECK_THROWS_AS(symmetric_r_bound(4), std::domain_error);
  CHECK_THROWS_AS(symmetric_r_bound(0), std::domain_error);
  CHECK_THROWS_AS(asymmetric_r_bound(0), std::domain_error);
}
