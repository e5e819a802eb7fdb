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

#include "multibattle/prize_rule.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "test_support.hpp"

using namespace multibattle;

TEST_CASE("majority rule shapes") {
  const PrizeRule odd = majority_rule(5);
  CHECK(odd.shares == std::vector<double>{0, 0, 0, 1, 1, 1});
  const PrizeRule even = majority_rule(4);
  CHECK(even.shares == std::vector<double>{0, 0, 0.5, 1, 1});
  CHECK(feasible(odd));
  CHECK(feasible(even));
  CHECK_THROWS_AS(majority_rule(0), std::domain_error);
}

TEST_CASE("tie margin rule shapes and bounds") {
  const PrizeRule rule = tie_margin_rule(5, 4);
  CHECK(rule.shares == std::vector<double>{0, 0, 0.5, 0.5, 1, 1});
  CHECK(tie_margin_rule(5, 3).shares == majority_rule(5).shares);
  CHECK(tie_margin_rule(4, 3).shares == majority_rule(4).shares);
  // threshold = n pays only a clean sweep.
  CHECK(tie_margin_rule(3, 3).shares == std::vector<double>{0, 0.5, 0.5, 1});
  CHECK_THROWS_AS(tie_margin_rule(5, 2), std::domain_error);
  CHECK_THROWS_AS(tie_margin_rule(5, 6), std::domain_error);
  CHECK(is_tie_margin_rule(rule));
  CHECK(is_tie_margin_rule(majority_rule(7)));
  CHECK_FALSE(is_tie_margin_rule(PrizeRule{{0.5, 0.5, 0.5, 0.5}}));
  CHECK_FALSE(is_tie_margin_rule(PrizeRule{{0.2, 0.5, 0.5, 0.8}}));
}

TEST_CASE("validate reports every violated clause") {
  // Drops from 0.6 to 0.5 and the pair (0.6, 0.5) misses the budget.
  const PrizeRule bad{{0.0, 0.6, 0.5, 1.0}};
  const auto violations = validate(bad);
  REQUIRE(violations.size() == 2);
  bool saw_monotone = false, saw_budget = false;
  for (const auto& v : violations) {
    if (v.message.find("weakly increasing") != std::string::npos) {
      saw_monotone = true;
      CHECK(v.index == 1);
      CHECK(v.magnitude == doctest::Approx(0.1));
    }
    if (v.message.find("budget") != std::string::npos) {
      saw_budget = true;
      CHECK(v.index == 1);
      CHECK(v.magnitude == doctest::Approx(0.1));
    }
  }
  CHECK(saw_monotone);
  CHECK(saw_budget);

  // Balanced pair (-0.2, 1.2) passes budget; only non-negativity fires.
  const auto negative = validate(PrizeRule{{-0.2, 0.5, 1.2}});
  REQUIRE(negative.size() == 1);
  CHECK(negative[0].index == 0);
  CHECK(negative[0].magnitude == doctest::Approx(0.2));

  CHECK(validate(PrizeRule{{0.3}}).size() == 1);
  CHECK_THROWS_AS(require_feasible(bad), std::invalid_argument);
  CHECK_NOTHROW(require_feasible(majority_rule(9)));
}

TEST_CASE("feasibility tolerance forgives rounding-level slack") {
  PrizeRule rule = majority_rule(3);
  rule.shares[2] += 5e-10;  // inside the 1e-9 slack
  CHECK(feasible(rule));
  rule.shares[2] += 5e-9;
  CHECK_FALSE(feasible(rule));
}

TEST_CASE("spread closed forms") {
  // One-battle rule: spread is the single increment.
  CHECK(spread(PrizeRule{{0, 1}}, 0.3) == doctest::Approx(1.0));
  // n=2 intermediate rule: 0.5 * [theta(0|1,p) + theta(1|1,p)] = 0.5.
  for (double p : {0.0, 0.25, 0.7, 1.0}) {
    CHECK(spread(PrizeRule{{0, 0.5, 1}}, p) == doctest::Approx(0.5).epsilon(1e-14));
  }
  // Majority with n=3: V(p) = theta(1|2,p) = 2p(1-p).
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(spread(majority_rule(3), p) ==
          doctest::Approx(2.0 * p * (1.0 - p)).epsilon(1e-13));
  }
  // Endpoints pick out the extreme increments.
  const PrizeRule rule{{0, 0.2, 0.5, 0.8, 1}};
  CHECK(spread(rule, 0.0) == doctest::Approx(rule.increment(0)).epsilon(1e-14));
  CHECK(spread(rule, 1.0) == doctest::Approx(rule.increment(3)).epsilon(1e-14));
  CHECK_THROWS_AS(spread(PrizeRule{{0.3, 0.2, 0.7}}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("spread stays within [0, 1] and is symmetric in p") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 12);
    const PrizeRule rule = test_support::random_feasible_rule(gen, n);
    const double p = up(gen);
    const double v = spread(rule, p);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    // Budget balance makes the increments palindromic, so V(p) = V(1-p).
    CHECK(v == doctest::Approx(spread(rule, 1.0 - p)).epsilon(1e-11));
  }
}

TEST_CASE("spread derivative: closed form and finite differences") {
  // Majority n=3: V'(p) = 2 - 4p.
  for (double p : {0.15, 0.5, 0.72}) {
    CHECK(spread_derivative(majority_rule(3), p) ==
          doctest::Approx(2.0 - 4.0 * p).epsilon(1e-12));
  }
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> up(0.05, 0.95);
  const double h = 1e-6;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 15);
    const PrizeRule rule = test_support::random_feasible_rule(gen, n);
    const double p = up(gen);
    const double exact = spread_derivative(rule, p);
    const double fd = (spread(rule, p + h) - spread(rule, p - h)) / (2.0 * h);
    if (std::abs(exact) > 1e-6) {
      CHECK(fd == doctest::Approx(exact).epsilon(1e-5));
    } else {
      CHECK(std::abs(fd - exact) < 1e-5);
    }
  }
  CHECK_THROWS_AS(spread_derivative(majority_rule(3), 0.0), std::domain_error);
  CHECK_THROWS_AS(spread_derivative(majority_rule(3), 1.0), std::domain_error);
}

TEST_CASE("log derivative equals derivative over spread") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> up(0.05, 0.95);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 20);
    const PrizeRule rule = test_support::random_feasible_rule(gen, n);
    const double p = up(gen);
    const double ratio = spread_log_derivative(rule, p);
    const double direct = spread_derivative(rule, p) / spread(rule, p);
    CHECK(ratio == doctest::Approx(direct).epsilon(1e-9));
  }
  // Constant rule has zero spread everywhere.
  CHECK_THROWS_AS(spread_log_derivative(PrizeRule{{0.5, 0.5, 0.5}}, 0.4),
                  std::domain_error);
}

TEST_CASE("log derivative survives spread underflow") {
  // Majority increments sit at the middle win counts; at p = 1e-4 the
  // binomial weight there underflows to zero in direct space, but the
  // log-space ratio stays finite and accurate.
  const int n = 400;
  const PrizeRule rule = majority_rule(n);
  const double p = 1e-4;
  CHECK(spread(rule, p) == 0.0);  // underflowed
  const double ratio = spread_log_derivative(rule, p);
  CHECK(std::isfinite(ratio));
  // The t = 199 increment dominates: ratio ~ (t - (n-1)p) / (p(1-p)).
  CHECK(ratio == doctest::Approx(199.0 / p).epsilon(1e-2));
}

TEST_CASE("random feasible rules really are feasible") {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 16);
    CHECK(feasible(test_support::random_feasible_rule(gen, n)));
  }
}

TEST_CASE("rule file loading") {
  const char* path = "test_rule_tmp.json";
  {
    std::ofstream f(path);
    f << "[0, 0, 0.5, 1, 1]\n";
  }
  const PrizeRule rule = load_rule_file(path);
  CHECK(rule.shares == std::vector<double>{0, 0, 0.5, 1, 1});

  {
    std::ofstream f(path);
    f << "{\"not\": \"an array\"}\n";
  }
  CHECK_THROWS_AS(load_rule_file(path), std::runtime_error);

  {
    std::ofstream f(path);
    f << "[0, 0.6, 0.5, 1]\n";
  }
  try {
    load_rule_file(path);
    FAIL("infeasible rule file should throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("budget violation") != std::string::npos);
    CHECK(std::string(e.what()).find("weakly increasing") != std::string::npos);
  }

  {
    std::ofstream f(path);
    f << "[bogus\n";
  }
  CHECK_THROWS_AS(load_rule_file(path), std::runtime_error);

  CHECK_THROWS_AS(load_rule_file("no_such_file_anywhere.json"),
                  std::runtime_error);
  std::remove(path);
}
