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

#include "multibattle/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "multibattle/binomial.hpp"

namespace multibattle {

double battle_win_prob(double own, double opp, double r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("battle_win_prob: r out of (0, 1]");
  }
  if (!(own >= 0.0) || !(opp >= 0.0)) {
    throw std::domain_error("battle_win_prob: efforts must be >= 0");
  }
  if (own == 0.0 && opp == 0.0) return 0.5;
  const double a = std::pow(own, r);
  const double b = std::pow(opp, r);
  return a / (a + b);
}

BaselineProbs baseline_probs(const ContestParams& params) {
  require_valid(params);
  const double ar = std::pow(params.cost_a, params.r);
  const double br = std::pow(params.cost_b, params.r);
  const double a = br / (ar + br);
  return {a, 1.0 - a};
}

namespace {

void check_rule_size(const ContestParams& params, const PrizeRule& rule) {
  if (rule.battles() != params.n) {
    throw std::invalid_argument(
        "rule covers " + std::to_string(rule.battles()) +
        " battles but the contest has " + std::to_string(params.n));
  }
}

}  // namespace

EquilibriumSolution candidate_equilibrium_at(const ContestParams& params,
                                             const PrizeRule& rule,
                                             double p_a) {
  require_valid(params);
  require_feasible(rule);
  check_rule_size(params, rule);
  if (!(p_a > 0.0 && p_a < 1.0)) {
    throw std::domain_error("candidate_equilibrium_at: p_a out of (0, 1)");
  }
  EquilibriumSolution sol;
  sol.p_a = p_a;
  sol.p_b = 1.0 - p_a;
  sol.spread = spread(rule, p_a);
  sol.x_a = params.r * sol.p_a * sol.p_b * sol.spread / params.cost_a;
  sol.x_b = params.r * sol.p_a * sol.p_b * sol.spread / params.cost_b;
  sol.payoff_a = uniform_payoff(params, rule, sol.x_a, sol.x_b, Player::A);
  sol.payoff_b = uniform_payoff(params, rule, sol.x_b, sol.x_a, Player::B);
  sol.total_effort = params.n * (sol.x_a + sol.x_b);
  return sol;
}

EquilibriumSolution candidate_equilibrium(const ContestParams& params,
                                          const PrizeRule& rule) {
  return candidate_equilibrium_at(params, rule, baseline_probs(params).a);
}

double uniform_payoff(const ContestParams& params, const PrizeRule& rule,
                      double own, double opp, Player who) {
  check_rule_size(params, rule);
  const int n = params.n;
  const double p = battle_win_prob(own, opp, params.r);
  double prize = 0.0;
  for (int k = 0; k <= n; ++k) {
    if (rule.share(k) != 0.0) prize += rule.share(k) * binomial_pmf(k, n, p);
  }
  const double cost = who == Player::A ? params.cost_a : params.cost_b;
  return prize - n * cost * own;
}

double profile_payoff(const ContestParams& params, const PrizeRule& rule,
                      const EffortProfile& efforts_a,
                      const EffortProfile& efforts_b, Player who) {
  check_rule_size(params, rule);
  const size_t n = static_cast<size_t>(params.n);
  if (efforts_a.size() != n || efforts_b.size() != n) {
    throw std::invalid_argument("profile_payoff: profiles must list one "
                                "effort per battle");
  }
  const auto& own = who == Player::A ? efforts_a : efforts_b;
  const auto& opp = who == Player::A ? efforts_b : efforts_a;
  std::vector<double> win_probs(n);
  for (size_t j = 0; j < n; ++j) {
    win_probs[j] = battle_win_prob(own[j], opp[j], params.r);
  }
  const std::vector<double> dist = success_count_distribution(win_probs);
  double prize = 0.0;
  double spend = 0.0;
  for (size_t k = 0; k <= n; ++k) prize += rule.shares[k] * dist[k];
  for (size_t j = 0; j < n; ++j) spend += own[j];
  const double cost = who == Player::A ? params.cost_a : params.cost_b;
  return prize - cost * spend;
}

}  // namespace multibattle
