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

#ifndef MULTIBATTLE_EQUILIBRIUM_HPP_
#define MULTIBATTLE_EQUILIBRIUM_HPP_

#include <vector>

#include "multibattle/params.hpp"
#include "multibattle/prize_rule.hpp"

namespace multibattle {

// One effort level per battle.
using EffortProfile = std::vector<double>;

// Probability that effort `own` beats effort `opp` in a single battle
// with decisiveness r.  A (0,0) battle is a coin flip.
double battle_win_prob(double own, double opp, double r);

struct BaselineProbs {
  double a;  // per-battle win probability of the low-cost player
  double b;  // = 1 - a
};

// Per-battle win probabilities when both players spend at rates
// proportional to 1/cost, which is what happens in the uniform-effort
// equilibrium: a = cost_b^r / (cost_a^r + cost_b^r).
BaselineProbs baseline_probs(const ContestParams& params);

struct EquilibriumSolution {
  double p_a = 0.0;
  double p_b = 0.0;
  double x_a = 0.0;          // per-battle effort of A
  double x_b = 0.0;
  double spread = 0.0;       // effective prize spread at p_a
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double total_effort = 0.0; // n * (x_a + x_b)
};

// The uniform-effort equilibrium candidate:
//   x_i = r * p_a * p_b * spread / cost_i
// together with both players' expected payoffs at that profile.  This is
// only a candidate; see verification.hpp for the conditions under which
// it is an actual equilibrium.
EquilibriumSolution candidate_equilibrium(const ContestParams& params,
                                          const PrizeRule& rule);

// Same construction with the per-battle probability imposed directly
// instead of derived from the costs.  Used when studying the designer's
// problem as a function of p alone.
EquilibriumSolution candidate_equilibrium_at(const ContestParams& params,
                                             const PrizeRule& rule,
                                             double p_a);

// Expected payoff of `who` when they spend `own` in every battle and the
// opponent spends `opp` in every battle: expected prize under the
// binomial win count minus n * cost * own.
double uniform_payoff(const ContestParams& params, const PrizeRule& rule,
                      double own, double opp, Player who);

// Expected payoff of `who` under arbitrary per-battle effort profiles.
// Win counts follow the heterogeneous-probability convolution, so this
// is the fully general evaluator the uniform case must agree with.
double profile_payoff(const ContestParams& params, const PrizeRule& rule,
                      const EffortProfile& efforts_a,
                      const EffortProfile& efforts_b, Player who);

}  // namespace multibattle

#endif  // MULTIBATTLE_EQUILIBRIUM_HPP_
