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

#ifndef MULTIBATTLE_SIMULATE_HPP_
#define MULTIBATTLE_SIMULATE_HPP_

#include <cstdint>
#include <vector>

#include "multibattle/equilibrium.hpp"
#include "multibattle/parallel.hpp"
#include "multibattle/params.hpp"
#include "multibattle/prize_rule.hpp"

namespace multibattle {

inline constexpr std::int64_t kMaxTrials = 100000000;

// Monte-Carlo record of `trials` independent contest plays.  Every
// derived number is a deterministic function of the integer counters, so
// two runs with the same seed agree bit for bit regardless of thread
// count or execution mode.
struct SimulationSummary {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> win_count_hist;   // [k] = plays where A won k
  std::vector<std::int64_t> battle_wins_a;    // per-battle A wins
  std::vector<double> battle_freq_a;
  double mean_wins_a = 0.0;
  double prize_a = 0.0;                       // empirical expected shares
  double prize_b = 0.0;
  double payoff_a = 0.0;                      // prize minus actual spend
  double payoff_b = 0.0;

  bool operator==(const SimulationSummary&) const = default;
};

// Plays the contest at the given effort profiles.  The draw for
// (trial t, battle j) is rng::uniform_at(seed, t * n + j); a trial's
// battles are independent Bernoulli outcomes at the profile's win
// probabilities.
SimulationSummary simulate_contest(const ContestParams& params,
                                   const PrizeRule& rule,
                                   const EffortProfile& efforts_a,
                                   const EffortProfile& efforts_b,
                                   std::int64_t trials, std::uint64_t seed,
                                   Exec exec = Exec::parallel);

// Standardized discrepancies between a simulation run at the uniform
// candidate and the analytic solution it should reproduce.
struct EmpiricalCheck {
  std::vector<double> z_battle;   // per-battle win frequency vs p_a
  double z_mean_wins = 0.0;
  double z_payoff_a = 0.0;
  double z_payoff_b = 0.0;
  double chi_square = 0.0;        // win-count histogram vs Binomial(n, p_a)
  int chi_square_df = 0;
  double chi_square_pvalue = 1.0;
  double max_abs_z = 0.0;
};

// The summary must come from simulate_contest at the solution's own
// uniform efforts; costs are deterministic there, so payoff z-scores
// reduce to prize z-scores.  Histogram bins with expected count below 5
// are pooled before the chi-square statistic is formed.
EmpiricalCheck empirical_check(const SimulationSummary& summary,
                               const ContestParams& params,
                               const PrizeRule& rule,
                               const EquilibriumSolution& solution);

}  // namespace multibattle

#endif  // MULTIBATTLE_SIMULATE_HPP_
