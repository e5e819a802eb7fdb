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

#ifndef MULTIBATTLE_VERIFICATION_HPP_
#define MULTIBATTLE_VERIFICATION_HPP_

#include "multibattle/equilibrium.hpp"
#include "multibattle/parallel.hpp"
#include "multibattle/params.hpp"
#include "multibattle/prize_rule.hpp"

namespace multibattle {

// A deviation must beat the candidate payoff by more than this before
// the verdict flips to refuted.
inline constexpr double kImprovementTol = 1e-9;

// Slack on the sign test of the weak player's candidate payoff, so
// boundary instances (payoff analytically zero) are not refuted by
// rounding noise.
inline constexpr double kNecessarySlack = 1e-12;

// Relative agreement required between the scan's best response and the
// candidate effort before we call the candidate self-consistent.  Two
// grid steps of the default 2001-point scan are about 1.9%.
inline constexpr double kEffortMatchRel = 0.02;

// Decisiveness cap under which the uniform candidate is guaranteed to be
// the unique equilibrium for every feasible rule: r <= 2 / (n + 1).
bool sufficient_condition(int n, double r);

// Expected payoff of the weak player at the uniform candidate, written
// as expected prize minus the effort term:
//   sum_t increment(t) * P[Bin(n, p_b) >= t+1]  -  n r p_a p_b * spread(p_b).
// The candidate survives only if this is non-negative: the weak player
// can always guarantee shares[0] = 0 by spending nothing.  Computed by a
// different route than uniform_payoff so the two act as cross-checks.
double necessary_payoff(const ContestParams& params, const PrizeRule& rule);

// Derivative of log payoff-gross-of-cost along own effort, times effort;
// negative at the candidate for both players means the first-order
// deviation incentive points back toward the candidate:
//   r * [(1 - 2p) + p(1-p) * V'(p)/V(p)] - 1
// evaluated at p = own win probability.  Requires both efforts positive
// and a rule with non-zero spread.
double auxiliary_slope(const ContestParams& params, const PrizeRule& rule,
                       Player who, double own, double opp);

struct ScanOptions {
  int points = 2001;        // log-spaced grid points (>= 2)
  double min_mult = 1e-4;   // grid spans candidate * [min_mult, max_mult]
  double max_mult = 1e4;
  double golden_tol = 1e-10;
};

struct BestResponse {
  double effort = 0.0;
  double payoff = 0.0;
};

// Best uniform deviation for `who` against a uniform opponent: evaluate
// the payoff on {0} + a log-spaced grid around the candidate effort,
// then polish the best bracket by golden-section search.  Ties go to the
// smaller effort.  Serial and parallel execution give identical results:
// grid payoffs land in per-index slots and the argmax runs serially.
BestResponse global_best_response(const ContestParams& params,
                                  const PrizeRule& rule, Player who,
                                  double opponent_effort,
                                  const ScanOptions& options = {},
                                  Exec exec = Exec::parallel);

enum class Verdict { confirmed, refuted, undetermined };

const char* to_string(Verdict verdict);

struct VerificationReport {
  EquilibriumSolution candidate;
  bool sufficient_ok = false;       // r within the guarantee region
  double necessary_payoff_b = 0.0;
  bool necessary_ok = false;
  double slope_a = 0.0;             // NaN when the candidate degenerates
  double slope_b = 0.0;
  BestResponse best_response_a;
  BestResponse best_response_b;
  double improvement_a = 0.0;       // best-response payoff minus candidate
  double improvement_b = 0.0;
  Verdict verdict = Verdict::undetermined;
  bool unique = false;              // confirmed and inside the guarantee
};

// Full check of the uniform candidate: refuted when either player's scan
// finds an improvement above kImprovementTol; confirmed when the
// necessary sign test holds and both scans land back on the candidate;
// undetermined otherwise.
VerificationReport verify_equilibrium(const ContestParams& params,
                                      const PrizeRule& rule,
                                      const ScanOptions& options = {},
                                      Exec exec = Exec::parallel);

// For odd n under the majority rule the necessary sign test is also
// sufficient, so existence of the uniform equilibrium reduces to it.
bool majority_equilibrium_exists(const ContestParams& params);

// Payoff change for `who` from replacing efforts in two battles by their
// mean, against a uniform opponent.  Total spend is unchanged, so this
// isolates the prize effect; it is non-negative for every feasible rule
// when r <= 1, which is what makes uniform candidates natural.
double averaging_gain(const ContestParams& params, const PrizeRule& rule,
                      Player who, const EffortProfile& own,
                      double opponent_effort, int battle_i, int battle_j);

}  // namespace multibattle

#endif  // MULTIBATTLE_VERIFICATION_HPP_
