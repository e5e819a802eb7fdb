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

#ifndef MULTIBATTLE_DESIGN_HPP_
#define MULTIBATTLE_DESIGN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "multibattle/equilibrium.hpp"
#include "multibattle/parallel.hpp"
#include "multibattle/params.hpp"
#include "multibattle/prize_rule.hpp"

namespace multibattle {

// Largest enumeration a brute-force call will attempt.
inline constexpr std::int64_t kBruteForceBudget = 10000000;

// Designer's score of concentrating prize increments at win count
// boundary k:  g(k) = theta(k | n-1, p) + theta(n-1-k | n-1, p).
// Returned for k = 0 .. n-1.  Requires p in [1/2, 1).
std::vector<double> g_values(int n, double p);

// Largest maximizer of g over k <= (n-1)/2.  Larger k* means a narrower
// half-prize band in the induced rule.
int optimal_k_star(int n, double p);

struct DesignResult {
  std::vector<double> g;          // g_values at the design probability
  int k_star = 0;
  int threshold = 0;              // n - k_star
  PrizeRule rule;                 // tie_margin_rule(n, threshold)
  EquilibriumSolution equilibrium;
  bool within_sufficient_bound = false;
};

// Effort-maximizing prize rule for the contest: the tie-margin rule with
// threshold n - k*.  The equilibrium block reports the induced uniform
// candidate and total effort.
DesignResult optimal_rule(const ContestParams& params);

// Same, with the favorite's per-battle probability imposed directly.
// Requires p_a in [1/2, 1).
DesignResult optimal_rule_at(const ContestParams& params, double p_a);

struct BruteForceResult {
  PrizeRule rule;
  double spread = 0.0;
  double total_effort = 0.0;
  std::int64_t enumerated = 0;    // number of feasible rules scored
};

// Exhaustive search over every feasible rule whose shares all come from
// `value_grid`.  Budget balance pairs share k with share n-k, so the
// free choices are the upper-half shares; they are enumerated as
// non-decreasing tuples via multiset unranking, which gives the parallel
// path random access.  Ranking of candidates: larger spread first, then
// tie-margin shape, then lexicographically smaller shares — a total
// order, so serial and parallel runs agree exactly.  Throws
// std::length_error when the enumeration exceeds kBruteForceBudget.
BruteForceResult brute_force_optimal(const ContestParams& params,
                                     std::span<const double> value_grid,
                                     Exec exec = Exec::parallel);

BruteForceResult brute_force_optimal_at(const ContestParams& params,
                                        double p_a,
                                        std::span<const double> value_grid,
                                        Exec exec = Exec::parallel);

// Optimal threshold n - k* per probability.  The grid must be ascending
// inside [1/2, 1); the result is checked to be weakly increasing (throws
// std::logic_error otherwise, which would indicate a bug).
std::vector<int> sweep_threshold(int n, std::span<const double> p_grid);

// Largest r for which the equilibrium guarantee holds at every feasible
// rule: 2 / (n + 1).
double asymmetric_r_bound(int n);

// Classical bound for the cost-symmetric case with the majority rule and
// odd n: min(1, 2^n / (n * C(n-1, (n-1)/2))).
double symmetric_r_bound(int n);

}  // namespace multibattle

#endif  // MULTIBATTLE_DESIGN_HPP_
