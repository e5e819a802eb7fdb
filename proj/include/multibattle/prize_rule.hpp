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

#ifndef MULTIBATTLE_PRIZE_RULE_HPP_
#define MULTIBATTLE_PRIZE_RULE_HPP_

#include <string>
#include <vector>

namespace multibattle {

// Numerical slack allowed when checking the three feasibility clauses.
inline constexpr double kFeasibilityTol = 1e-9;

// Prize-sharing rule for an n-battle contest.  shares[k] is the fraction
// of the (unit) prize awarded to a player who wins k battles; the
// opponent gets shares[n - k].
//
// A rule is feasible when shares are non-negative, weakly increasing in
// k, and the two sides always split the whole prize:
// shares[k] + shares[n - k] = 1.
struct PrizeRule {
  std::vector<double> shares;

  int battles() const { return static_cast<int>(shares.size()) - 1; }
  double share(int k) const { return shares[static_cast<size_t>(k)]; }
  // Marginal value of turning a t-win outcome into t+1 wins.
  double increment(int t) const {
    return shares[static_cast<size_t>(t) + 1] - shares[static_cast<size_t>(t)];
  }
};

struct RuleViolation {
  int index;         // k at which the clause fails
  double magnitude;  // how far outside the clause, always > tolerance
  std::string message;
};

// All feasibility violations (empty vector == feasible).  Checks every
// clause at every index rather than stopping at the first failure.
std::vector<RuleViolation> validate(const PrizeRule& rule);

bool feasible(const PrizeRule& rule);

// Throws std::invalid_argument listing every violation.
void require_feasible(const PrizeRule& rule);

// Winner-take-most majority rule: full prize for winning more than half
// the battles, nothing for less, an even split for an exact tie (even n).
PrizeRule majority_rule(int n);

// Pay the full prize only for winning at least `threshold` battles, pay
// nothing at or below n - threshold, and split evenly in between.
// Requires n/2 < threshold <= n.  threshold = (n+1)/2 with odd n
// reproduces the majority rule.
PrizeRule tie_margin_rule(int n, int threshold);

// True when the shares match tie_margin_rule(n, t) for some t.
bool is_tie_margin_rule(const PrizeRule& rule);

// Expected marginal prize from winning one extra battle when each of the
// other n-1 battles is won independently with probability p:
//   sum_t increment(t) * P[Binomial(n-1, p) = t].
// Accumulated in log space; exact at p = 0 and p = 1.
double spread(const PrizeRule& rule, double p);

// d spread / dp for p in (0,1), via the identity
//   p(1-p) V'(p) = sum_t increment(t) * theta(t | n-1, p) * (t - (n-1)p),
// with the positive and negative halves of the sum accumulated
// separately in log space.
double spread_derivative(const PrizeRule& rule, double p);

// V'(p) / V(p), formed from log-space partial sums so it stays accurate
// when the spread itself underflows.  Throws std::domain_error when the
// spread is zero (constant rules).
double spread_log_derivative(const PrizeRule& rule, double p);

// Reads a rule from a file holding one JSON array of n+1 shares, e.g.
// [0, 0, 0.5, 1, 1].  Throws std::runtime_error on unreadable or
// unparsable input, std::invalid_argument (listing every violation) on
// an infeasible rule.
PrizeRule load_rule_file(const std::string& path);

}  // namespace multibattle

#endif  // MULTIBATTLE_PRIZE_RULE_HPP_
