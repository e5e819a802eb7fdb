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

#include "multibattle/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "multibattle/binomial.hpp"

namespace multibattle {

bool sufficient_condition(int n, double r) {
  if (n < 1) throw std::domain_error("sufficient_condition: n must be >= 1");
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("sufficient_condition: r out of (0, 1]");
  }
  return r <= 2.0 / (n + 1.0);
}

double necessary_payoff(const ContestParams& params, const PrizeRule& rule) {
  require_valid(params);
  require_feasible(rule);
  if (rule.battles() != params.n) {
    throw std::invalid_argument("necessary_payoff: rule size mismatch");
  }
  const int n = params.n;
  const BaselineProbs bp = baseline_probs(params);
  double prize = 0.0;
  for (int t = 0; t < n; ++t) {
    const double dv = rule.increment(t);
    if (dv != 0.0) prize += dv * binomial_upper_tail(t + 1, n, bp.b);
  }
  return prize - n * params.r * bp.a * bp.b * spread(rule, bp.b);
}

double auxiliary_slope(const ContestParams& params, const PrizeRule& rule,
                       Player who, double own, double opp) {
  require_valid(params);
  if (rule.battles() != params.n) {
    throw std::invalid_argument("auxiliary_slope: rule size mismatch");
  }
  if (!(own > 0.0 && opp > 0.0)) {
    throw std::domain_error("auxiliary_slope: efforts must be positive");
  }
  (void)who;  // the formula only sees the player's own win probability
  const double p = battle_win_prob(own, opp, params.r);
  const double ratio = spread_log_derivative(rule, p);
  return params.r * ((1.0 - 2.0 * p) + p * (1.0 - p) * ratio) - 1.0;
}

namespace {

double own_cost(const ContestParams& params, Player who) {
  return who == Player::A ? params.cost_a : params.cost_b;
}

// Golden-section refinement of a unimodal-looking bracket.  Ties prefer
// the left (smaller-effort) side so the result is order-deterministic.
template <typename F>
BestResponse golden_max(F&& f, double lo, double hi, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && (b - a) > tol * std::max(1.0, b); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? BestResponse{c, fc} : BestResponse{d, fd};
}

}  // namespace

BestResponse global_best_response(const ContestParams& params,
                                  const PrizeRule& rule, Player who,
                                  double opponent_effort,
                                  const ScanOptions& options, Exec exec) {
  require_valid(params);
  require_feasible(rule);
  if (rule.battles() != params.n) {
    throw std::invalid_argument("global_best_response: rule size mismatch");
  }
  if (!(opponent_effort >= 0.0)) {
    throw std::domain_error("global_best_response: opponent effort < 0");
  }
  if (options.points < 2) {
    throw std::invalid_argument("global_best_response: need >= 2 grid points");
  }
  if (!(options.min_mult > 0.0 && options.max_mult > options.min_mult)) {
    throw std::invalid_argument("global_best_response: bad grid multipliers");
  }

  const EquilibriumSolution sol = candidate_equilibrium(params, rule);
  const double cand = who == Player::A ? sol.x_a : sol.x_b;
  // Degenerate rules give a zero candidate; scan around the effort scale
  // at which total spend compares to the whole prize instead.
  const double ref = cand > 0.0 ? cand : 1.0 / (params.n * own_cost(params, who));

  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(options.points) + 2);
  pts.push_back(0.0);
  pts.push_back(ref);
  const double llo = std::log(options.min_mult);
  const double lhi = std::log(options.max_mult);
  for (int i = 0; i < options.points; ++i) {
    const double t = static_cast<double>(i) / (options.points - 1);
    pts.push_back(ref * std::exp(llo + t * (lhi - llo)));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const auto payoff_at = [&](double x) {
    return uniform_payoff(params, rule, x, opponent_effort, who);
  };

  std::vector<double> payoffs(pts.size());
  for_each_index(static_cast<std::int64_t>(pts.size()), exec,
                 [&](std::int64_t i) { payoffs[i] = payoff_at(pts[i]); });

  size_t best = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (payoffs[i] > payoffs[best]) best = i;
  }

  BestResponse result{pts[best], payoffs[best]};
  const size_t lo = best > 0 ? best - 1 : best;
  const size_t hi = best + 1 < pts.size() ? best + 1 : best;
  if (lo < hi) {
    const BestResponse refined =
        golden_max(payoff_at, pts[lo], pts[hi], options.golden_tol);
    if (refined.payoff > result.payoff) result = refined;
  }
  return result;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::confirmed: return "confirmed";
    case Verdict::refuted: return "refuted";
    default: return "undetermined";
  }
}

VerificationReport verify_equilibrium(const ContestParams& params,
                                      const PrizeRule& rule,
                                      const ScanOptions& options, Exec exec) {
  VerificationReport rep;
  rep.candidate = candidate_equilibrium(params, rule);
  rep.sufficient_ok = sufficient_condition(params.n, params.r);
  rep.necessary_payoff_b = necessary_payoff(params, rule);
  rep.necessary_ok = rep.necessary_payoff_b >= -kNecessarySlack;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (rep.candidate.x_a > 0.0 && rep.candidate.x_b > 0.0 &&
      rep.candidate.spread > 0.0) {
    rep.slope_a = auxiliary_slope(params, rule, Player::A, rep.candidate.x_a,
                                  rep.candidate.x_b);
    rep.slope_b = auxiliary_slope(params, rule, Player::B, rep.candidate.x_b,
                                  rep.candidate.x_a);
  } else {
    rep.slope_a = nan;
    rep.slope_b = nan;
  }

  rep.best_response_a = global_best_response(params, rule, Player::A,
                                             rep.candidate.x_b, options, exec);
  rep.best_response_b = global_best_response(params, rule, Player::B,
                                             rep.candidate.x_a, options, exec);
  rep.improvement_a = rep.best_response_a.payoff - rep.candidate.payoff_a;
  rep.improvement_b = rep.best_response_b.payoff - rep.candidate.payoff_b;

  const auto matches = [](double br_effort, double cand_effort) {
    if (cand_effort == 0.0) return br_effort == 0.0;
    return std::abs(br_effort - cand_effort) <= kEffortMatchRel * cand_effort;
  };

  if (std::max(rep.improvement_a, rep.improvement_b) > kImprovementTol) {
    rep.verdict = Verdict::refuted;
  } else if (rep.necessary_ok &&
             matches(rep.best_response_a.effort, rep.candidate.x_a) &&
             matches(rep.best_response_b.effort, rep.candidate.x_b)) {
    rep.verdict = Verdict::confirmed;
  } else {
    rep.verdict = Verdict::undetermined;
  }
  rep.unique = rep.verdict == Verdict::confirmed && rep.sufficient_ok;
  return rep;
}

bool majority_equilibrium_exists(const ContestParams& params) {
  require_valid(params);
  if (params.n % 2 == 0) {
    throw std::domain_error(
        "majority_equilibrium_exists: defined for odd n only");
  }
  return necessary_payoff(params, majority_rule(params.n)) >= -kNecessarySlack;
}

double averaging_gain(const ContestParams& params, const PrizeRule& rule,
                      Player who, const EffortProfile& own,
                      double opponent_effort, int battle_i, int battle_j) {
  require_valid(params);
  const int n = params.n;
  if (static_cast<int>(own.size()) != n) {
    throw std::invalid_argument("averaging_gain: profile size mismatch");
  }
  if (battle_i < 0 || battle_i >= n || battle_j < 0 || battle_j >= n ||
      battle_i == battle_j) {
    throw std::invalid_argument("averaging_gain: bad battle indices");
  }
  if (!(opponent_effort >= 0.0)) {
    throw std::domain_error("averaging_gain: opponent effort < 0");
  }
  EffortProfile averaged = own;
  const double mean = 0.5 * (own[static_cast<size_t>(battle_i)] +
                             own[static_cast<size_t>(battle_j)]);
  averaged[static_cast<size_t>(battle_i)] = mean;
  averaged[static_cast<size_t>(battle_j)] = mean;
  const EffortProfile opp(static_cast<size_t>(n), opponent_effort);
  const auto payoff = [&](const EffortProfile& mine) {
    return who == Player::A ? profile_payoff(params, rule, mine, opp, who)
                            : profile_payoff(params, rule, opp, mine, who);
  };
  return payoff(averaged) - payoff(own);
}

}  // namespace multibattle
