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

#include "multibattle/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "multibattle/binomial.hpp"
#include "multibattle/rng.hpp"

namespace multibattle {

namespace {

struct Counters {
  std::vector<std::int64_t> hist;
  std::vector<std::int64_t> battle_wins;

  explicit Counters(int n)
      : hist(static_cast<size_t>(n) + 1, 0),
        battle_wins(static_cast<size_t>(n), 0) {}

  void add(const Counters& other) {
    for (size_t i = 0; i < hist.size(); ++i) hist[i] += other.hist[i];
    for (size_t i = 0; i < battle_wins.size(); ++i) {
      battle_wins[i] += other.battle_wins[i];
    }
  }
};

void play_trial(std::int64_t t, int n, const std::vector<double>& win_prob,
                std::uint64_t seed, Counters& c) {
  int wins = 0;
  const std::uint64_t base = static_cast<std::uint64_t>(t) *
                             static_cast<std::uint64_t>(n);
  for (int j = 0; j < n; ++j) {
    if (rng::uniform_at(seed, base + static_cast<std::uint64_t>(j)) <
        win_prob[static_cast<size_t>(j)]) {
      ++wins;
      ++c.battle_wins[static_cast<size_t>(j)];
    }
  }
  ++c.hist[static_cast<size_t>(wins)];
}

}  // namespace

SimulationSummary simulate_contest(const ContestParams& params,
                                   const PrizeRule& rule,
                                   const EffortProfile& efforts_a,
                                   const EffortProfile& efforts_b,
                                   std::int64_t trials, std::uint64_t seed,
                                   Exec exec) {
  require_valid(params);
  require_feasible(rule);
  const int n = params.n;
  if (rule.battles() != n) {
    throw std::invalid_argument("simulate_contest: rule size mismatch");
  }
  if (static_cast<int>(efforts_a.size()) != n ||
      static_cast<int>(efforts_b.size()) != n) {
    throw std::invalid_argument("simulate_contest: profile size mismatch");
  }
  if (trials < 1 || trials > kMaxTrials) {
    throw std::invalid_argument("simulate_contest: trials out of [1, " +
                                std::to_string(kMaxTrials) + "]");
  }

  std::vector<double> win_prob(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    win_prob[static_cast<size_t>(j)] =
        battle_win_prob(efforts_a[static_cast<size_t>(j)],
                        efforts_b[static_cast<size_t>(j)], params.r);
  }

  Counters total(n);
  if (exec == Exec::serial) {
    for (std::int64_t t = 0; t < trials; ++t) {
      play_trial(t, n, win_prob, seed, total);
    }
  } else {
    // Integer counters merge associatively, so per-thread accumulation
    // followed by a merge reproduces the serial result exactly.
#ifdef _OPENMP
#pragma omp parallel
    {
      Counters mine(n);
#pragma omp for schedule(static) nowait
      for (std::int64_t t = 0; t < trials; ++t) {
        play_trial(t, n, win_prob, seed, mine);
      }
#pragma omp critical
      total.add(mine);
    }
#else
    for (std::int64_t t = 0; t < trials; ++t) {
      play_trial(t, n, win_prob, seed, total);
    }
#endif
  }

  SimulationSummary out;
  out.trials = trials;
  out.seed = seed;
  out.win_count_hist = std::move(total.hist);
  out.battle_wins_a = std::move(total.battle_wins);
  out.battle_freq_a.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    out.battle_freq_a[static_cast<size_t>(j)] =
        static_cast<double>(out.battle_wins_a[static_cast<size_t>(j)]) /
        static_cast<double>(trials);
  }
  std::int64_t win_sum = 0;
  for (int k = 0; k <= n; ++k) {
    win_sum += k * out.win_count_hist[static_cast<size_t>(k)];
  }
  out.mean_wins_a = static_cast<double>(win_sum) / static_cast<double>(trials);
  double prize_a = 0.0, prize_b = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double c = static_cast<double>(out.win_count_hist[static_cast<size_t>(k)]);
    prize_a += c * rule.share(k);
    prize_b += c * rule.share(n - k);
  }
  out.prize_a = prize_a / static_cast<double>(trials);
  out.prize_b = prize_b / static_cast<double>(trials);
  double spend_a = 0.0, spend_b = 0.0;
  for (int j = 0; j < n; ++j) {
    spend_a += efforts_a[static_cast<size_t>(j)];
    spend_b += efforts_b[static_cast<size_t>(j)];
  }
  out.payoff_a = out.prize_a - params.cost_a * spend_a;
  out.payoff_b = out.prize_b - params.cost_b * spend_b;
  return out;
}

namespace {

double z_score(double observed, double expected, double variance,
               std::int64_t trials) {
  // Cancellation in sq - mean^2 can leave a tiny negative variance.
  const double se =
      std::sqrt(std::max(0.0, variance) / static_cast<double>(trials));
  const double diff = observed - expected;
  if (se == 0.0) {
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / se;
}

}  // namespace

EmpiricalCheck empirical_check(const SimulationSummary& summary,
                               const ContestParams& params,
                               const PrizeRule& rule,
                               const EquilibriumSolution& solution) {
  const int n = params.n;
  if (static_cast<int>(summary.win_count_hist.size()) != n + 1) {
    throw std::invalid_argument("empirical_check: summary size mismatch");
  }
  const double p = solution.p_a;
  const double q = solution.p_b;
  const std::int64_t trials = summary.trials;

  EmpiricalCheck chk;
  chk.z_battle.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    chk.z_battle[static_cast<size_t>(j)] =
        z_score(summary.battle_freq_a[static_cast<size_t>(j)], p, p * q, trials);
  }
  chk.z_mean_wins = z_score(summary.mean_wins_a, n * p, n * p * q, trials);

  // Prize variance per trial under the binomial win count; the effort
  // spend is deterministic at the candidate so payoff and prize share
  // the same fluctuation.
  double mean_a = 0.0, mean_b = 0.0, sq_a = 0.0, sq_b = 0.0;
  std::vector<double> expected(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double th = binomial_pmf(k, n, p);
    expected[static_cast<size_t>(k)] = th * static_cast<double>(trials);
    mean_a += th * rule.share(k);
    mean_b += th * rule.share(n - k);
    sq_a += th * rule.share(k) * rule.share(k);
    sq_b += th * rule.share(n - k) * rule.share(n - k);
  }
  chk.z_payoff_a = z_score(summary.payoff_a, solution.payoff_a,
                           sq_a - mean_a * mean_a, trials);
  chk.z_payoff_b = z_score(summary.payoff_b, solution.payoff_b,
                           sq_b - mean_b * mean_b, trials);

  // Chi-square with bins pooled left to right until each expected count
  // reaches 5; a deficient final bin folds into its neighbour.
  std::vector<double> obs_bins, exp_bins;
  double obs_acc = 0.0, exp_acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    obs_acc += static_cast<double>(summary.win_count_hist[static_cast<size_t>(k)]);
    exp_acc += expected[static_cast<size_t>(k)];
    if (exp_acc >= 5.0) {
      obs_bins.push_back(obs_acc);
      exp_bins.push_back(exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0) {
    if (!exp_bins.empty()) {
      obs_bins.back() += obs_acc;
      exp_bins.back() += exp_acc;
    } else {
      obs_bins.push_back(obs_acc);
      exp_bins.push_back(exp_acc);
    }
  }
  chk.chi_square = 0.0;
  for (size_t i = 0; i < exp_bins.size(); ++i) {
    const double d = obs_bins[i] - exp_bins[i];
    chk.chi_square += d * d / exp_bins[i];
  }
  chk.chi_square_df = static_cast<int>(exp_bins.size()) - 1;
  if (chk.chi_square_df >= 1) {
    boost::math::chi_squared dist(chk.chi_square_df);
    chk.chi_square_pvalue = boost::math::cdf(boost::math::complement(
        dist, chk.chi_square));
  } else {
    chk.chi_square_pvalue = 1.0;
  }

  chk.max_abs_z = std::abs(chk.z_mean_wins);
  for (double z : chk.z_battle) chk.max_abs_z = std::max(chk.max_abs_z, std::abs(z));
  chk.max_abs_z = std::max(chk.max_abs_z, std::abs(chk.z_payoff_a));
  chk.max_abs_z = std::max(chk.max_abs_z, std::abs(chk.z_payoff_b));
  return chk;
}

}  // namespace multibattle
