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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multibattle/binomial.hpp"

namespace multibattle {

namespace {

void check_design_prob(double p) {
  if (!(p >= 0.5 && p < 1.0)) {
    throw std::domain_error("design probability must lie in [1/2, 1)");
  }
}

}  // namespace

std::vector<double> g_values(int n, double p) {
  if (n < 1) throw std::domain_error("g_values: n must be >= 1");
  check_design_prob(p);
  std::vector<double> g(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    g[static_cast<size_t>(k)] =
        binomial_pmf(k, n - 1, p) + binomial_pmf(n - 1 - k, n - 1, p);
  }
  return g;
}

int optimal_k_star(int n, double p) {
  const std::vector<double> g = g_values(n, p);
  const int k_max = (n - 1) / 2;
  int best = 0;
  for (int k = 1; k <= k_max; ++k) {
    if (g[static_cast<size_t>(k)] >= g[static_cast<size_t>(best)]) best = k;
  }
  return best;
}

DesignResult optimal_rule_at(const ContestParams& params, double p_a) {
  require_valid(params);
  check_design_prob(p_a);
  DesignResult res;
  res.g = g_values(params.n, p_a);
  res.k_star = optimal_k_star(params.n, p_a);
  res.threshold = params.n - res.k_star;
  res.rule = tie_margin_rule(params.n, res.threshold);
  res.equilibrium = candidate_equilibrium_at(params, res.rule, p_a);
  res.within_sufficient_bound = params.r <= asymmetric_r_bound(params.n);
  return res;
}

DesignResult optimal_rule(const ContestParams& params) {
  return optimal_rule_at(params, baseline_probs(params).a);
}

namespace {

// C(n, k) clipped at cap + 1; the partial products are monotone so the
// clip can never report "fits" for a count that does not.
std::int64_t choose_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(r);
}

// Non-decreasing tuples of length `slots` over `values` symbols.
std::int64_t multiset_count(int values, int slots, std::int64_t cap) {
  if (slots == 0) return 1;
  if (values <= 0) return 0;
  return choose_capped(values + slots - 1, slots, cap);
}

struct BruteContext {
  int n = 0;
  int first_upper = 0;           // smallest k whose share is a free choice
  int slots = 0;                 // number of free upper-half shares
  std::vector<double> values;    // admissible share levels, ascending
  std::vector<double> theta;     // theta(t | n-1, p) for t = 0..n-1
  // counts[v][rem]: tuples of length rem using symbols >= v.
  std::vector<std::vector<std::int64_t>> counts;
};

void decode(const BruteContext& ctx, std::int64_t rank, std::vector<int>& idx) {
  const int v_count = static_cast<int>(ctx.values.size());
  int lo = 0;
  for (int pos = 0; pos < ctx.slots; ++pos) {
    int v = lo;
    for (; v < v_count; ++v) {
      // Tuples whose entry at `pos` is exactly v: the rest stay >= v.
      const std::int64_t cnt =
          ctx.counts[static_cast<size_t>(v)][static_cast<size_t>(
              ctx.slots - pos - 1)];
      if (rank < cnt) break;
      rank -= cnt;
    }
    if (v == v_count) throw std::logic_error("brute force: bad rank decode");
    idx[static_cast<size_t>(pos)] = v;
    lo = v;
  }
}

// Advance to the next non-decreasing tuple; caller guarantees one exists.
void advance(const BruteContext& ctx, std::vector<int>& idx) {
  const int top = static_cast<int>(ctx.values.size()) - 1;
  int pos = ctx.slots - 1;
  while (idx[static_cast<size_t>(pos)] == top) --pos;
  const int v = ++idx[static_cast<size_t>(pos)];
  for (int j = pos + 1; j < ctx.slots; ++j) idx[static_cast<size_t>(j)] = v;
}

void build_shares(const BruteContext& ctx, const std::vector<int>& idx,
                  std::vector<double>& shares) {
  const int n = ctx.n;
  for (int j = 0; j < ctx.slots; ++j) {
    shares[static_cast<size_t>(ctx.first_upper + j)] =
        ctx.values[static_cast<size_t>(idx[static_cast<size_t>(j)])];
  }
  if (n % 2 == 0) shares[static_cast<size_t>(n) / 2] = 0.5;
  for (int k = 0; k < ctx.first_upper; ++k) {
    shares[static_cast<size_t>(k)] = 1.0 - shares[static_cast<size_t>(n - k)];
  }
}

double score(const BruteContext& ctx, const std::vector<double>& shares) {
  double v = 0.0;
  for (int t = 0; t < ctx.n; ++t) {
    const double dv = shares[static_cast<size_t>(t) + 1] -
                      shares[static_cast<size_t>(t)];
    if (dv != 0.0) v += dv * ctx.theta[static_cast<size_t>(t)];
  }
  return v;
}

bool tie_margin_shaped(const std::vector<double>& shares) {
  if (shares.back() != 1.0) return false;
  for (double v : shares) {
    if (v != 0.0 && v != 0.5 && v != 1.0) return false;
  }
  return true;
}

// Total order: larger spread, then tie-margin shape, then lexicographic.
bool better(double score_l, const std::vector<double>& shares_l,
            double score_r, const std::vector<double>& shares_r) {
  if (score_l != score_r) return score_l > score_r;
  const bool tm_l = tie_margin_shaped(shares_l);
  const bool tm_r = tie_margin_shaped(shares_r);
  if (tm_l != tm_r) return tm_l;
  return shares_l < shares_r;
}

struct Incumbent {
  bool set = false;
  double score = 0.0;
  std::vector<double> shares;

  void offer(double s, const std::vector<double>& candidate) {
    if (!set || better(s, candidate, score, shares)) {
      set = true;
      score = s;
      shares = candidate;
    }
  }
};

// Scan ranks [lo, hi) with one decode and odometer stepping.
void scan_range(const BruteContext& ctx, std::int64_t lo, std::int64_t hi,
                Incumbent& best) {
  if (lo >= hi) return;
  std::vector<int> idx(static_cast<size_t>(ctx.slots));
  std::vector<double> shares(static_cast<size_t>(ctx.n) + 1);
  decode(ctx, lo, idx);
  for (std::int64_t rank = lo; rank < hi; ++rank) {
    if (rank != lo) advance(ctx, idx);
    build_shares(ctx, idx, shares);
    best.offer(score(ctx, shares), shares);
  }
}

bool grid_contains(const std::vector<double>& sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x - 1e-12);
  return it != sorted.end() && std::abs(*it - x) <= 1e-12;
}

}  // namespace

BruteForceResult brute_force_optimal_at(const ContestParams& params,
                                        double p_a,
                                        std::span<const double> value_grid,
                                        Exec exec) {
  require_valid(params);
  check_design_prob(p_a);

  std::vector<double> grid(value_grid.begin(), value_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
             grid.end());
  for (double v : grid) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("brute force: grid values must lie in [0,1]");
    }
  }
  for (double needed : {0.0, 0.5, 1.0}) {
    if (!grid_contains(grid, needed)) {
      throw std::invalid_argument(
          "brute force: grid must contain 0, 0.5 and 1");
    }
  }

  BruteContext ctx;
  ctx.n = params.n;
  ctx.first_upper = params.n / 2 + 1;
  ctx.slots = params.n - ctx.first_upper + 1;
  // Budget balance mirrors share k to share n-k, so a level is usable
  // only if its complement is on the grid too.
  for (double v : grid) {
    if (v >= 0.5 - 1e-12 && grid_contains(grid, 1.0 - v)) {
      ctx.values.push_back(v);
    }
  }
  const int v_count = static_cast<int>(ctx.values.size());

  ctx.counts.assign(static_cast<size_t>(v_count) + 1,
                    std::vector<std::int64_t>(static_cast<size_t>(ctx.slots) + 1));
  for (int v = 0; v <= v_count; ++v) {
    for (int rem = 0; rem <= ctx.slots; ++rem) {
      ctx.counts[static_cast<size_t>(v)][static_cast<size_t>(rem)] =
          multiset_count(v_count - v, rem, kBruteForceBudget);
    }
  }
  const std::int64_t total = ctx.counts[0][static_cast<size_t>(ctx.slots)];
  if (total > kBruteForceBudget) {
    throw std::length_error("brute force: enumeration of " +
                            std::to_string(total) +
                            "+ rules exceeds the budget of " +
                            std::to_string(kBruteForceBudget));
  }

  ctx.theta.resize(static_cast<size_t>(ctx.n));
  for (int t = 0; t < ctx.n; ++t) {
    ctx.theta[static_cast<size_t>(t)] = binomial_pmf(t, ctx.n - 1, p_a);
  }

  Incumbent best;
  if (exec == Exec::serial) {
    scan_range(ctx, 0, total, best);
  } else {
#ifdef _OPENMP
    const int chunks =
        static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(total, 64)));
    const std::int64_t step = (total + chunks - 1) / chunks;
#pragma omp parallel
    {
      Incumbent mine;
#pragma omp for schedule(static)
      for (int c = 0; c < chunks; ++c) {
        const std::int64_t lo = static_cast<std::int64_t>(c) * step;
        const std::int64_t hi = std::min(total, lo + step);
        scan_range(ctx, lo, hi, mine);
      }
#pragma omp critical
      {
        if (mine.set) best.offer(mine.score, mine.shares);
      }
    }
#else
    scan_range(ctx, 0, total, best);
#endif
  }

  BruteForceResult result;
  result.rule = PrizeRule{best.shares};
  result.spread = best.score;
  const double q = 1.0 - p_a;
  const double x_a = params.r * p_a * q * result.spread / params.cost_a;
  const double x_b = params.r * p_a * q * result.spread / params.cost_b;
  result.total_effort = params.n * (x_a + x_b);
  result.enumerated = total;
  return result;
}

BruteForceResult brute_force_optimal(const ContestParams& params,
                                     std::span<const double> value_grid,
                                     Exec exec) {
  return brute_force_optimal_at(params, baseline_probs(params).a, value_grid,
                                exec);
}

std::vector<int> sweep_threshold(int n, std::span<const double> p_grid) {
  if (p_grid.empty()) return {};
  std::vector<int> thresholds;
  thresholds.reserve(p_grid.size());
  double prev_p = -1.0;
  int prev_t = 0;
  for (double p : p_grid) {
    check_design_prob(p);
    if (p <= prev_p) {
      throw std::invalid_argument("sweep_threshold: grid must be strictly "
                                  "ascending");
    }
    const int t = n - optimal_k_star(n, p);
    if (!thresholds.empty() && t < prev_t) {
      throw std::logic_error("sweep_threshold: threshold decreased at p=" +
                             std::to_string(p));
    }
    thresholds.push_back(t);
    prev_p = p;
    prev_t = t;
  }
  return thresholds;
}

double asymmetric_r_bound(int n) {
  if (n < 1) throw std::domain_error("asymmetric_r_bound: n must be >= 1");
  return 2.0 / (n + 1.0);
}

double symmetric_r_bound(int n) {
  if (n < 1 || n % 2 == 0) {
    throw std::domain_error("symmetric_r_bound: defined for odd n only");
  }
  const double log_bound =
      n * std::log(2.0) - std::log(static_cast<double>(n)) -
      log_choose(n - 1, (n - 1) / 2);
  return std::min(1.0, std::exp(log_bound));
}

}  // namespace multibattle
