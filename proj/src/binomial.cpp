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

#include "multibattle/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace multibattle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxN = 1000000;

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("probability out of [0,1]: " + std::to_string(p));
  }
}

}  // namespace

double log_sum_exp(double la, double lb) {
  if (la == kNegInf) return lb;
  if (lb == kNegInf) return la;
  const double hi = std::max(la, lb);
  const double lo = std::min(la, lb);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_choose(int n, int k) {
  if (k < 0 || k > n) {
    throw std::domain_error("log_choose: need 0 <= k <= n, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  }
  if (n > kMaxN) {
    throw std::domain_error("log_choose: n too large: " + std::to_string(n));
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_log_pmf(int k, int n, double p) {
  check_p(p);
  if (k < 0 || k > n) {
    throw std::domain_error("binomial_log_pmf: need 0 <= k <= n");
  }
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == n ? 0.0 : kNegInf;
  return log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
}

double binomial_pmf(int k, int n, double p) {
  return std::exp(binomial_log_pmf(k, n, p));
}

double binomial_upper_tail(int k, int n, double p) {
  check_p(p);
  if (k < 0 || k > n + 1) {
    throw std::domain_error("binomial_upper_tail: need 0 <= k <= n+1");
  }
  if (k == 0) return 1.0;
  if (k == n + 1) return 0.0;
  if (p == 0.0) return 0.0;        // k >= 1 here
  if (p == 1.0) return 1.0;        // k <= n here
  // Sum from t = n down to t = k so each partial sum is a prefix of the
  // next one as k decreases; exp of a running log-sum is then monotone.
  double acc = kNegInf;
  for (int t = n; t >= k; --t) {
    acc = log_sum_exp(acc, binomial_log_pmf(t, n, p));
  }
  return std::min(1.0, std::exp(acc));
}

std::vector<double> success_count_distribution(std::span<const double> probs) {
  std::vector<double> dist(probs.size() + 1, 0.0);
  dist[0] = 1.0;
  int m = 0;
  for (double p : probs) {
    check_p(p);
    for (int k = m; k >= 0; --k) {
      dist[k + 1] += dist[k] * p;
      dist[k] *= 1.0 - p;
    }
    ++m;
  }
  return dist;
}

}  // namespace multibattle
