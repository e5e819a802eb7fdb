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

#include "multibattle/prize_rule.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "multibattle/binomial.hpp"
#include "json.hpp"

namespace multibattle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

}  // namespace

std::vector<RuleViolation> validate(const PrizeRule& rule) {
  std::vector<RuleViolation> out;
  const int n = rule.battles();
  if (n < 1) {
    out.push_back({0, 0.0,
                   "rule must list at least 2 shares (one battle), got " +
                       std::to_string(rule.shares.size())});
    return out;
  }
  for (int k = 0; k <= n; ++k) {
    const double v = rule.share(k);
    if (v < -kFeasibilityTol) {
      out.push_back({k, -v, "negative share at k=" + std::to_string(k) +
                                ": " + fmt(v)});
    }
  }
  for (int k = 0; k + 1 <= n; ++k) {
    const double drop = rule.share(k) - rule.share(k + 1);
    if (drop > kFeasibilityTol) {
      out.push_back({k, drop,
                     "shares must be weakly increasing; share(" +
                         std::to_string(k) + ")=" + fmt(rule.share(k)) +
                         " > share(" + std::to_string(k + 1) +
                         ")=" + fmt(rule.share(k + 1))});
    }
  }
  for (int k = 0; k <= n - k; ++k) {
    const double gap = std::abs(rule.share(k) + rule.share(n - k) - 1.0);
    if (gap > kFeasibilityTol) {
      out.push_back({k, gap,
                     "budget violation at k=" + std::to_string(k) + ": " +
                         fmt(rule.share(k)) + " + " + fmt(rule.share(n - k)) +
                         " != 1"});
    }
  }
  return out;
}

bool feasible(const PrizeRule& rule) { return validate(rule).empty(); }

void require_feasible(const PrizeRule& rule) {
  const auto violations = validate(rule);
  if (violations.empty()) return;
  std::string msg = "infeasible prize rule:";
  for (const auto& v : violations) msg += "\n  - " + v.message;
  throw std::invalid_argument(msg);
}

PrizeRule majority_rule(int n) {
  if (n < 1) throw std::domain_error("majority_rule: n must be >= 1");
  PrizeRule rule;
  rule.shares.assign(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (2 * k > n) rule.shares[static_cast<size_t>(k)] = 1.0;
    else if (2 * k == n) rule.shares[static_cast<size_t>(k)] = 0.5;
  }
  return rule;
}

PrizeRule tie_margin_rule(int n, int threshold) {
  if (n < 1) throw std::domain_error("tie_margin_rule: n must be >= 1");
  if (!(2 * threshold > n && threshold <= n)) {
    throw std::domain_error("tie_margin_rule: need n/2 < threshold <= n, got n=" +
                            std::to_string(n) + " threshold=" +
                            std::to_string(threshold));
  }
  PrizeRule rule;
  rule.shares.assign(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k >= threshold) rule.shares[static_cast<size_t>(k)] = 1.0;
    else if (k > n - threshold) rule.shares[static_cast<size_t>(k)] = 0.5;
  }
  return rule;
}

bool is_tie_margin_rule(const PrizeRule& rule) {
  const int n = rule.battles();
  if (n < 1) return false;
  for (int t = (n + 2) / 2; t <= n; ++t) {
    if (rule.shares == tie_margin_rule(n, t).shares) return true;
  }
  return false;
}

double spread(const PrizeRule& rule, double p) {
  require_feasible(rule);
  const int n = rule.battles();
  double acc = kNegInf;
  for (int t = 0; t < n; ++t) {
    const double dv = rule.increment(t);
    if (dv <= 0.0) continue;  // feasible rules only carry rounding-level dips
    acc = log_sum_exp(acc, std::log(dv) + binomial_log_pmf(t, n - 1, p));
  }
  return std::min(1.0, std::exp(acc));
}

double spread_derivative(const PrizeRule& rule, double p) {
  require_feasible(rule);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("spread_derivative: p must be interior to (0,1)");
  }
  const int n = rule.battles();
  const double mean = (n - 1) * p;
  double pos = kNegInf, neg = kNegInf;
  for (int t = 0; t < n; ++t) {
    const double dv = rule.increment(t);
    if (dv <= 0.0) continue;
    const double w = std::log(dv) + binomial_log_pmf(t, n - 1, p);
    const double c = t - mean;
    if (c > 0.0) pos = log_sum_exp(pos, w + std::log(c));
    else if (c < 0.0) neg = log_sum_exp(neg, w + std::log(-c));
  }
  return (std::exp(pos) - std::exp(neg)) / (p * (1.0 - p));
}

double spread_log_derivative(const PrizeRule& rule, double p) {
  require_feasible(rule);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("spread_log_derivative: p must be interior to (0,1)");
  }
  const int n = rule.battles();
  const double mean = (n - 1) * p;
  double log_v = kNegInf, pos = kNegInf, neg = kNegInf;
  for (int t = 0; t < n; ++t) {
    const double dv = rule.increment(t);
    if (dv <= 0.0) continue;
    const double w = std::log(dv) + binomial_log_pmf(t, n - 1, p);
    log_v = log_sum_exp(log_v, w);
    const double c = t - mean;
    if (c > 0.0) pos = log_sum_exp(pos, w + std::log(c));
    else if (c < 0.0) neg = log_sum_exp(neg, w + std::log(-c));
  }
  if (log_v == kNegInf) {
    throw std::domain_error("spread_log_derivative: rule has zero spread");
  }
  return (std::exp(pos - log_v) - std::exp(neg - log_v)) / (p * (1.0 - p));
}

PrizeRule load_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("cannot parse rule file " + path + ": " +
                             e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("rule file " + path +
                             " must hold a single JSON array of shares");
  }
  PrizeRule rule;
  for (const auto& item : doc) {
    if (!item.is_number()) {
      throw std::runtime_error("rule file " + path +
                               " contains a non-numeric share");
    }
    rule.shares.push_back(item.get<double>());
  }
  require_feasible(rule);
  return rule;
}

}  // namespace multibattle
