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

#include "multibattle/params.hpp"

#include <cmath>
#include <stdexcept>

namespace multibattle {

std::vector<std::string> validate(const ContestParams& params) {
  std::vector<std::string> issues;
  if (params.n < 1) {
    issues.push_back("n must be a positive battle count, got " +
                     std::to_string(params.n));
  }
  if (!(params.r > 0.0 && params.r <= 1.0)) {
    issues.push_back("r must lie in (0, 1], got " + std::to_string(params.r));
  }
  if (!(params.cost_a > 0.0)) {
    issues.push_back("cost_a must be positive, got " +
                     std::to_string(params.cost_a));
  }
  if (!(params.cost_b > 0.0)) {
    issues.push_back("cost_b must be positive, got " +
                     std::to_string(params.cost_b));
  }
  if (params.cost_a > 0.0 && params.cost_b > 0.0 &&
      params.cost_a > params.cost_b) {
    issues.push_back("cost_a must not exceed cost_b (label A is the "
                     "low-cost side); swap the players");
  }
  return issues;
}

void require_valid(const ContestParams& params) {
  const auto issues = validate(params);
  if (issues.empty()) return;
  std::string msg = "invalid contest parameters:";
  for (const auto& issue : issues) msg += "\n  - " + issue;
  throw std::invalid_argument(msg);
}

double cost_ratio_for_weak_prob(double r, double p_b) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("cost_ratio_for_weak_prob: r out of (0, 1]");
  }
  if (!(p_b > 0.0 && p_b <= 0.5)) {
    throw std::domain_error("cost_ratio_for_weak_prob: p_b out of (0, 1/2]");
  }
  return std::pow((1.0 - p_b) / p_b, 1.0 / r);
}

}  // namespace multibattle
