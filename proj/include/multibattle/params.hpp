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

#ifndef MULTIBATTLE_PARAMS_HPP_
#define MULTIBATTLE_PARAMS_HPP_

#include <string>
#include <vector>

namespace multibattle {

enum class Player { A, B };

inline const char* to_string(Player p) { return p == Player::A ? "A" : "B"; }

// A contest of n independent battles between player A (marginal cost
// cost_a) and player B (cost_b >= cost_a, so A is the stronger side).
// r is the decisiveness of each battle: a player exerting x against y
// wins with probability x^r / (x^r + y^r), and a (0,0) battle is a coin
// flip.
struct ContestParams {
  int n = 1;
  double r = 1.0;
  double cost_a = 1.0;
  double cost_b = 1.0;
};

// Every constraint violation, one message per clause; empty means valid.
std::vector<std::string> validate(const ContestParams& params);

// Throws std::invalid_argument listing all violations.
void require_valid(const ContestParams& params);

// The cost_b / cost_a ratio that gives the weaker player a per-battle
// baseline win probability of p_b, i.e. inverts p_b = cost_a^r /
// (cost_a^r + cost_b^r).  Requires p_b in (0, 1/2] and r in (0, 1].
double cost_ratio_for_weak_prob(double r, double p_b);

}  // namespace multibattle

#endif  // MULTIBATTLE_PARAMS_HPP_
