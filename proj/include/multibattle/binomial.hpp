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

#ifndef MULTIBATTLE_BINOMIAL_HPP_
#define MULTIBATTLE_BINOMIAL_HPP_

#include <span>
#include <vector>

namespace multibattle {

// log(a + b) given la = log(a), lb = log(b).  Handles -inf operands.
double log_sum_exp(double la, double lb);

// ln C(n, k), computed through lgamma so it stays finite for large n.
// Throws std::domain_error for k < 0, k > n, or n > 10^6.
double log_choose(int n, int k);

// ln P[X = k] for X ~ Binomial(n, p).  p = 0 and p = 1 are exact point
// masses (the 0^0 = 1 convention applies).  -inf for zero-probability k.
double binomial_log_pmf(int k, int n, double p);

// P[X = k] for X ~ Binomial(n, p).
double binomial_pmf(int k, int n, double p);

// Upper tail P[X >= k] for X ~ Binomial(n, p).  Accepts k in [0, n+1];
// k = n+1 returns 0.  The sum is accumulated in log space from the top
// term down, which keeps the result monotone in k and free of the
// cancellation a 1-minus-lower-tail evaluation would suffer in the far
// tail.
double binomial_upper_tail(int k, int n, double p);

// Distribution of the number of successes across independent Bernoulli
// trials with heterogeneous probabilities (direct-space convolution).
// Returns a vector of length probs.size() + 1.
std::vector<double> success_count_distribution(std::span<const double> probs);

}  // namespace multibattle

#endif  // MULTIBATTLE_BINOMIAL_HPP_
