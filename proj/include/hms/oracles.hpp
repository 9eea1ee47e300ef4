// Copyright 2026 The hms Authors
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

#pragma once

#include <optional>
#include <utility>

#include "hms/nfold.hpp"
#include "hms/scheduling.hpp"

namespace hms {

// Brute-force reference solvers. Exponential on purpose; they certify
// the main solvers at desk scale and are never on a production path.

struct BruteIpSolution {
  IntVec x;  // lexicographically smallest optimum
  Rat value;
};

// Exhaustive box enumeration of A x = b, l <= x <= u. Throws
// ResourceError when the box exceeds the budget.
std::optional<BruteIpSolution> brute_solve_ip(const IntMatrix& A, const IntVec& b,
                                              const IntVec& l, const IntVec& u,
                                              const SeparableQuadObjective& objective,
                                              long budget = 10'000'000);

// Enumerate all type-count splits across machines (compositions, so huge
// multiplicities within the budget stay exact).
std::optional<Rat> brute_min_makespan(const SchedulingInstance& inst, long budget = 10'000'000);

// Splits again, each machine costed by Smith's rule on the expanded job list.
std::optional<Rat> brute_min_weighted_completion(const SchedulingInstance& inst,
                                                 long budget = 10'000'000);

// Can the items be packed into `bins` bins of size `capacity`?
bool brute_binpacking_feasible(const BinPackingInstance& bp);

}  // namespace hms
