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
#include <vector>

#include "hms/matrix.hpp"
#include "hms/numbers.hpp"

namespace hms {

// q * (coef . x + offset)^2 with q >= 0. Sums of these cover both
// per-coordinate quadratics and the prefix-mass squares left behind when
// the z-variables of the weighted-completion program are eliminated.
struct AffineQuadTerm {
  Rat q;
  std::vector<Rat> coef;
  Rat offset;
};

// Convex integer minimization in small fixed dimension: equalities over
// a finite box with a nonnegative combination of squared affine forms
// plus a linear part.
struct SmallConvexIP {
  IntMatrix eq;  // equality rows over d columns
  IntVec rhs;
  IntVec l, u;
  std::vector<AffineQuadTerm> quad_terms;
  std::vector<Rat> linear;

  long dimension() const { return eq.cols() > 0 ? eq.cols() : static_cast<long>(l.size()); }
  void validate() const;
  Rat objective_value(std::span<const Int> x) const;
};

struct FixedDimOptions {
  int dim_cap = 24;
  long node_budget = 10'000'000;
  bool enable_pruning = true;  // off only in pruning-soundness tests
};

struct FixedDimSolution {
  IntVec x;  // lexicographically smallest optimum
  Rat value;
};

// Depth-first enumeration over coordinates ordered by ascending bound
// width, with equality-residual interval pruning and convex incumbent
// bounding. Throws std::invalid_argument past dim_cap, ResourceError
// past node_budget. nullopt = infeasible.
std::optional<FixedDimSolution> solve_small_convex_ip(const SmallConvexIP& p,
                                                      const FixedDimOptions& opts = {});

}  // namespace hms
