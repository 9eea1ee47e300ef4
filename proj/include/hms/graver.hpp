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

// u conformally below v: componentwise same sign and no larger magnitude.
bool conformal_leq(const IntVec& u, const IntVec& v);

struct GraverBasis {
  IntMatrix matrix;
  std::vector<IntVec> elements;  // lexicographically sorted
  Int radius;                    // enumeration box that produced them
};

// Default enumeration radius for a standalone matrix: t * a^{#rows}.
Int default_graver_radius(const IntMatrix& A);

// Enumerate all nonzero v in [-R, R]^t with A v = 0 and keep the
// conformally minimal ones. Exact whenever R dominates the true maximum
// Graver norm. Throws ResourceError when the box exceeds node_budget.
GraverBasis graver_basis_box(const IntMatrix& A, const Int& radius,
                             long node_budget = 50'000'000);

// Write a kernel vector as a sign-compatible sum of basis elements.
// Empty multiset for v = 0; nullopt when the basis is incomplete at its
// radius. Throws std::invalid_argument if A v != 0.
std::optional<std::vector<IntVec>> conformal_decompose(const IntVec& v,
                                                       const GraverBasis& basis);

}  // namespace hms
