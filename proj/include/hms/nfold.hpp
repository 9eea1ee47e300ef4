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

#include <span>
#include <vector>

#include "hms/matrix.hpp"
#include "hms/numbers.hpp"

namespace hms {

// f(x) = sum_i q_i x_i^2 + c_i x_i with q_i >= 0, evaluated exactly.
struct SeparableQuadObjective {
  std::vector<Rat> quad;    // q_i, nonnegative
  std::vector<Rat> linear;  // c_i

  static SeparableQuadObjective zeros(size_t dim);

  size_t dim() const { return quad.size(); }
  bool is_identically_zero() const;
  Rat value(std::span<const Int> x) const;
  void validate() const;
};

// The n-fold program
//
//   min f(x)  s.t.  A^(n) x = b,  l <= x <= u,  x integer,
//
// with A^(n) the usual block matrix: A1 repeated across the top band,
// A2 block diagonal. Variables are brick-major: brick i occupies
// coordinates [i*t, (i+1)*t). b holds the r globally uniform right-hand
// sides first, then s entries per brick. All bounds finite.
struct NFoldInstance {
  IntMatrix A1;  // r x t
  IntMatrix A2;  // s x t
  long n = 0;
  IntVec b;  // length r + n*s
  IntVec l;  // length n*t
  IntVec u;  // length n*t
  SeparableQuadObjective objective;  // over n*t coordinates

  long r() const { return A1.rows(); }
  long s() const { return A2.rows(); }
  long t() const { return A1.cols(); }
  long dim() const { return n * t(); }

  // Throws std::invalid_argument on any shape or bound defect.
  void validate() const;

  std::span<const Int> brick(std::span<const Int> x, long i) const {
    return x.subspan(static_cast<size_t>(i) * t(), static_cast<size_t>(t()));
  }
  const Int& local_rhs(long i, long row) const { return b[r() + i * s() + row]; }
};

struct RowViolation {
  long row;      // index into the stacked (r + n*s) row order
  Int residual;  // lhs - rhs
  bool operator==(const RowViolation&) const = default;
};

struct BoundViolation {
  long index;  // flat coordinate
  bool lower;  // violated side
  Int amount;  // positive distance past the bound
  bool operator==(const BoundViolation&) const = default;
};

struct ViolationReport {
  std::vector<RowViolation> rows;
  std::vector<BoundViolation> bounds;
  bool feasible() const { return rows.empty() && bounds.empty(); }
};

Rat eval_objective(const NFoldInstance& inst, std::span<const Int> x);

// Globally uniform rows first, then brick 0's local rows, brick 1's, ...
ViolationReport check_feasible(const NFoldInstance& inst, std::span<const Int> x);

// Explicit (r + n*s) x (n*t) matrix. Oracle/test helper only; the solver
// never materializes it.
IntMatrix assemble_full_matrix(const NFoldInstance& inst);

}  // namespace hms
