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

#include "hms/nfold.hpp"

#include <stdexcept>

namespace hms {

SeparableQuadObjective SeparableQuadObjective::zeros(size_t dim) {
  SeparableQuadObjective o;
  o.quad.assign(dim, Rat(0));
  o.linear.assign(dim, Rat(0));
  return o;
}

bool SeparableQuadObjective::is_identically_zero() const {
  for (const Rat& q : quad)
    if (q != 0) return false;
  for (const Rat& c : linear)
    if (c != 0) return false;
  return true;
}

Rat SeparableQuadObjective::value(std::span<const Int> x) const {
  if (x.size() != quad.size()) throw std::invalid_argument("objective dimension mismatch");
  Rat acc(0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (quad[i] != 0) acc += quad[i] * Rat(x[i] * x[i]);
    if (linear[i] != 0) acc += linear[i] * Rat(x[i]);
  }
  return acc;
}

void SeparableQuadObjective::validate() const {
  if (quad.size() != linear.size())
    throw std::invalid_argument("objective quad/linear length mismatch");
  for (const Rat& q : quad)
    if (q < 0) throw std::invalid_argument("negative quadratic coefficient breaks convexity");
}

void NFoldInstance::validate() const {
  if (A1.cols() != A2.cols())
    throw std::invalid_argument("A1 and A2 must share a column count");
  if (n <= 0) throw std::invalid_argument("brick count must be positive");
  if (b.size() != static_cast<size_t>(r() + n * s()))
    throw std::invalid_argument("right-hand side has wrong length");
  if (l.size() != static_cast<size_t>(dim()) || u.size() != static_cast<size_t>(dim()))
    throw std::invalid_argument("bounds have wrong length");
  for (size_t i = 0; i < l.size(); ++i)
    if (l[i] > u[i]) throw std::invalid_argument("lower bound exceeds upper bound");
  if (objective.dim() != static_cast<size_t>(dim()))
    throw std::invalid_argument("objective has wrong dimension");
  objective.validate();
}

Rat eval_objective(const NFoldInstance& inst, std::span<const Int> x) {
  if (x.size() != static_cast<size_t>(inst.dim()))
    throw std::invalid_argument("eval_objective dimension mismatch");
  return inst.objective.value(x);
}

ViolationReport check_feasible(const NFoldInstance& inst, std::span<const Int> x) {
  if (x.size() != static_cast<size_t>(inst.dim()))
    throw std::invalid_argument("check_feasible dimension mismatch");
  ViolationReport report;
  // globally uniform rows
  for (long row = 0; row < inst.r(); ++row) {
    Int lhs = 0;
    for (long i = 0; i < inst.n; ++i) lhs += inst.A1.row_dot(row, inst.brick(x, i));
    if (lhs != inst.b[row]) report.rows.push_back({row, lhs - inst.b[row]});
  }
  // per-brick rows
  for (long i = 0; i < inst.n; ++i) {
    for (long row = 0; row < inst.s(); ++row) {
      Int lhs = inst.A2.row_dot(row, inst.brick(x, i));
      const Int& rhs = inst.local_rhs(i, row);
      if (lhs != rhs) report.rows.push_back({inst.r() + i * inst.s() + row, lhs - rhs});
    }
  }
  for (long j = 0; j < inst.dim(); ++j) {
    if (x[j] < inst.l[j]) report.bounds.push_back({j, true, inst.l[j] - x[j]});
    if (x[j] > inst.u[j]) report.bounds.push_back({j, false, x[j] - inst.u[j]});
  }
  return report;
}

IntMatrix assemble_full_matrix(const NFoldInstance& inst) {
  const long r = inst.r(), s = inst.s(), t = inst.t(), n = inst.n;
  IntMatrix full(r + n * s, n * t);
  for (long row = 0; row < r; ++row)
    for (long i = 0; i < n; ++i)
      for (long c = 0; c < t; ++c) full.at(row, i * t + c) = inst.A1.at(row, c);
  for (long i = 0; i < n; ++i)
    for (long row = 0; row < s; ++row)
      for (long c = 0; c < t; ++c) full.at(r + i * s + row, i * t + c) = inst.A2.at(row, c);
  return full;
}

}  // namespace hms
