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

#include "hms/graver.hpp"

#include <algorithm>
#include <stdexcept>

namespace hms {

bool conformal_leq(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("conformal_leq length mismatch");
  for (size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) * sgn(v[i]) < 0) return false;
    if (abs(u[i]) > abs(v[i])) return false;
  }
  return true;
}

Int default_graver_radius(const IntMatrix& A) {
  Int a = A.max_abs();
  Int pow;
  mpz_pow_ui(pow.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(A.rows()));
  return Int(A.cols()) * pow;
}

namespace {

struct BoxEnum {
  const IntMatrix& A;
  long radius;
  long budget;
  long nodes = 0;
  IntVec current;
  IntVec residual;                 // running A * current over the assigned prefix
  std::vector<IntVec> suffix_min;  // per column index: min/max reachable tail sum per row
  std::vector<IntVec> suffix_max;
  std::vector<IntVec> out;

  void run() {
    const long t = A.cols(), m = A.rows();
    current.assign(t, Int(0));
    residual.assign(m, Int(0));
    suffix_min.assign(t + 1, IntVec(m, Int(0)));
    suffix_max.assign(t + 1, IntVec(m, Int(0)));
    for (long c = t - 1; c >= 0; --c) {
      for (long row = 0; row < m; ++row) {
        Int lo = A.at(row, c) * Int(-radius), hi = A.at(row, c) * Int(radius);
        if (lo > hi) std::swap(lo, hi);
        suffix_min[c][row] = suffix_min[c + 1][row] + lo;
        suffix_max[c][row] = suffix_max[c + 1][row] + hi;
      }
    }
    descend(0);
  }

  void descend(long c) {
    if (++nodes > budget)
      throw ResourceError("graver box enumeration exceeded node budget at radius " +
                          std::to_string(radius));
    const long m = A.rows();
    for (long row = 0; row < m; ++row) {
      if (residual[row] + suffix_max[c][row] < 0) return;
      if (residual[row] + suffix_min[c][row] > 0) return;
    }
    if (c == A.cols()) {
      bool zero = std::all_of(current.begin(), current.end(), [](const Int& v) { return v == 0; });
      if (!zero) out.push_back(current);
      return;
    }
    for (long v = -radius; v <= radius; ++v) {
      current[c] = v;
      for (long row = 0; row < m; ++row) residual[row] += A.at(row, c) * Int(v);
      descend(c + 1);
      for (long row = 0; row < m; ++row) residual[row] -= A.at(row, c) * Int(v);
    }
    current[c] = 0;
  }
};

}  // namespace

GraverBasis graver_basis_box(const IntMatrix& A, const Int& radius, long node_budget) {
  if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("empty matrix");
  if (A.max_abs() == 0) throw std::invalid_argument("zero matrix");
  if (radius < 1) throw std::invalid_argument("radius must be at least 1");
  if (!fits_long(radius))
    throw ResourceError("graver radius too large to enumerate: " + radius.get_str());

  BoxEnum box{A, to_long(radius), node_budget};
  box.run();

  // keep the conformally minimal vectors
  std::vector<IntVec> minimal;
  for (const IntVec& v : box.out) {
    bool dominated = false;
    for (const IntVec& u : box.out) {
      if (u != v && conformal_leq(u, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(v);
  }
  std::sort(minimal.begin(), minimal.end());
  return GraverBasis{A, std::move(minimal), radius};
}

std::optional<std::vector<IntVec>> conformal_decompose(const IntVec& v, const GraverBasis& basis) {
  const IntMatrix& A = basis.matrix;
  if (v.size() != static_cast<size_t>(A.cols()))
    throw std::invalid_argument("conformal_decompose length mismatch");
  for (long row = 0; row < A.rows(); ++row)
    if (A.row_dot(row, v) != 0) throw std::invalid_argument("vector is not in the kernel");

  // Against a complete basis, greedily peeling any conformal element
  // terminates: the remainder stays in the kernel and below v.
  std::vector<IntVec> parts;
  IntVec rest = v;
  auto is_zero = [](const IntVec& w) {
    return std::all_of(w.begin(), w.end(), [](const Int& e) { return e == 0; });
  };
  while (!is_zero(rest)) {
    bool found = false;
    for (const IntVec& g : basis.elements) {
      if (conformal_leq(g, rest)) {
        parts.push_back(g);
        for (size_t i = 0; i < rest.size(); ++i) rest[i] -= g[i];
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;  // basis incomplete at this radius
  }
  return parts;
}

}  // namespace hms
