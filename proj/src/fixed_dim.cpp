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

#include "hms/fixed_dim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hms {

void SmallConvexIP::validate() const {
  const size_t d = l.size();
  if (u.size() != d) throw std::invalid_argument("bound length mismatch");
  if (eq.rows() > 0 && eq.cols() != static_cast<long>(d))
    throw std::invalid_argument("equality width mismatch");
  if (rhs.size() != static_cast<size_t>(eq.rows()))
    throw std::invalid_argument("rhs length mismatch");
  if (linear.size() != d) throw std::invalid_argument("linear term length mismatch");
  for (size_t i = 0; i < d; ++i)
    if (l[i] > u[i]) throw std::invalid_argument("lower bound exceeds upper bound");
  for (const auto& term : quad_terms) {
    if (term.q < 0) throw std::invalid_argument("negative quadratic weight breaks convexity");
    if (term.coef.size() != d) throw std::invalid_argument("quadratic term width mismatch");
  }
}

Rat SmallConvexIP::objective_value(std::span<const Int> x) const {
  if (x.size() != l.size()) throw std::invalid_argument("objective dimension mismatch");
  Rat acc(0);
  for (size_t i = 0; i < x.size(); ++i)
    if (linear[i] != 0) acc += linear[i] * Rat(x[i]);
  for (const auto& term : quad_terms) {
    if (term.q == 0) continue;
    Rat affine = term.offset;
    for (size_t i = 0; i < x.size(); ++i)
      if (term.coef[i] != 0) affine += term.coef[i] * Rat(x[i]);
    acc += term.q * affine * affine;
  }
  return acc;
}

namespace {

struct Dfs {
  const SmallConvexIP& p;
  const FixedDimOptions& opts;
  std::vector<long> order;  // enumeration order, ascending bound width
  long d;
  long nodes = 0;

  IntVec x;
  std::vector<bool> assigned;
  // per equality row: rhs minus assigned part, and interval of the
  // unassigned remainder
  IntVec eq_residual;
  IntVec eq_free_min, eq_free_max;
  // per quadratic term: assigned affine part and interval of the rest
  std::vector<Rat> quad_partial;
  std::vector<Rat> quad_free_min, quad_free_max;
  // linear part: assigned sum and lower bound of the rest
  Rat lin_partial{0};
  Rat lin_free_min{0};

  std::optional<FixedDimSolution> best;

  explicit Dfs(const SmallConvexIP& prog, const FixedDimOptions& options)
      : p(prog), opts(options), d(static_cast<long>(prog.l.size())) {
    order.resize(d);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(),
                     [&](long a, long b) { return p.u[a] - p.l[a] < p.u[b] - p.l[b]; });
    x = p.l;
    assigned.assign(d, false);
    eq_residual = p.rhs;
    eq_free_min.assign(p.eq.rows(), Int(0));
    eq_free_max.assign(p.eq.rows(), Int(0));
    for (long row = 0; row < p.eq.rows(); ++row)
      for (long c = 0; c < d; ++c) add_interval(p.eq.at(row, c), p.l[c], p.u[c],
                                                eq_free_min[row], eq_free_max[row]);
    quad_partial.assign(p.quad_terms.size(), Rat(0));
    quad_free_min.assign(p.quad_terms.size(), Rat(0));
    quad_free_max.assign(p.quad_terms.size(), Rat(0));
    for (size_t ti = 0; ti < p.quad_terms.size(); ++ti) {
      quad_partial[ti] = p.quad_terms[ti].offset;
      for (long c = 0; c < d; ++c)
        add_interval(p.quad_terms[ti].coef[c], p.l[c], p.u[c], quad_free_min[ti],
                     quad_free_max[ti]);
    }
    for (long c = 0; c < d; ++c) lin_free_min += coord_lin_min(c);
  }

  static void add_interval(const Int& coef, const Int& lo, const Int& hi, Int& mn, Int& mx) {
    Int a = coef * lo, b = coef * hi;
    if (a > b) std::swap(a, b);
    mn += a;
    mx += b;
  }
  static void add_interval(const Rat& coef, const Int& lo, const Int& hi, Rat& mn, Rat& mx) {
    Rat a = coef * Rat(lo), b = coef * Rat(hi);
    if (a > b) std::swap(a, b);
    mn += a;
    mx += b;
  }

  Rat coord_lin_min(long c) const {
    Rat a = p.linear[c] * Rat(p.l[c]), b = p.linear[c] * Rat(p.u[c]);
    return std::min(a, b);
  }

  // Convex lower bound of any completion of the current partial point.
  Rat lower_bound() const {
    Rat bound = lin_partial + lin_free_min;
    for (size_t ti = 0; ti < p.quad_terms.size(); ++ti) {
      const Rat& q = p.quad_terms[ti].q;
      if (q == 0) continue;
      Rat lo = quad_partial[ti] + quad_free_min[ti];
      Rat hi = quad_partial[ti] + quad_free_max[ti];
      if (lo > 0)
        bound += q * lo * lo;
      else if (hi < 0)
        bound += q * hi * hi;
      // otherwise the affine form can reach 0, contributing nothing
    }
    return bound;
  }

  bool rows_satisfiable() const {
    for (long row = 0; row < p.eq.rows(); ++row)
      if (eq_residual[row] < eq_free_min[row] || eq_residual[row] > eq_free_max[row]) return false;
    return true;
  }

  void run() {
    descend(0);
  }

  void consider_leaf() {
    Rat value = lin_partial;
    for (size_t ti = 0; ti < p.quad_terms.size(); ++ti)
      if (p.quad_terms[ti].q != 0)
        value += p.quad_terms[ti].q * quad_partial[ti] * quad_partial[ti];
    if (!best || value < best->value ||
        (value == best->value && std::lexicographical_compare(x.begin(), x.end(),
                                                              best->x.begin(), best->x.end())))
      best = FixedDimSolution{x, value};
  }

  void descend(long depth) {
    if (++nodes > opts.node_budget)
      throw ResourceError("fixed-dimension enumeration exceeded node budget");
    if (opts.enable_pruning) {
      if (!rows_satisfiable()) return;
      // keep equal-valued subtrees alive so ties resolve lexicographically
      if (best && lower_bound() > best->value) return;
    }
    if (depth == d) {
      if (!opts.enable_pruning) {
        for (long row = 0; row < p.eq.rows(); ++row)
          if (eq_residual[row] != 0) return;
      }
      consider_leaf();
      return;
    }
    const long c = order[depth];
    for (Int v = p.l[c]; v <= p.u[c]; ++v) {
      assign(c, v);
      descend(depth + 1);
      unassign(c, v);
    }
  }

  void assign(long c, const Int& v) {
    assigned[c] = true;
    x[c] = v;
    for (long row = 0; row < p.eq.rows(); ++row) {
      const Int& coef = p.eq.at(row, c);
      eq_residual[row] -= coef * v;
      sub_interval(coef, p.l[c], p.u[c], eq_free_min[row], eq_free_max[row]);
    }
    for (size_t ti = 0; ti < p.quad_terms.size(); ++ti) {
      const Rat& coef = p.quad_terms[ti].coef[c];
      if (coef == 0) continue;
      quad_partial[ti] += coef * Rat(v);
      sub_interval(coef, p.l[c], p.u[c], quad_free_min[ti], quad_free_max[ti]);
    }
    lin_partial += p.linear[c] * Rat(v);
    lin_free_min -= coord_lin_min(c);
  }

  void unassign(long c, const Int& v) {
    assigned[c] = false;
    for (long row = 0; row < p.eq.rows(); ++row) {
      const Int& coef = p.eq.at(row, c);
      eq_residual[row] += coef * v;
      add_interval(coef, p.l[c], p.u[c], eq_free_min[row], eq_free_max[row]);
    }
    for (size_t ti = 0; ti < p.quad_terms.size(); ++ti) {
      const Rat& coef = p.quad_terms[ti].coef[c];
      if (coef == 0) continue;
      quad_partial[ti] -= coef * Rat(v);
      add_interval(coef, p.l[c], p.u[c], quad_free_min[ti], quad_free_max[ti]);
    }
    lin_partial -= p.linear[c] * Rat(v);
    lin_free_min += coord_lin_min(c);
    x[c] = p.l[c];
  }

  static void sub_interval(const Int& coef, const Int& lo, const Int& hi, Int& mn, Int& mx) {
    Int a = coef * lo, b = coef * hi;
    if (a > b) std::swap(a, b);
    mn -= a;
    mx -= b;
  }
  static void sub_interval(const Rat& coef, const Int& lo, const Int& hi, Rat& mn, Rat& mx) {
    Rat a = coef * Rat(lo), b = coef * Rat(hi);
    if (a > b) std::swap(a, b);
    mn -= a;
    mx -= b;
  }
};

}  // namespace

std::optional<FixedDimSolution> solve_small_convex_ip(const SmallConvexIP& p,
                                                      const FixedDimOptions& opts) {
  p.validate();
  if (static_cast<long>(p.l.size()) > opts.dim_cap)
    throw std::invalid_argument("dimension " + std::to_string(p.l.size()) +
                                " exceeds the fixed-dimension cap " + std::to_string(opts.dim_cap));
  Dfs dfs(p, opts);
  dfs.run();
  if (!dfs.best) return std::nullopt;
  return dfs.best;
}

}  // namespace hms
