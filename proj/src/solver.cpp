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

#include "hms/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace hms {

namespace {

constexpr long kLongCap = (1L << 50);

long clamp_mag(const Int& v) { return to_long_clamped(v, kLongCap); }

using Key = std::vector<long>;

struct PathNode {
  int prev;
  long choice;
};

struct BrickSummary {
  // top-band contribution kappa -> (best unit-step gain, arena node of
  // the lex-first best kernel move)
  std::map<Key, std::pair<Rat, int>> finals;
  std::vector<PathNode> arena;
  long t = 0;

  IntVec reconstruct(int node) const {
    IntVec v(t, Int(0));
    long c = t - 1;
    while (node >= 0) {
      v[c--] = arena[node].choice;
      node = arena[node].prev;
    }
    return v;
  }

  std::pair<Key, Key> key_range() const {
    if (finals.empty()) return {};
    size_t r = finals.begin()->first.size();
    Key mn(r, std::numeric_limits<long>::max()), mx(r, std::numeric_limits<long>::min());
    for (const auto& [k, val] : finals)
      for (size_t i = 0; i < r; ++i) {
        mn[i] = std::min(mn[i], k[i]);
        mx[i] = std::max(mx[i], k[i]);
      }
    return {mn, mx};
  }
};

struct SearchContext {
  const NFoldInstance& inst;
  long rho;                     // effective per-move radius (already clamped)
  std::vector<long> sigma_cap;  // per top-band row
  long node_budget;
  long nodes = 0;

  std::vector<std::vector<long>> a1cols;  // [col][row]
  std::vector<std::vector<long>> a2cols;

  SearchContext(const NFoldInstance& inst_, const AugmentationConfig& cfg) : inst(inst_) {
    rho = clamp_mag(cfg.brick_radius);
    if (rho < 1) throw std::invalid_argument("brick radius must be positive");
    node_budget = cfg.node_budget;
    long r = inst.r(), s = inst.s(), t = inst.t();
    a1cols.assign(t, std::vector<long>(r));
    a2cols.assign(t, std::vector<long>(s));
    for (long c = 0; c < t; ++c) {
      for (long row = 0; row < r; ++row) a1cols[c][row] = to_long(inst.A1.at(row, c));
      for (long row = 0; row < s; ++row) a2cols[c][row] = to_long(inst.A2.at(row, c));
    }
    // sigma caps: configured radius, tightened by the exact prefix
    // interval a feasible point difference can occupy.
    long cfg_cap = clamp_mag(cfg.sigma_radius);
    IntVec widths = sigma_interval_widths(inst);
    sigma_cap.resize(r);
    for (long row = 0; row < r; ++row)
      sigma_cap[row] = std::min(cfg_cap, clamp_mag(widths[row]));
  }

  void charge(long amount, AugmentStats* stats) {
    nodes += amount;
    if (stats) stats->dp_nodes += amount;
    if (nodes > node_budget)
      throw ResourceError("augmentation step search exceeded node budget (brick radius " +
                          std::to_string(rho) + ")");
  }

  // Max over brick cuts of the width of the reachable prefix interval of
  // each top-band row: any kernel direction between two feasible points
  // keeps its partial sums inside these.
  static IntVec sigma_interval_widths(const NFoldInstance& inst) {
    long r = inst.r();
    IntVec widths(r, Int(0));
    for (long row = 0; row < r; ++row) {
      Int lo = 0, hi = 0, best = 0;
      for (long i = 0; i < inst.n; ++i) {
        for (long c = 0; c < inst.t(); ++c) {
          long j = i * inst.t() + c;
          Int p = inst.A1.at(row, c) * inst.l[j], q = inst.A1.at(row, c) * inst.u[j];
          if (p > q) std::swap(p, q);
          lo += p;
          hi += q;
        }
        if (hi - lo > best) best = hi - lo;
      }
      widths[row] = best;
    }
    return widths;
  }
};

// Inner DP over the coordinates of one brick: enumerate all kernel moves
// within the radius and the brick's bounds, merged by (partial top-band
// contribution, partial local residual) so products of independent
// coordinate choices never blow up.
BrickSummary summarize_brick(SearchContext& ctx, long brick, std::span<const Int> x,
                             AugmentStats* stats) {
  const NFoldInstance& inst = ctx.inst;
  const long r = inst.r(), s = inst.s(), t = inst.t();
  const long base = brick * t;

  std::vector<long> lo(t), hi(t);
  for (long c = 0; c < t; ++c) {
    lo[c] = std::max(-ctx.rho, clamp_mag(inst.l[base + c] - x[base + c]));
    hi[c] = std::min(ctx.rho, clamp_mag(inst.u[base + c] - x[base + c]));
  }

  // suffix reachability intervals for pruning
  std::vector<std::vector<long>> s1min(t + 1, std::vector<long>(r, 0)), s1max = s1min;
  std::vector<std::vector<long>> s2min(t + 1, std::vector<long>(s, 0)), s2max = s2min;
  for (long c = t - 1; c >= 0; --c) {
    for (long row = 0; row < r; ++row) {
      long a = ctx.a1cols[c][row] * lo[c], b = ctx.a1cols[c][row] * hi[c];
      s1min[c][row] = s1min[c + 1][row] + std::min(a, b);
      s1max[c][row] = s1max[c + 1][row] + std::max(a, b);
    }
    for (long row = 0; row < s; ++row) {
      long a = ctx.a2cols[c][row] * lo[c], b = ctx.a2cols[c][row] * hi[c];
      s2min[c][row] = s2min[c + 1][row] + std::min(a, b);
      s2max[c][row] = s2max[c + 1][row] + std::max(a, b);
    }
  }

  BrickSummary out;
  out.t = t;

  using Layer = std::map<Key, std::pair<Rat, int>>;
  Layer layer;
  layer.emplace(Key(r + s, 0), std::make_pair(Rat(0), -1));

  for (long c = 0; c < t; ++c) {
    Layer next;
    const Rat& q = inst.objective.quad[base + c];
    const Rat& cc = inst.objective.linear[base + c];
    for (const auto& [state, val] : layer) {
      for (long w = lo[c]; w <= hi[c]; ++w) {
        ctx.charge(1, stats);
        Key ns = state;
        bool ok = true;
        for (long row = 0; row < r && ok; ++row) {
          long v = ns[row] + ctx.a1cols[c][row] * w;
          // kappa must stay reachable into [-2 cap, 2 cap]
          long cap = 2 * ctx.sigma_cap[row];
          if (v + s1max[c + 1][row] < -cap || v + s1min[c + 1][row] > cap) ok = false;
          ns[row] = v;
        }
        for (long row = 0; row < s && ok; ++row) {
          long v = ns[r + row] + ctx.a2cols[c][row] * w;
          if (v + s2max[c + 1][row] < 0 || v + s2min[c + 1][row] > 0) ok = false;
          ns[r + row] = v;
        }
        if (!ok) continue;
        Rat gain = val.first;
        if (w != 0) {
          // f(x) - f(x+v): per-coordinate -(q (2 x w + w^2) + c w)
          Int wi(w);
          gain -= q * Rat(2 * x[base + c] * wi + wi * wi) + cc * Rat(wi);
        }
        auto it = next.find(ns);
        if (it == next.end() || gain > it->second.first) {
          out.arena.push_back({val.second, w});
          int node = static_cast<int>(out.arena.size()) - 1;
          if (it == next.end())
            next.emplace(std::move(ns), std::make_pair(std::move(gain), node));
          else
            it->second = {std::move(gain), node};
        }
      }
    }
    layer = std::move(next);
  }

  for (const auto& [state, val] : layer) {
    // local residual must be exactly zero (guaranteed by pruning at the
    // last column, but keep the explicit check)
    bool kernel = std::all_of(state.begin() + r, state.end(), [](long v) { return v == 0; });
    if (!kernel) continue;
    Key kappa(state.begin(), state.begin() + r);
    auto it = out.finals.find(kappa);
    if (it == out.finals.end() || val.first > it->second.first) out.finals[kappa] = val;
  }
  return out;
}

}  // namespace

void AugmentStats::absorb(const AugmentStats& o) {
  iterations += o.iterations;
  dp_nodes += o.dp_nodes;
  max_level = std::max(max_level, o.max_level);
  phase1_iterations += o.phase1_iterations;
}

AugmentationConfig AugmentationConfig::norm_bound_defaults(const NFoldInstance& inst) {
  Int a = std::max(std::max(inst.A1.max_abs(), inst.A2.max_abs()), Int(1));
  Int pow;
  mpz_pow_ui(pow.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(inst.r() + inst.s()));
  AugmentationConfig cfg;
  cfg.brick_radius = Int(inst.t()) * pow;
  cfg.sigma_radius = std::max(Int(Int(inst.r()) * a * Int(inst.t()) * cfg.brick_radius), Int(1));
  return cfg;
}

AugmentationConfig AugmentationConfig::tuned(const NFoldInstance& inst) {
  AugmentationConfig cfg;
  cfg.brick_radius = 2;
  cfg.sigma_radius = 8;
  cfg.escalation_rounds = 40;  // doubling reaches the certified radii for any desk instance
  (void)inst;
  return cfg;
}

Int best_step_length(const NFoldInstance& inst, std::span<const Int> x, const IntVec& g) {
  if (g.size() != static_cast<size_t>(inst.dim()))
    throw std::invalid_argument("best_step_length dimension mismatch");
  bool nonzero = false;
  Int lambda_max;
  bool unset = true;
  for (long j = 0; j < inst.dim(); ++j) {
    if (g[j] == 0) continue;
    nonzero = true;
    Int room = g[j] > 0 ? inst.u[j] - x[j] : x[j] - inst.l[j];
    Int den = abs(g[j]);
    Int lim;
    mpz_fdiv_q(lim.get_mpz_t(), room.get_mpz_t(), den.get_mpz_t());
    if (unset || lim < lambda_max) {
      lambda_max = lim;
      unset = false;
    }
  }
  if (!nonzero) throw std::invalid_argument("zero direction");
  if (lambda_max <= 0) return 0;

  // f(x + L g) = f(x) + L*S1 + L^2*S2; the forward difference
  // D(L) = S1 + (2L-1) S2 is nondecreasing, so search its sign change.
  Rat S1(0), S2(0);
  for (long j = 0; j < inst.dim(); ++j) {
    if (g[j] == 0) continue;
    const Rat& q = inst.objective.quad[j];
    const Rat& c = inst.objective.linear[j];
    S1 += q * Rat(2 * x[j] * g[j]) + c * Rat(g[j]);
    S2 += q * Rat(g[j] * g[j]);
  }
  auto diff = [&](const Int& L) -> Rat { return S1 + Rat(2 * L - 1) * S2; };
  if (diff(1) >= 0) return 1;
  if (S2 == 0) return lambda_max;
  Int lo = 1, hi = lambda_max;  // invariant: D(lo) < 0
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (diff(mid) < 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::optional<AugmentingStep> find_augmenting_step(const NFoldInstance& inst,
                                                   std::span<const Int> x,
                                                   const AugmentationConfig& cfg,
                                                   AugmentStats* stats) {
  const long r = inst.r(), n = inst.n, t = inst.t();
  SearchContext ctx(inst, cfg);

  std::vector<BrickSummary> bricks;
  bricks.reserve(n);
  for (long i = 0; i < n; ++i) bricks.push_back(summarize_brick(ctx, i, x, stats));

  // suffix key ranges for sigma reachability pruning
  std::vector<Key> sufmin(n + 1, Key(r, 0)), sufmax(n + 1, Key(r, 0));
  for (long i = n - 1; i >= 0; --i) {
    auto [mn, mx] = bricks[i].key_range();
    if (mn.empty()) mn.assign(r, 0), mx.assign(r, 0);
    for (long row = 0; row < r; ++row) {
      sufmin[i][row] = sufmin[i + 1][row] + mn[row];
      sufmax[i][row] = sufmax[i + 1][row] + mx[row];
    }
  }

  struct SigmaNode {
    int prev;
    long brick;
    Key kappa;
  };
  std::vector<SigmaNode> arena;
  using Layer = std::map<Key, std::pair<Rat, int>>;
  Layer layer;
  layer.emplace(Key(r, 0), std::make_pair(Rat(0), -1));

  for (long i = 0; i < n; ++i) {
    Layer next;
    for (const auto& [sigma, val] : layer) {
      for (const auto& [kappa, kv] : bricks[i].finals) {
        ctx.charge(1, stats);
        Key ns(r);
        bool ok = true;
        for (long row = 0; row < r && ok; ++row) {
          ns[row] = sigma[row] + kappa[row];
          if (std::abs(ns[row]) > ctx.sigma_cap[row]) ok = false;
          // remaining bricks must be able to cancel the running sum
          else if (ns[row] + sufmax[i + 1][row] < 0 || ns[row] + sufmin[i + 1][row] > 0)
            ok = false;
        }
        if (!ok) continue;
        Rat gain = val.first + kv.first;
        auto it = next.find(ns);
        if (it == next.end() || gain > it->second.first) {
          arena.push_back({val.second, i, kappa});
          int node = static_cast<int>(arena.size()) - 1;
          if (it == next.end())
            next.emplace(std::move(ns), std::make_pair(std::move(gain), node));
          else
            it->second = {std::move(gain), node};
        }
      }
    }
    layer = std::move(next);
  }

  auto it = layer.find(Key(r, 0));
  if (it == layer.end() || it->second.first <= 0) return std::nullopt;

  IntVec g(inst.dim(), Int(0));
  int node = it->second.second;
  while (node >= 0) {
    const SigmaNode& sn = arena[node];
    int brick_node = bricks[sn.brick].finals.at(sn.kappa).second;
    IntVec v = bricks[sn.brick].reconstruct(brick_node);
    for (long c = 0; c < t; ++c) g[sn.brick * t + c] = v[c];
    node = sn.prev;
  }

  Int lambda = best_step_length(inst, x, g);
  if (lambda == 0) return std::nullopt;  // cannot happen for a unit-feasible move
  return AugmentingStep{std::move(g), std::move(lambda), it->second.first};
}

namespace {

bool step_search_complete(const NFoldInstance& inst, const AugmentationConfig& cfg) {
  Int maxwidth = 0;
  for (size_t j = 0; j < inst.l.size(); ++j) maxwidth = std::max(maxwidth, Int(inst.u[j] - inst.l[j]));
  if (cfg.brick_radius < std::max(maxwidth, Int(1))) return false;
  IntVec widths = SearchContext::sigma_interval_widths(inst);
  for (const Int& w : widths)
    if (cfg.sigma_radius < w) return false;
  return true;
}

// Greedy augmentation at escalating radii. Stops when the target value
// is reached (a known lower bound, used by phase 1), when a provably
// complete radius finds nothing, or when the final escalation level
// finds nothing.
Rat augment_to_optimum(const NFoldInstance& inst, IntVec& x, const AugmentationConfig& cfg,
                       const std::optional<Rat>& stop_at, const StepObserver& observer,
                       AugmentStats& stats) {
  Rat fx = eval_objective(inst, x);
  AugmentationConfig level_cfg = cfg;
  int level = 0;
  while (true) {
    if (stop_at && fx == *stop_at) break;
    auto step = find_augmenting_step(inst, x, level_cfg, &stats);
    if (step) {
      for (long j = 0; j < inst.dim(); ++j)
        if (step->g[j] != 0) x[j] += step->lambda * step->g[j];
      fx = eval_objective(inst, x);
      ++stats.iterations;
      if (observer) observer(x, fx);
      level = 0;
      level_cfg = cfg;
      continue;
    }
    if (step_search_complete(inst, level_cfg)) break;
    if (level >= cfg.escalation_rounds) break;
    ++level;
    stats.max_level = std::max(stats.max_level, level);
    level_cfg.brick_radius *= 2;
    level_cfg.sigma_radius *= 2;
  }
  return fx;
}

}  // namespace

Phase1Result phase1_feasible(const NFoldInstance& inst, const AugmentationConfig& cfg) {
  inst.validate();
  const long r = inst.r(), s = inst.s(), t = inst.t(), n = inst.n;
  const long t2 = t + 2 * r + 2 * s;

  NFoldInstance aux;
  aux.n = n;
  aux.A1 = IntMatrix(r, t2);
  aux.A2 = IntMatrix(s, t2);
  for (long row = 0; row < r; ++row) {
    for (long c = 0; c < t; ++c) aux.A1.at(row, c) = inst.A1.at(row, c);
    aux.A1.at(row, t + row) = 1;
    aux.A1.at(row, t + r + row) = -1;
  }
  for (long row = 0; row < s; ++row) {
    for (long c = 0; c < t; ++c) aux.A2.at(row, c) = inst.A2.at(row, c);
    aux.A2.at(row, t + 2 * r + row) = 1;
    aux.A2.at(row, t + 2 * r + s + row) = -1;
  }
  aux.b = inst.b;

  IntVec global_res(r);
  for (long row = 0; row < r; ++row) {
    Int acc = 0;
    for (long i = 0; i < n; ++i) acc += inst.A1.row_dot(row, inst.brick(inst.l, i));
    global_res[row] = inst.b[row] - acc;
  }

  aux.l.assign(static_cast<size_t>(n) * t2, Int(0));
  aux.u.assign(static_cast<size_t>(n) * t2, Int(0));
  aux.objective = SeparableQuadObjective::zeros(static_cast<size_t>(n) * t2);
  IntVec start(static_cast<size_t>(n) * t2, Int(0));

  for (long i = 0; i < n; ++i) {
    const long base = i * t2;
    for (long c = 0; c < t; ++c) {
      aux.l[base + c] = inst.l[i * t + c];
      aux.u[base + c] = inst.u[i * t + c];
      start[base + c] = inst.l[i * t + c];
    }
    if (i == 0) {
      for (long row = 0; row < r; ++row) {
        aux.u[base + t + row] = std::max(global_res[row], Int(0));
        aux.u[base + t + r + row] = std::max(Int(-global_res[row]), Int(0));
        start[base + t + row] = aux.u[base + t + row];
        start[base + t + r + row] = aux.u[base + t + r + row];
      }
    }
    for (long row = 0; row < s; ++row) {
      Int res = inst.local_rhs(i, row) - inst.A2.row_dot(row, inst.brick(inst.l, i));
      aux.l[base + t + 2 * r + row] = 0;
      aux.l[base + t + 2 * r + s + row] = 0;
      aux.u[base + t + 2 * r + row] = std::max(res, Int(0));
      aux.u[base + t + 2 * r + s + row] = std::max(Int(-res), Int(0));
      start[base + t + 2 * r + row] = aux.u[base + t + 2 * r + row];
      start[base + t + 2 * r + s + row] = aux.u[base + t + 2 * r + s + row];
    }
    for (long c = t; c < t2; ++c) aux.objective.linear[base + c] = 1;
  }
  aux.validate();

  Phase1Result result;
  result.aux_optimum = augment_to_optimum(aux, start, cfg, Rat(0), nullptr, result.stats);
  result.stats.phase1_iterations = result.stats.iterations;
  result.stats.iterations = 0;
  if (result.aux_optimum == 0) {
    IntVec x(static_cast<size_t>(n) * t);
    for (long i = 0; i < n; ++i)
      for (long c = 0; c < t; ++c) x[i * t + c] = start[i * t2 + c];
    result.x = std::move(x);
  }
  return result;
}

NFoldOutcome solve_nfold(const NFoldInstance& inst, const AugmentationConfig& cfg,
                         const StepObserver& observer) {
  inst.validate();
  Phase1Result p1 = phase1_feasible(inst, cfg);
  if (!p1.x) return NFoldInfeasible{p1.aux_optimum, p1.stats};

  IntVec x = std::move(*p1.x);
  AugmentStats stats = p1.stats;
  Rat value;
  if (inst.objective.is_identically_zero())
    value = 0;  // pure feasibility program, any feasible point is optimal
  else
    value = augment_to_optimum(inst, x, cfg, std::nullopt, observer, stats);
  return NFoldSolution{std::move(x), std::move(value), std::move(stats)};
}

}  // namespace hms
