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

#include "hms/scheduling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hms {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// w/p ratio with FORBIDDEN sorted to the tail as slope 0.
Rat kind_ratio(const JobType& jt, int kind) {
  if (!jt.processing[kind]) return Rat(0);
  return make_rat(jt.weight, *jt.processing[kind]);
}

// Types in non-increasing ratio order for one kind; stable, so equal
// ratios keep input order (tie invariance is a tested property).
std::vector<long> ratio_order(const SchedulingInstance& inst, int kind) {
  std::vector<long> order(inst.type_count());
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
    return kind_ratio(inst.job_types[a], kind) > kind_ratio(inst.job_types[b], kind);
  });
  return order;
}

}  // namespace

Int SchedulingInstance::total_jobs() const {
  Int total = 0;
  for (const JobType& jt : job_types) total += jt.multiplicity;
  return total;
}

Int SchedulingInstance::max_processing() const {
  Int best = 0;
  for (const JobType& jt : job_types)
    for (const auto& p : jt.processing)
      if (p && *p > best) best = *p;
  return best;
}

void SchedulingInstance::validate() const {
  if (kinds < 1) throw std::invalid_argument("at least one machine kind required");
  if (tag == ProblemTag::kQCmax && kinds != 1)
    throw std::invalid_argument("Q||Cmax has a single machine kind");
  for (const Machine& mc : machines) {
    if (mc.kind < 0 || mc.kind >= kinds) throw std::invalid_argument("machine kind out of range");
    if (mc.speed < 1) throw std::invalid_argument("machine speed must be positive");
    if (tag != ProblemTag::kQCmax && mc.speed != 1)
      throw std::invalid_argument("speeds are meaningful for Q||Cmax only");
  }
  for (const JobType& jt : job_types) {
    if (jt.processing.size() != static_cast<size_t>(kinds))
      throw std::invalid_argument("processing vector length must equal the kind count");
    bool schedulable = false;
    for (const auto& p : jt.processing) {
      if (p) {
        if (*p < 1) throw std::invalid_argument("processing times must be positive");
        schedulable = true;
      }
    }
    if (jt.weight < 1) throw std::invalid_argument("weights must be positive");
    if (jt.multiplicity < 0) throw std::invalid_argument("negative multiplicity");
    if (!schedulable && jt.multiplicity > 0)
      throw std::invalid_argument("job type is forbidden on every kind");
  }
}

Int BinPackingInstance::total() const {
  Int acc = 0;
  for (const Int& o : items) acc += o;
  return acc;
}

// ---- Smith's rule ----------------------------------------------------------

SmithResult smith_order(const std::vector<SmithJob>& jobs) {
  for (const SmithJob& j : jobs)
    if (j.processing < 1) throw std::invalid_argument("processing times must be positive");
  std::vector<size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    // w_a/p_a > w_b/p_b, cross-multiplied
    return jobs[a].weight * jobs[b].processing > jobs[b].weight * jobs[a].processing;
  });
  Rat cost(0);
  Int clock = 0;
  for (size_t idx : order) {
    clock += jobs[idx].processing;
    cost += Rat(jobs[idx].weight * clock);
  }
  return {std::move(order), std::move(cost)};
}

Rat cost_by_triangles(const std::vector<SmithJob>& sorted_jobs) {
  for (size_t i = 0; i + 1 < sorted_jobs.size(); ++i) {
    // rho_i >= rho_{i+1}
    if (sorted_jobs[i].weight * sorted_jobs[i + 1].processing <
        sorted_jobs[i + 1].weight * sorted_jobs[i].processing)
      throw std::invalid_argument("jobs must be sorted by non-increasing weight/processing ratio");
  }
  Rat value(0);
  Int prefix = 0;
  for (size_t i = 0; i < sorted_jobs.size(); ++i) {
    const SmithJob& j = sorted_jobs[i];
    if (j.processing < 1) throw std::invalid_argument("processing times must be positive");
    prefix += j.processing;
    Rat rho = make_rat(j.weight, j.processing);
    Rat rho_next = i + 1 < sorted_jobs.size()
                       ? make_rat(sorted_jobs[i + 1].weight, sorted_jobs[i + 1].processing)
                       : Rat(0);
    value += Rat(prefix * prefix) * (rho - rho_next) / 2;
    value += Rat(j.weight * j.processing) / 2;
  }
  return value;
}

Rat cost_by_type_counts(const IntVec& counts, const SchedulingInstance& inst, long machine) {
  if (counts.size() != static_cast<size_t>(inst.type_count()))
    throw std::invalid_argument("count vector length mismatch");
  if (machine < 0 || machine >= inst.machine_count())
    throw std::invalid_argument("machine index out of range");
  const int kind = inst.machines[machine].kind;
  for (long j = 0; j < inst.type_count(); ++j) {
    if (counts[j] < 0) throw std::invalid_argument("negative job count");
    if (counts[j] > 0 && !inst.job_types[j].processing[kind])
      throw std::invalid_argument("positive count on a kind-forbidden job type");
  }
  std::vector<long> order = ratio_order(inst, kind);
  Rat value(0);
  Int prefix = 0;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const JobType& jt = inst.job_types[order[pos]];
    const Int p = jt.processing[kind] ? *jt.processing[kind] : Int(0);
    prefix += p * counts[order[pos]];
    Rat rho = kind_ratio(jt, kind);
    Rat rho_next =
        pos + 1 < order.size() ? kind_ratio(inst.job_types[order[pos + 1]], kind) : Rat(0);
    value += Rat(prefix * prefix) * (rho - rho_next) / 2;
    value += Rat(counts[order[pos]] * p * jt.weight) / 2;
  }
  return value;
}

// ---- formulations ----------------------------------------------------------

Int lcm_of_speeds(const SchedulingInstance& inst) {
  Int l = 1;
  for (const Machine& mc : inst.machines) {
    Int g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), mc.speed.get_mpz_t());
    l = g;
  }
  return l;
}

namespace {

// Q||Cmax works on canonical length types 1..p_max with aggregated
// multiplicities, which makes the capacity row coefficients exactly
// 1..Theta.
struct CanonicalQ {
  long theta = 0;
  IntVec counts;  // counts[j] = jobs of length j+1
};

CanonicalQ canonicalize_q(const SchedulingInstance& inst) {
  CanonicalQ canon;
  Int pmax = 0;
  for (const JobType& jt : inst.job_types)
    if (jt.multiplicity > 0 && *jt.processing[0] > pmax) pmax = *jt.processing[0];
  canon.theta = pmax == 0 ? 0 : to_long(pmax);
  canon.counts.assign(canon.theta, Int(0));
  for (const JobType& jt : inst.job_types)
    if (jt.multiplicity > 0) canon.counts[to_long(*jt.processing[0]) - 1] += jt.multiplicity;
  return canon;
}

}  // namespace

NFoldInstance build_nfold_qcmax(const SchedulingInstance& inst, const Int& deadline_scaled,
                                const Int& speed_lcm) {
  inst.validate();
  if (inst.tag != ProblemTag::kQCmax) throw std::invalid_argument("expected a Q||Cmax instance");
  if (inst.machines.empty()) throw std::invalid_argument("no machines");
  if (deadline_scaled < 0) throw std::invalid_argument("negative deadline");
  if (speed_lcm < 1) throw std::invalid_argument("speed lcm must be positive");

  CanonicalQ canon = canonicalize_q(inst);
  const long theta = canon.theta;
  const long m = inst.machine_count();
  const long t = theta + 1;

  NFoldInstance prog;
  prog.n = m;
  prog.A1 = IntMatrix(theta, t);
  for (long j = 0; j < theta; ++j) prog.A1.at(j, j) = 1;
  prog.A2 = IntMatrix(1, t);
  for (long j = 0; j < theta; ++j) prog.A2.at(0, j) = j + 1;
  prog.A2.at(0, theta) = 1;  // slack

  prog.b.resize(theta + m);
  for (long j = 0; j < theta; ++j) prog.b[j] = canon.counts[j];
  prog.l.assign(static_cast<size_t>(m) * t, Int(0));
  prog.u.assign(static_cast<size_t>(m) * t, Int(0));
  for (long i = 0; i < m; ++i) {
    Int rhs = floor_div(inst.machines[i].speed * deadline_scaled, speed_lcm);
    prog.b[theta + i] = rhs;
    for (long j = 0; j < theta; ++j) prog.u[i * t + j] = canon.counts[j];
    prog.u[i * t + theta] = rhs;
  }
  prog.objective = SeparableQuadObjective::zeros(static_cast<size_t>(m) * t);
  prog.validate();
  return prog;
}

NFoldInstance build_nfold_rcmax(const SchedulingInstance& inst, const Int& deadline) {
  inst.validate();
  if (inst.tag != ProblemTag::kRCmax) throw std::invalid_argument("expected an R||Cmax instance");
  if (inst.machines.empty()) throw std::invalid_argument("no machines");
  if (deadline < 0) throw std::invalid_argument("negative deadline");

  const long theta = inst.type_count();
  const int kinds = inst.kinds;
  const long m = inst.machine_count();
  const long t = theta + kinds;
  const Int big = inst.total_jobs() * inst.max_processing() + 1;

  NFoldInstance prog;
  prog.n = m;
  prog.A1 = IntMatrix(theta, t);
  for (long j = 0; j < theta; ++j) prog.A1.at(j, j) = 1;
  prog.A2 = IntMatrix(kinds, t);
  for (int k = 0; k < kinds; ++k) {
    for (long j = 0; j < theta; ++j) {
      const auto& p = inst.job_types[j].processing[k];
      prog.A2.at(k, j) = p ? *p : Int(0);  // forbidden entries become 0, bounds do the forbidding
    }
    prog.A2.at(k, theta + k) = 1;
  }

  prog.b.resize(theta + static_cast<size_t>(m) * kinds);
  for (long j = 0; j < theta; ++j) prog.b[j] = inst.job_types[j].multiplicity;
  prog.l.assign(static_cast<size_t>(m) * t, Int(0));
  prog.u.assign(static_cast<size_t>(m) * t, Int(0));
  for (long i = 0; i < m; ++i) {
    const int own = inst.machines[i].kind;
    for (int k = 0; k < kinds; ++k) {
      Int rhs = (k == own) ? deadline : big;
      prog.b[theta + i * kinds + k] = rhs;
      prog.u[i * t + theta + k] = rhs;
    }
    for (long j = 0; j < theta; ++j)
      prog.u[i * t + j] = inst.job_types[j].processing[own] ? inst.job_types[j].multiplicity
                                                            : Int(0);
  }
  prog.objective = SeparableQuadObjective::zeros(static_cast<size_t>(m) * t);
  prog.validate();
  return prog;
}

NFoldInstance build_nfold_rwc(const SchedulingInstance& inst) {
  inst.validate();
  if (inst.tag != ProblemTag::kRWeightedCompletion)
    throw std::invalid_argument("expected an R||sum wC instance");
  if (inst.machines.empty()) throw std::invalid_argument("no machines");

  const long theta = inst.type_count();
  const int kinds = inst.kinds;
  const long m = inst.machine_count();
  const long t = theta + static_cast<long>(kinds) * theta;
  const long s = static_cast<long>(kinds) * theta;
  const Int zmax = inst.max_processing() * inst.total_jobs();

  std::vector<std::vector<long>> orders(kinds);
  for (int k = 0; k < kinds; ++k) orders[k] = ratio_order(inst, k);

  NFoldInstance prog;
  prog.n = m;
  prog.A1 = IntMatrix(theta, t);
  for (long j = 0; j < theta; ++j) prog.A1.at(j, j) = 1;
  prog.A2 = IntMatrix(s, t);
  for (int k = 0; k < kinds; ++k) {
    for (long j = 0; j < theta; ++j) {
      const long row = static_cast<long>(k) * theta + j;
      for (long l = 0; l <= j; ++l) {
        long type = orders[k][l];
        const auto& p = inst.job_types[type].processing[k];
        prog.A2.at(row, type) = p ? *p : Int(0);
      }
      prog.A2.at(row, theta + row) = -1;  // z_{j,k}
    }
  }

  prog.b.assign(theta + static_cast<size_t>(m) * s, Int(0));
  for (long j = 0; j < theta; ++j) prog.b[j] = inst.job_types[j].multiplicity;

  prog.l.assign(static_cast<size_t>(m) * t, Int(0));
  prog.u.assign(static_cast<size_t>(m) * t, Int(0));
  prog.objective = SeparableQuadObjective::zeros(static_cast<size_t>(m) * t);
  for (long i = 0; i < m; ++i) {
    const int own = inst.machines[i].kind;
    for (long j = 0; j < theta; ++j) {
      const auto& p = inst.job_types[j].processing[own];
      prog.u[i * t + j] = p ? inst.job_types[j].multiplicity : Int(0);
      if (p) prog.objective.linear[i * t + j] = Rat(*p * inst.job_types[j].weight) / 2;
    }
    for (long zc = 0; zc < s; ++zc) prog.u[i * t + theta + zc] = zmax;
    // quadratic slope weights live on the machine's own kind only
    for (long j = 0; j < theta; ++j) {
      Rat rho = kind_ratio(inst.job_types[orders[own][j]], own);
      Rat rho_next = j + 1 < theta ? kind_ratio(inst.job_types[orders[own][j + 1]], own) : Rat(0);
      prog.objective.quad[i * t + theta + static_cast<long>(own) * theta + j] =
          (rho - rho_next) / 2;
    }
  }
  prog.validate();
  return prog;
}

SmallConvexIP build_fixeddim_rwc(const SchedulingInstance& inst, int dim_cap) {
  inst.validate();
  if (inst.tag != ProblemTag::kRWeightedCompletion)
    throw std::invalid_argument("expected an R||sum wC instance");
  const long theta = inst.type_count();
  const long m = inst.machine_count();
  const long d = theta * m;
  if (d > dim_cap)
    throw std::invalid_argument("Theta*m exceeds the fixed-dimension cap");

  SmallConvexIP p;
  p.eq = IntMatrix(theta, d);
  p.rhs.resize(theta);
  for (long j = 0; j < theta; ++j) {
    p.rhs[j] = inst.job_types[j].multiplicity;
    for (long i = 0; i < m; ++i) p.eq.at(j, i * theta + j) = 1;
  }
  p.l.assign(d, Int(0));
  p.u.assign(d, Int(0));
  p.linear.assign(d, Rat(0));
  for (long i = 0; i < m; ++i) {
    const int own = inst.machines[i].kind;
    for (long j = 0; j < theta; ++j) {
      const auto& pr = inst.job_types[j].processing[own];
      p.u[i * theta + j] = pr ? inst.job_types[j].multiplicity : Int(0);
      if (pr) p.linear[i * theta + j] = Rat(*pr * inst.job_types[j].weight) / 2;
    }
    // z eliminated: each prefix mass becomes a squared affine form in x
    std::vector<long> order = ratio_order(inst, own);
    for (long j = 0; j < theta; ++j) {
      Rat rho = kind_ratio(inst.job_types[order[j]], own);
      Rat rho_next = j + 1 < theta ? kind_ratio(inst.job_types[order[j + 1]], own) : Rat(0);
      Rat slope = (rho - rho_next) / 2;
      if (slope == 0) continue;
      AffineQuadTerm term;
      term.q = slope;
      term.offset = 0;
      term.coef.assign(d, Rat(0));
      for (long l = 0; l <= j; ++l) {
        long type = order[l];
        const auto& pr = inst.job_types[type].processing[own];
        if (pr) term.coef[i * theta + type] = Rat(*pr);
      }
      p.quad_terms.push_back(std::move(term));
    }
  }
  p.validate();
  return p;
}

// ---- assignment helpers ----------------------------------------------------

Rat assignment_objective(const SchedulingInstance& inst, const std::vector<IntVec>& counts) {
  inst.validate();
  const long theta = inst.type_count();
  const long m = inst.machine_count();
  if (counts.size() != static_cast<size_t>(theta))
    throw std::invalid_argument("assignment row count mismatch");
  for (long j = 0; j < theta; ++j) {
    if (counts[j].size() != static_cast<size_t>(m))
      throw std::invalid_argument("assignment column count mismatch");
    Int total = 0;
    for (long i = 0; i < m; ++i) {
      if (counts[j][i] < 0) throw std::invalid_argument("negative assignment count");
      if (counts[j][i] > 0 && !inst.job_types[j].processing[inst.machines[i].kind])
        throw std::invalid_argument("assignment uses a forbidden machine kind");
      total += counts[j][i];
    }
    if (total != inst.job_types[j].multiplicity)
      throw std::invalid_argument("assignment does not cover the job multiplicities");
  }
  if (inst.tag == ProblemTag::kRWeightedCompletion) {
    Rat total(0);
    IntVec column(theta);
    for (long i = 0; i < m; ++i) {
      for (long j = 0; j < theta; ++j) column[j] = counts[j][i];
      total += cost_by_type_counts(column, inst, i);
    }
    return total;
  }
  Rat cmax(0);
  for (long i = 0; i < m; ++i) {
    Int load = 0;
    for (long j = 0; j < theta; ++j)
      if (counts[j][i] > 0) load += *inst.job_types[j].processing[inst.machines[i].kind] *
                                    counts[j][i];
    Rat finish = make_rat(load, inst.machines[i].speed);
    if (finish > cmax) cmax = finish;
  }
  return cmax;
}

namespace {

std::vector<IntVec> zero_counts(long theta, long m) {
  return std::vector<IntVec>(theta, IntVec(m, Int(0)));
}

// Counts per canonical length -> counts per original type, filling types
// of each length in input order.
std::vector<IntVec> disaggregate_q(const SchedulingInstance& inst,
                                   const std::vector<IntVec>& length_counts) {
  const long m = inst.machine_count();
  std::vector<IntVec> out = zero_counts(inst.type_count(), m);
  IntVec remaining(inst.type_count());
  for (long j = 0; j < inst.type_count(); ++j) remaining[j] = inst.job_types[j].multiplicity;
  for (size_t len = 0; len < length_counts.size(); ++len) {
    for (long i = 0; i < m; ++i) {
      Int need = length_counts[len][i];
      for (long j = 0; j < inst.type_count() && need > 0; ++j) {
        if (inst.job_types[j].multiplicity == 0) continue;
        if (*inst.job_types[j].processing[0] != Int(static_cast<long>(len) + 1)) continue;
        Int take = std::min(need, remaining[j]);
        out[j][i] += take;
        remaining[j] -= take;
        need -= take;
      }
      if (need > 0) throw std::logic_error("length disaggregation mismatch");
    }
  }
  return out;
}

std::vector<IntVec> counts_from_nfold_x(const IntVec& x, long theta, long t, long m) {
  std::vector<IntVec> counts = zero_counts(theta, m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < theta; ++j) counts[j][i] = x[i * t + j];
  return counts;
}

struct ProbeCache {
  bool have = false;
  std::vector<IntVec> counts;  // per original type
  Rat makespan;                // exact, unscaled
};

}  // namespace

std::optional<MakespanResult> minimize_makespan(const SchedulingInstance& inst) {
  SchedulingInstance copy = inst;
  NFoldInstance probe_shape =
      inst.tag == ProblemTag::kQCmax
          ? build_nfold_qcmax(inst, Int(0), lcm_of_speeds(inst))
          : build_nfold_rcmax(inst, Int(0));
  return minimize_makespan(copy, AugmentationConfig::tuned(probe_shape));
}

std::optional<MakespanResult> minimize_makespan(const SchedulingInstance& inst,
                                                const AugmentationConfig& cfg) {
  inst.validate();
  if (inst.tag == ProblemTag::kRWeightedCompletion)
    throw std::invalid_argument("minimize_makespan expects a makespan problem");
  const long theta = inst.type_count();
  const long m = inst.machine_count();

  MakespanResult result;
  if (inst.total_jobs() == 0) {
    result.cmax = 0;
    result.assignment = {zero_counts(theta, std::max(m, 0L)), Rat(0)};
    return result;
  }
  if (m == 0) return std::nullopt;

  const bool is_q = inst.tag == ProblemTag::kQCmax;
  const Int L = is_q ? lcm_of_speeds(inst) : Int(1);

  // total processing volume and a per-job cheapest-load sum for the quick
  // capacity rejection
  Int volume = 0, min_volume = 0;
  for (const JobType& jt : inst.job_types) {
    if (jt.multiplicity == 0) continue;
    if (is_q) {
      volume += *jt.processing[0] * jt.multiplicity;
      min_volume = volume;
    } else {
      Int cheapest;
      bool found = false;
      for (const Machine& mc : inst.machines) {
        const auto& p = jt.processing[mc.kind];
        if (p && (!found || *p < cheapest)) {
          cheapest = *p;
          found = true;
        }
      }
      if (!found) return std::nullopt;  // forbidden on every present kind
      min_volume += cheapest * jt.multiplicity;
    }
  }

  ProbeCache cache;

  auto makespan_to_grid = [&](const std::vector<IntVec>& counts) {
    // smallest grid deadline admitting these loads
    Int h = 0;
    for (long i = 0; i < m; ++i) {
      Int load = 0;
      for (long j = 0; j < theta; ++j)
        if (counts[j][i] > 0)
          load += *inst.job_types[j].processing[inst.machines[i].kind] * counts[j][i];
      Int hi = is_q ? ceil_div(L * load, inst.machines[i].speed) : load;
      if (hi > h) h = hi;
    }
    return h;
  };

  auto capacity = [&](const Int& h) {
    if (!is_q) return Int(Int(m) * h);
    Int cap = 0;
    for (const Machine& mc : inst.machines) cap += floor_div(mc.speed * h, L);
    return cap;
  };

  auto probe = [&](const Int& h) -> bool {
    if (capacity(h) < min_volume) return false;  // load argument, no solve needed
    if (cache.have && makespan_to_grid(cache.counts) <= h) return true;
    NFoldInstance prog = is_q ? build_nfold_qcmax(inst, h, L) : build_nfold_rcmax(inst, h);
    ++result.probes;
    NFoldOutcome out = solve_nfold(prog, cfg);
    if (auto* sol = std::get_if<NFoldSolution>(&out)) {
      result.stats.absorb(sol->stats);
      auto counts = counts_from_nfold_x(sol->x, prog.t() - (is_q ? 1 : inst.kinds), prog.t(), m);
      cache.counts = is_q ? disaggregate_q(inst, counts) : counts;
      cache.have = true;
      return true;
    }
    result.stats.absorb(std::get<NFoldInfeasible>(out).stats);
    return false;
  };

  // greedy upper bound: spread every type over the machines that can run
  // it, cheapest finishing time first
  {
    std::vector<IntVec> greedy = zero_counts(theta, m);
    IntVec loads(m, Int(0));
    for (long j = 0; j < theta; ++j) {
      Int left = inst.job_types[j].multiplicity;
      if (left == 0) continue;
      std::vector<long> allowed;
      for (long i = 0; i < m; ++i)
        if (inst.job_types[j].processing[inst.machines[i].kind]) allowed.push_back(i);
      // bulk share first, then the remainder one by one
      Int share = floor_div(left, Int(static_cast<long>(allowed.size())));
      for (long i : allowed) {
        greedy[j][i] += share;
        loads[i] += *inst.job_types[j].processing[inst.machines[i].kind] * share;
        left -= share;
      }
      while (left > 0) {
        long pick = allowed[0];
        Rat best_finish;
        bool first = true;
        for (long i : allowed) {
          const Int& p = *inst.job_types[j].processing[inst.machines[i].kind];
          Rat finish = make_rat(loads[i] + p, inst.machines[i].speed);
          if (first || finish < best_finish) {
            best_finish = finish;
            pick = i;
            first = false;
          }
        }
        greedy[j][pick] += 1;
        loads[pick] += *inst.job_types[j].processing[inst.machines[pick].kind];
        left -= 1;
      }
    }
    cache.counts = std::move(greedy);
    cache.have = true;
  }

  Int lo = 0, hi = makespan_to_grid(cache.counts);
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (probe(mid)) {
      hi = std::min(mid, makespan_to_grid(cache.counts));
    } else {
      lo = mid + 1;
    }
  }

  if (!probe(hi)) throw std::logic_error("binary search invariant broken");
  result.cmax = is_q ? make_rat(hi, L) : Rat(hi);
  result.assignment.counts = cache.counts;
  result.assignment.objective = assignment_objective(inst, cache.counts);
  // the cached assignment may beat the probed deadline only on the grid;
  // its exact makespan equals the optimum
  return result;
}

WeightedCompletionResult solve_rwc_nfold(const SchedulingInstance& inst) {
  NFoldInstance prog = build_nfold_rwc(inst);
  return solve_rwc_nfold(inst, AugmentationConfig::tuned(prog));
}

WeightedCompletionResult solve_rwc_nfold(const SchedulingInstance& inst,
                                         const AugmentationConfig& cfg) {
  NFoldInstance prog = build_nfold_rwc(inst);
  NFoldOutcome out = solve_nfold(prog, cfg);
  auto* sol = std::get_if<NFoldSolution>(&out);
  if (!sol) throw std::logic_error("weighted-completion program cannot be infeasible");
  WeightedCompletionResult result;
  result.stats = sol->stats;
  result.assignment.counts =
      counts_from_nfold_x(sol->x, inst.type_count(), prog.t(), inst.machine_count());
  result.assignment.objective = sol->value;
  return result;
}

Assignment solve_rwc_fixeddim(const SchedulingInstance& inst, const FixedDimOptions& opts) {
  SmallConvexIP p = build_fixeddim_rwc(inst, opts.dim_cap);
  auto sol = solve_small_convex_ip(p, opts);
  if (!sol) throw std::logic_error("weighted-completion program cannot be infeasible");
  const long theta = inst.type_count();
  Assignment a;
  a.counts = zero_counts(theta, inst.machine_count());
  for (long i = 0; i < inst.machine_count(); ++i)
    for (long j = 0; j < theta; ++j) a.counts[j][i] = sol->x[i * theta + j];
  a.objective = sol->value;
  return a;
}

std::pair<SchedulingInstance, Rat> reduce_binpacking(const BinPackingInstance& bp) {
  if (bp.bins < 1) throw std::invalid_argument("at least one bin required");
  for (const Int& o : bp.items)
    if (o < 1) throw std::invalid_argument("item sizes must be positive");
  if (!bp.tight())
    throw std::invalid_argument("reduction requires a tight instance (sum of items = bins * capacity)");

  SchedulingInstance inst;
  inst.tag = ProblemTag::kRWeightedCompletion;
  inst.kinds = 1;
  inst.machines.assign(bp.bins, Machine{0, 1});
  std::map<Int, Int> grouped;
  for (const Int& o : bp.items) grouped[o] += 1;
  for (const auto& [size, count] : grouped)
    inst.job_types.push_back(JobType{{size}, size, count});

  Rat threshold(0);
  for (const Int& o : bp.items) threshold += Rat(o * o) / 2;
  threshold += Rat(Int(bp.bins) * bp.capacity * bp.capacity) / 2;
  return {std::move(inst), std::move(threshold)};
}

}  // namespace hms
