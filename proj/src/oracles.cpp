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

#include "hms/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hms {

namespace {

// Deliberately independent of the production cost paths: plain sort by
// w/p and a running clock.
Rat smith_cost_of_list(std::vector<std::pair<Int, Int>> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) {
    return a.second * b.first > b.second * a.first;
  });
  Rat cost(0);
  Int clock = 0;
  for (const auto& [p, w] : jobs) {
    clock += p;
    cost += Rat(w * clock);
  }
  return cost;
}

// Enumerate every way of splitting each type's multiplicity across the
// machines that may run it, invoking `leaf` with counts[type][machine].
struct SplitEnum {
  const SchedulingInstance& inst;
  long budget;
  long nodes = 0;
  std::vector<IntVec> counts;

  template <typename Leaf>
  void run(Leaf&& leaf) {
    counts.assign(inst.type_count(), IntVec(inst.machine_count(), Int(0)));
    descend(0, 0, inst.type_count() ? inst.job_types[0].multiplicity : Int(0), leaf);
  }

  template <typename Leaf>
  void descend(long type, long machine, Int remaining, Leaf&& leaf) {
    if (++nodes > budget) throw ResourceError("brute-force split enumeration exceeded budget");
    if (type == inst.type_count()) {
      leaf(counts);
      return;
    }
    if (machine == inst.machine_count()) {
      if (remaining != 0) return;
      Int next = type + 1 < inst.type_count() ? inst.job_types[type + 1].multiplicity : Int(0);
      descend(type + 1, 0, next, leaf);
      return;
    }
    const bool allowed =
        static_cast<bool>(inst.job_types[type].processing[inst.machines[machine].kind]);
    const Int cap = allowed ? remaining : Int(0);
    for (Int v = 0; v <= cap; ++v) {
      counts[type][machine] = v;
      descend(type, machine + 1, remaining - v, leaf);
    }
    counts[type][machine] = 0;
  }
};

}  // namespace

std::optional<BruteIpSolution> brute_solve_ip(const IntMatrix& A, const IntVec& b, const IntVec& l,
                                              const IntVec& u,
                                              const SeparableQuadObjective& objective,
                                              long budget) {
  const long d = A.cols();
  if (b.size() != static_cast<size_t>(A.rows())) throw std::invalid_argument("rhs length mismatch");
  if (l.size() != static_cast<size_t>(d) || u.size() != static_cast<size_t>(d))
    throw std::invalid_argument("bound length mismatch");
  if (objective.dim() != static_cast<size_t>(d))
    throw std::invalid_argument("objective dimension mismatch");
  for (long c = 0; c < d; ++c)
    if (l[c] > u[c]) return std::nullopt;

  std::optional<BruteIpSolution> best;
  IntVec x = l;
  long nodes = 0;
  // Lexicographic descent with strict improvement keeps the first optimum,
  // which is the lexicographically smallest one.
  auto rec = [&](auto&& self, long c) -> void {
    if (++nodes > budget) throw ResourceError("brute-force ip enumeration exceeded budget");
    if (c == d) {
      for (long row = 0; row < A.rows(); ++row)
        if (A.row_dot(row, x) != b[row]) return;
      Rat value = objective.value(x);
      if (!best || value < best->value) best = BruteIpSolution{x, value};
      return;
    }
    for (Int v = l[c]; v <= u[c]; ++v) {
      x[c] = v;
      self(self, c + 1);
    }
    x[c] = l[c];
  };
  rec(rec, 0);
  return best;
}

std::optional<Rat> brute_min_makespan(const SchedulingInstance& inst, long budget) {
  inst.validate();
  if (inst.tag == ProblemTag::kRWeightedCompletion)
    throw std::invalid_argument("brute_min_makespan expects a makespan problem");
  if (inst.total_jobs() == 0) return Rat(0);
  if (inst.machine_count() == 0) return std::nullopt;
  for (long j = 0; j < inst.type_count(); ++j) {
    if (inst.job_types[j].multiplicity == 0) continue;
    bool ok = false;
    for (const Machine& mc : inst.machines)
      if (inst.job_types[j].processing[mc.kind]) ok = true;
    if (!ok) return std::nullopt;
  }

  std::optional<Rat> best;
  SplitEnum splits{inst, budget};
  splits.run([&](const std::vector<IntVec>& counts) {
    Rat cmax(0);
    for (long i = 0; i < inst.machine_count(); ++i) {
      Int load = 0;
      for (long j = 0; j < inst.type_count(); ++j)
        if (counts[j][i] > 0)
          load += *inst.job_types[j].processing[inst.machines[i].kind] * counts[j][i];
      Rat finish = make_rat(load, inst.machines[i].speed);
      if (finish > cmax) cmax = finish;
    }
    if (!best || cmax < *best) best = cmax;
  });
  return best;
}

std::optional<Rat> brute_min_weighted_completion(const SchedulingInstance& inst, long budget) {
  inst.validate();
  if (inst.tag != ProblemTag::kRWeightedCompletion)
    throw std::invalid_argument("brute_min_weighted_completion expects a weighted-completion problem");
  if (inst.total_jobs() == 0) return Rat(0);
  if (inst.machine_count() == 0) return std::nullopt;
  for (long j = 0; j < inst.type_count(); ++j) {
    if (inst.job_types[j].multiplicity == 0) continue;
    bool ok = false;
    for (const Machine& mc : inst.machines)
      if (inst.job_types[j].processing[mc.kind]) ok = true;
    if (!ok) return std::nullopt;
  }

  std::optional<Rat> best;
  SplitEnum splits{inst, budget};
  splits.run([&](const std::vector<IntVec>& counts) {
    Rat total(0);
    for (long i = 0; i < inst.machine_count(); ++i) {
      std::vector<std::pair<Int, Int>> jobs;
      for (long j = 0; j < inst.type_count(); ++j) {
        if (counts[j][i] == 0) continue;
        const Int& p = *inst.job_types[j].processing[inst.machines[i].kind];
        for (Int c = 0; c < counts[j][i]; ++c) jobs.emplace_back(p, inst.job_types[j].weight);
      }
      total += smith_cost_of_list(std::move(jobs));
    }
    if (!best || total < *best) best = total;
  });
  return best;
}

bool brute_binpacking_feasible(const BinPackingInstance& bp) {
  if (bp.bins < 1) return bp.items.empty();
  for (const Int& o : bp.items)
    if (o < 1) throw std::invalid_argument("item sizes must be positive");

  IntVec items = bp.items;
  std::sort(items.begin(), items.end(), std::greater<Int>());
  IntVec room(bp.bins, bp.capacity);
  auto rec = [&](auto&& self, size_t idx) -> bool {
    if (idx == items.size()) return true;
    for (long b = 0; b < bp.bins; ++b) {
      // identical bins: trying one representative of each remaining
      // capacity suffices
      bool dup = false;
      for (long prev = 0; prev < b; ++prev)
        if (room[prev] == room[b]) dup = true;
      if (dup || room[b] < items[idx]) continue;
      room[b] -= items[idx];
      if (self(self, idx + 1)) return true;
      room[b] += items[idx];
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace hms
