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
#include <vector>

#include "hms/fixed_dim.hpp"
#include "hms/nfold.hpp"
#include "hms/numbers.hpp"
#include "hms/solver.hpp"

namespace hms {

enum class ProblemTag { kQCmax, kRCmax, kRWeightedCompletion };

struct Machine {
  int kind = 0;  // in [0, kinds)
  Int speed = 1; // meaningful for Q||Cmax only, fixed 1 otherwise
};

struct JobType {
  // Processing time per machine kind; nullopt = job cannot run there.
  std::vector<std::optional<Int>> processing;
  Int weight = 1;        // meaningful for the weighted-completion objective
  Int multiplicity = 0;  // huge: arbitrary precision, read from binary/decimal input
};

struct SchedulingInstance {
  ProblemTag tag = ProblemTag::kQCmax;
  int kinds = 1;
  std::vector<Machine> machines;
  std::vector<JobType> job_types;

  long machine_count() const { return static_cast<long>(machines.size()); }
  long type_count() const { return static_cast<long>(job_types.size()); }
  Int total_jobs() const;
  Int max_processing() const;  // over finite entries
  void validate() const;       // throws std::invalid_argument
};

// counts[type][machine]; objective is C*_max for makespan problems and
// sum w_j C_j for weighted completion.
struct Assignment {
  std::vector<IntVec> counts;
  Rat objective;
};

struct BinPackingInstance {
  long bins = 0;
  Int capacity;
  IntVec items;  // unary-sized in the hardness setting, but any positive ints here

  Int total() const;
  bool tight() const { return total() == Int(bins) * capacity; }
};

// ---- Smith's rule machinery ------------------------------------------------

struct SmithJob {
  Int processing;  // > 0
  Int weight;      // >= 0
};

struct SmithResult {
  std::vector<size_t> order;  // permutation of input indices
  Rat cost;
};

// Stable sort by non-increasing w/p; exact sum of w_j C_j under it.
SmithResult smith_order(const std::vector<SmithJob>& jobs);

// Triangle-area form of the same value; input must already be sorted by
// non-increasing w/p (throws otherwise). The slope past the last job is 0.
Rat cost_by_triangles(const std::vector<SmithJob>& sorted_jobs);

// Optimal single-machine cost of a per-type count vector on machine i,
// via prefix processing masses in ratio order.
Rat cost_by_type_counts(const IntVec& counts, const SchedulingInstance& inst, long machine);

// ---- n-fold / fixed-dimension formulations ---------------------------------

// Q||Cmax at scaled deadline h (true deadline h/L, L = lcm of speeds):
// bricks are machines, one slack per brick, per-brick capacity
// floor(s_i * h / L). Feasibility program, zero objective.
NFoldInstance build_nfold_qcmax(const SchedulingInstance& inst, const Int& deadline_scaled,
                                const Int& speed_lcm);

// R||Cmax at integer deadline T: K capacity rows per brick with the
// machine's own kind bounded by T and the others by B = n*p_max + 1.
NFoldInstance build_nfold_rcmax(const SchedulingInstance& inst, const Int& deadline);

// R||sum w_j C_j: per brick, x counts plus prefix-mass variables
// z_{j,k} for every kind, quadratic slope weights on the machine's own
// kind only.
NFoldInstance build_nfold_rwc(const SchedulingInstance& inst);

// Same program restricted to the x variables (z eliminated as affine
// prefix sums), for the fixed-dimension minimizer.
SmallConvexIP build_fixeddim_rwc(const SchedulingInstance& inst, int dim_cap = 24);

Int lcm_of_speeds(const SchedulingInstance& inst);

// ---- drivers ---------------------------------------------------------------

struct MakespanResult {
  Rat cmax;
  Assignment assignment;
  long probes = 0;  // binary-search feasibility probes that ran the solver
  AugmentStats stats;
};

// Binary search over the (scaled) deadline grid, each probe decided by
// solve_nfold. nullopt = no feasible schedule exists.
std::optional<MakespanResult> minimize_makespan(const SchedulingInstance& inst);
std::optional<MakespanResult> minimize_makespan(const SchedulingInstance& inst,
                                                const AugmentationConfig& cfg);

struct WeightedCompletionResult {
  Assignment assignment;
  AugmentStats stats;
};

// R||sum w_j C_j via the n-fold route (build + solve + extract counts).
WeightedCompletionResult solve_rwc_nfold(const SchedulingInstance& inst);
WeightedCompletionResult solve_rwc_nfold(const SchedulingInstance& inst,
                                         const AugmentationConfig& cfg);

// Same optimum via the fixed-dimension route.
Assignment solve_rwc_fixeddim(const SchedulingInstance& inst, const FixedDimOptions& opts = {});

// Tight bin packing -> identical machines, p_j = w_j = o_j. The instance
// packs iff the optimal weighted-completion cost equals the returned
// threshold sum o_j^2/2 + k B^2/2; no schedule costs less.
std::pair<SchedulingInstance, Rat> reduce_binpacking(const BinPackingInstance& bp);

// Exact objective of an explicit assignment: max load/speed for makespan
// tags, summed per-machine Smith cost for weighted completion. Throws on
// counts that break multiplicities or land on forbidden kinds.
Rat assignment_objective(const SchedulingInstance& inst, const std::vector<IntVec>& counts);

}  // namespace hms
