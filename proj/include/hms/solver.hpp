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

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hms/nfold.hpp"
#include "hms/numbers.hpp"

namespace hms {

// Radii for the augmentation search. brick_radius bounds the per-brick
// kernel moves, sigma_radius the partial top-band sums carried across
// bricks. Both are doubled on escalation; per-coordinate bound clipping
// and prefix-interval clipping are always applied on top, so oversized
// radii cost nothing.
struct AugmentationConfig {
  Int brick_radius;
  Int sigma_radius;
  int escalation_rounds = 2;
  long node_budget = 50'000'000;

  // t * a^{r+s} and r * a * t * rho, the quoted worst-case norm bounds.
  static AugmentationConfig norm_bound_defaults(const NFoldInstance& inst);

  // Small starting radii with enough escalation headroom to reach the
  // radii at which the step search is provably complete. This is what
  // the scheduling frontends use.
  static AugmentationConfig tuned(const NFoldInstance& inst);
};

struct AugmentStats {
  long iterations = 0;
  long dp_nodes = 0;
  int max_level = 0;
  long phase1_iterations = 0;

  void absorb(const AugmentStats& o);
};

struct AugmentingStep {
  IntVec g;          // A^(n) g = 0, x + g within bounds
  Int lambda;        // chosen step length
  Rat gain_at_unit;  // f(x) - f(x+g), positive
};

struct Phase1Result {
  std::optional<IntVec> x;  // feasible point of the original program
  Rat aux_optimum;          // 0 iff feasible
  AugmentStats stats;
};

// Auxiliary program: each brick gains (+I,-I) columns on the r global
// rows (usable only in brick 0) and on the s local rows, objective = sum
// of auxiliaries, start = (l, signed residuals).
Phase1Result phase1_feasible(const NFoldInstance& inst, const AugmentationConfig& cfg);

// One Graver-best step at the given radii: a DP over bricks picks one
// bounded kernel move per brick with zero top-band total, maximizing the
// exact improvement at unit step; the step length is then re-optimized.
// nullopt iff nothing improves at these radii.
std::optional<AugmentingStep> find_augmenting_step(const NFoldInstance& inst,
                                                   std::span<const Int> x,
                                                   const AugmentationConfig& cfg,
                                                   AugmentStats* stats = nullptr);

// Largest-improvement integer step along g from x; lambda_max comes from
// the bounds. Returns 0 when there is no room (caller rejects g).
Int best_step_length(const NFoldInstance& inst, std::span<const Int> x, const IntVec& g);

struct NFoldSolution {
  IntVec x;
  Rat value;
  AugmentStats stats;
};

struct NFoldInfeasible {
  Rat aux_optimum;  // positive phase-1 optimum
  AugmentStats stats;
};

using NFoldOutcome = std::variant<NFoldSolution, NFoldInfeasible>;

inline bool is_feasible(const NFoldOutcome& o) { return std::holds_alternative<NFoldSolution>(o); }

using StepObserver = std::function<void(std::span<const Int> x, const Rat& value)>;

// Phase 1, then augment until no improving step exists, escalating the
// radii between rounds. The observer, when set, sees every intermediate
// point of the main augmentation (not phase 1).
NFoldOutcome solve_nfold(const NFoldInstance& inst, const AugmentationConfig& cfg,
                         const StepObserver& observer = nullptr);

}  // namespace hms
