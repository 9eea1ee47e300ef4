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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "hms/oracles.hpp"
#include "hms/scheduling.hpp"
#include "test_util.hpp"

using namespace hms;

namespace {

SchedulingInstance one_machine_wc(std::vector<JobType> types) {
  SchedulingInstance inst;
  inst.tag = ProblemTag::kRWeightedCompletion;
  inst.kinds = 1;
  inst.machines = {{0, 1}};
  inst.job_types = std::move(types);
  return inst;
}

// three jobs (3,1),(3,3),(4,1)
const std::vector<SmithJob> kThreeJobs = {{3, 1}, {3, 3}, {4, 1}};
// multiset 1x(2,4), 2x(2,2), 3x(2,1), 1x(3,1)
const std::vector<SmithJob> kSevenJobs = {{2, 4}, {2, 2}, {2, 2}, {2, 1},
                                          {2, 1}, {2, 1}, {3, 1}};

std::vector<SmithJob> random_jobs(testing::Rng& rng, long count) {
  std::vector<SmithJob> jobs;
  for (long i = 0; i < count; ++i)
    jobs.push_back({Int(testing::pick(rng, 1, 5)), Int(testing::pick(rng, 0, 5))});
  return jobs;
}

Rat permutation_minimum(const std::vector<SmithJob>& jobs) {
  std::vector<size_t> perm(jobs.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  Rat best;
  bool first = true;
  do {
    Rat cost(0);
    Int clock = 0;
    for (size_t idx : perm) {
      clock += jobs[idx].processing;
      cost += Rat(jobs[idx].weight * clock);
    }
    if (first || cost < best) {
      best = cost;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("smith_order") {
  SUBCASE("three-job set") {
    SmithResult r = smith_order(kThreeJobs);
    CHECK(r.order == std::vector<size_t>{1, 0, 2});
    CHECK(r.cost == 25);
  }
  SUBCASE("single job") {
    CHECK(smith_order({{5, 2}}).cost == 10);
  }
  SUBCASE("equal ratios cost the same either way") {
    CHECK(smith_order({{1, 1}, {2, 2}}).cost == 7);
    CHECK(smith_order({{2, 2}, {1, 1}}).cost == 7);
  }
  SUBCASE("beats every permutation on short lists") {
    testing::Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
      auto jobs = random_jobs(rng, testing::pick(rng, 1, 6));
      CHECK(smith_order(jobs).cost == permutation_minimum(jobs));
    }
  }
}

TEST_CASE("cost_by_triangles") {
  SUBCASE("seven-job multiset totals 73") {
    CHECK(cost_by_triangles(kSevenJobs) == 73);
    // linear half-terms alone: sum w_j p_j / 2 = 25/2
    Rat linear(0);
    for (const SmithJob& j : kSevenJobs) linear += Rat(j.weight * j.processing) / 2;
    CHECK(linear == make_rat(25, 2));
    CHECK(cost_by_triangles(kSevenJobs) - linear == make_rat(121, 2));
  }
  SUBCASE("single job is w*p") {
    CHECK(cost_by_triangles({{7, 3}}) == 21);
  }
  SUBCASE("unsorted input is rejected") {
    CHECK_THROWS_AS(cost_by_triangles({{3, 1}, {1, 3}}), std::invalid_argument);
  }
  SUBCASE("equals the Smith cost on random sorted multisets") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
      auto jobs = random_jobs(rng, testing::pick(rng, 1, 8));
      std::stable_sort(jobs.begin(), jobs.end(), [](const SmithJob& a, const SmithJob& b) {
        return a.weight * b.processing > b.weight * a.processing;
      });
      CHECK(cost_by_triangles(jobs) == smith_order(jobs).cost);
    }
  }
}

TEST_CASE("cost_by_type_counts") {
  SchedulingInstance inst = one_machine_wc(
      {{{Int(2)}, 4, 1}, {{Int(2)}, 2, 2}, {{Int(2)}, 1, 3}, {{Int(3)}, 1, 1}});

  SUBCASE("zero counts cost nothing") {
    CHECK(cost_by_type_counts(IntVec(4, Int(0)), inst, 0) == 0);
  }
  SUBCASE("full multiplicities reproduce the seven-job cost") {
    CHECK(cost_by_type_counts({1, 2, 3, 1}, inst, 0) == 73);
  }
  SUBCASE("forbidden types cannot carry jobs") {
    SchedulingInstance forb = one_machine_wc({{{Int(1)}, 1, 1}, {{Int(2), std::nullopt}, 1, 1}});
    forb.kinds = 2;
    forb.machines = {{1, 1}};
    forb.job_types[0].processing = {Int(1), Int(1)};
    CHECK_THROWS_AS(cost_by_type_counts({0, 1}, forb, 0), std::invalid_argument);
  }
  SUBCASE("random counts equal Smith on the expanded list") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      IntVec counts(4);
      std::vector<SmithJob> expanded;
      for (long j = 0; j < 4; ++j) {
        counts[j] = testing::pick(rng, 0, 3);
        for (Int c = 0; c < counts[j]; ++c)
          expanded.push_back({*inst.job_types[j].processing[0], inst.job_types[j].weight});
      }
      CHECK(cost_by_type_counts(counts, inst, 0) == smith_order(expanded).cost);
    }
  }
}

TEST_CASE("uniform-machines makespan program") {
  SchedulingInstance inst;
  inst.tag = ProblemTag::kQCmax;
  inst.kinds = 1;
  inst.machines = {{0, 1}, {0, 1}};
  inst.job_types = {{{Int(2)}, 1, 3}};  // 3 jobs of length 2

  SUBCASE("feasible at T=4, infeasible at T=3 on unit speeds") {
    NFoldInstance at4 = build_nfold_qcmax(inst, 4, 1);
    CHECK(is_feasible(solve_nfold(at4, AugmentationConfig::tuned(at4))));
    NFoldInstance at3 = build_nfold_qcmax(inst, 3, 1);
    CHECK_FALSE(is_feasible(solve_nfold(at3, AugmentationConfig::tuned(at3))));
  }
  SUBCASE("a fast machine halves the deadline") {
    inst.machines[1].speed = 2;
    Int L = lcm_of_speeds(inst);
    NFoldInstance prog = build_nfold_qcmax(inst, 2 * L, L);
    CHECK(is_feasible(solve_nfold(prog, AugmentationConfig::tuned(prog))));
  }
  SUBCASE("deadline zero with jobs present is infeasible") {
    NFoldInstance prog = build_nfold_qcmax(inst, 0, 1);
    CHECK_FALSE(is_feasible(solve_nfold(prog, AugmentationConfig::tuned(prog))));
  }
}

TEST_CASE("unrelated-machines makespan program") {
  SUBCASE("two kinds with a forbidden pairing") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kRCmax;
    inst.kinds = 2;
    inst.machines = {{0, 1}, {0, 1}, {1, 1}};
    inst.job_types = {{{Int(1), std::nullopt}, 1, 2}, {{Int(2), Int(1)}, 1, 2}};
    NFoldInstance at2 = build_nfold_rcmax(inst, 2);
    CHECK(is_feasible(solve_nfold(at2, AugmentationConfig::tuned(at2))));
    NFoldInstance at1 = build_nfold_rcmax(inst, 1);
    CHECK_FALSE(is_feasible(solve_nfold(at1, AugmentationConfig::tuned(at1))));
  }
  SUBCASE("single machine carries its whole load") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kRCmax;
    inst.kinds = 1;
    inst.machines = {{0, 1}};
    inst.job_types = {{{Int(3)}, 1, 2}};
    NFoldInstance at6 = build_nfold_rcmax(inst, 6);
    CHECK(is_feasible(solve_nfold(at6, AugmentationConfig::tuned(at6))));
    NFoldInstance at5 = build_nfold_rcmax(inst, 5);
    CHECK_FALSE(is_feasible(solve_nfold(at5, AugmentationConfig::tuned(at5))));
  }
}

TEST_CASE("weighted-completion programs") {
  SUBCASE("one machine, three jobs, optimum 25 via both routes") {
    SchedulingInstance inst =
        one_machine_wc({{{Int(3)}, 1, 1}, {{Int(3)}, 3, 1}, {{Int(4)}, 1, 1}});
    CHECK(solve_rwc_nfold(inst).assignment.objective == 25);
    CHECK(solve_rwc_fixeddim(inst).objective == 25);
  }
  SUBCASE("two identical machines split two unit jobs") {
    SchedulingInstance inst = one_machine_wc({{{Int(1)}, 1, 2}});
    inst.machines = {{0, 1}, {0, 1}};
    CHECK(solve_rwc_nfold(inst).assignment.objective == 2);
    CHECK(solve_rwc_fixeddim(inst).objective == 2);
  }
  SUBCASE("zero jobs cost zero") {
    SchedulingInstance inst = one_machine_wc({{{Int(2)}, 1, 0}});
    CHECK(solve_rwc_nfold(inst).assignment.objective == 0);
    CHECK(solve_rwc_fixeddim(inst).objective == 0);
  }
  SUBCASE("one machine reduces to the type-count cost") {
    SchedulingInstance inst =
        one_machine_wc({{{Int(2)}, 3, 2}, {{Int(1)}, 1, 3}});
    IntVec full = {2, 3};
    CHECK(solve_rwc_fixeddim(inst).objective == cost_by_type_counts(full, inst, 0));
  }
  SUBCASE("machine swap leaves the optimum unchanged") {
    SchedulingInstance inst = one_machine_wc({{{Int(2)}, 2, 3}, {{Int(3)}, 1, 2}});
    inst.machines = {{0, 1}, {0, 1}};
    Rat v = solve_rwc_fixeddim(inst).objective;
    std::swap(inst.machines[0], inst.machines[1]);
    CHECK(solve_rwc_fixeddim(inst).objective == v);
  }
}

TEST_CASE("minimize_makespan") {
  SUBCASE("three length-2 jobs on two unit machines") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kQCmax;
    inst.kinds = 1;
    inst.machines = {{0, 1}, {0, 1}};
    inst.job_types = {{{Int(2)}, 1, 3}};
    auto r = minimize_makespan(inst);
    REQUIRE(r);
    CHECK(r->cmax == 4);
    CHECK(assignment_objective(inst, r->assignment.counts) == 4);
  }
  SUBCASE("speeds 1 and 2") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kQCmax;
    inst.kinds = 1;
    inst.machines = {{0, 1}, {0, 2}};
    inst.job_types = {{{Int(2)}, 1, 3}};
    auto r = minimize_makespan(inst);
    REQUIRE(r);
    CHECK(r->cmax == 2);
  }
  SUBCASE("single machine gets load over speed exactly") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kQCmax;
    inst.kinds = 1;
    inst.machines = {{0, 3}};
    inst.job_types = {{{Int(2)}, 1, 5}, {{Int(1)}, 1, 3}};
    auto r = minimize_makespan(inst);
    REQUIRE(r);
    CHECK(r->cmax == make_rat(13, 3));
  }
  SUBCASE("unrelated machines with a forbidden pairing") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kRCmax;
    inst.kinds = 2;
    inst.machines = {{0, 1}, {0, 1}, {1, 1}};
    inst.job_types = {{{Int(1), std::nullopt}, 1, 2}, {{Int(2), Int(1)}, 1, 2}};
    auto r = minimize_makespan(inst);
    REQUIRE(r);
    CHECK(r->cmax == 2);
  }
  SUBCASE("no machine that can run a mandatory type") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kRCmax;
    inst.kinds = 2;
    inst.machines = {{0, 1}};
    inst.job_types = {{{std::nullopt, Int(1)}, 1, 1}};
    CHECK_FALSE(minimize_makespan(inst));
  }
  SUBCASE("no jobs at all") {
    SchedulingInstance inst;
    inst.tag = ProblemTag::kQCmax;
    inst.kinds = 1;
    inst.machines = {{0, 1}};
    inst.job_types = {{{Int(2)}, 1, 0}};
    auto r = minimize_makespan(inst);
    REQUIRE(r);
    CHECK(r->cmax == 0);
  }
}

TEST_CASE("makespan driver invariants") {
  testing::Rng rng(811);

  SUBCASE("feasibility is monotone around the optimum") {
    for (int seed = 0; seed < 20; ++seed) {
      SchedulingInstance inst = testing::random_q_instance(rng, 8);
      auto r = minimize_makespan(inst);
      REQUIRE(r);
      Int L = lcm_of_speeds(inst);
      Int h = r->cmax.get_num() * L / r->cmax.get_den();
      NFoldInstance above = build_nfold_qcmax(inst, h + 1, L);
      CHECK(is_feasible(solve_nfold(above, AugmentationConfig::tuned(above))));
      if (h > 0) {
        NFoldInstance below = build_nfold_qcmax(inst, h - 1, L);
        CHECK_FALSE(is_feasible(solve_nfold(below, AugmentationConfig::tuned(below))));
      }
    }
  }

  SUBCASE("speed scaling divides the optimum exactly") {
    for (int seed = 0; seed < 15; ++seed) {
      SchedulingInstance inst = testing::random_q_instance(rng, 8);
      auto base = minimize_makespan(inst);
      REQUIRE(base);
      SchedulingInstance scaled = inst;
      long c = testing::pick(rng, 2, 4);
      for (Machine& mc : scaled.machines) mc.speed *= c;
      auto fast = minimize_makespan(scaled);
      REQUIRE(fast);
      CHECK(fast->cmax * c == base->cmax);
    }
  }
}

TEST_CASE("equal-ratio types can be permuted freely") {
  testing::Rng rng(911);
  for (int seed = 0; seed < 15; ++seed) {
    // two deliberately tied types (w/p equal), plus one free type
    SchedulingInstance inst = one_machine_wc({{{Int(1)}, 1, Int(testing::pick(rng, 0, 2))},
                                              {{Int(2)}, 2, Int(testing::pick(rng, 0, 2))},
                                              {{Int(testing::pick(rng, 1, 3))},
                                               Int(testing::pick(rng, 1, 3)),
                                               Int(testing::pick(rng, 0, 2))}});
    if (testing::pick(rng, 0, 1)) inst.machines.push_back({0, 1});
    Rat v = solve_rwc_nfold(inst).assignment.objective;
    std::swap(inst.job_types[0], inst.job_types[1]);
    CHECK(solve_rwc_nfold(inst).assignment.objective == v);
  }
}

TEST_CASE("weighted-completion routes agree with each other and the oracle") {
  testing::Rng rng(1013);
  for (int seed = 0; seed < 25; ++seed) {
    SchedulingInstance inst =
        testing::random_r_instance(rng, ProblemTag::kRWeightedCompletion, 6);
    auto oracle = brute_min_weighted_completion(inst);
    REQUIRE(oracle);
    WeightedCompletionResult nf = solve_rwc_nfold(inst);
    Assignment fd = solve_rwc_fixeddim(inst);
    CHECK(nf.assignment.objective == *oracle);
    CHECK(fd.objective == *oracle);
    CHECK(assignment_objective(inst, nf.assignment.counts) == nf.assignment.objective);
    CHECK(assignment_objective(inst, fd.counts) == fd.objective);
  }
}

TEST_CASE("bin-packing reduction") {
  SUBCASE("packable instance meets its threshold") {
    BinPackingInstance bp{2, 3, {1, 2, 3}};
    auto [inst, threshold] = reduce_binpacking(bp);
    CHECK(threshold == 16);
    CHECK(solve_rwc_fixeddim(inst).objective == 16);
    CHECK(brute_binpacking_feasible(bp));
  }
  SUBCASE("unpackable instance exceeds it") {
    BinPackingInstance bp{2, 3, {2, 2, 2}};
    auto [inst, threshold] = reduce_binpacking(bp);
    CHECK(threshold == 15);
    CHECK(solve_rwc_fixeddim(inst).objective == 16);
    CHECK_FALSE(brute_binpacking_feasible(bp));
  }
  SUBCASE("one bin, one full-size item") {
    for (long B : {1L, 2L, 5L}) {
      BinPackingInstance bp{1, B, {Int(B)}};
      auto [inst, threshold] = reduce_binpacking(bp);
      CHECK(threshold == B * B);
      CHECK(solve_rwc_fixeddim(inst).objective == threshold);
    }
  }
  SUBCASE("loose instances are rejected") {
    CHECK_THROWS_AS(reduce_binpacking(BinPackingInstance{2, 3, {1, 2}}), std::invalid_argument);
  }
  SUBCASE("no schedule beats the threshold") {
    BinPackingInstance bp{2, 4, {1, 1, 2, 4}};
    auto [inst, threshold] = reduce_binpacking(bp);
    CHECK(*brute_min_weighted_completion(inst) >= threshold);
  }
}

TEST_CASE("assignment_objective validation") {
  SchedulingInstance inst = one_machine_wc({{{Int(2)}, 1, 2}});
  inst.machines = {{0, 1}, {0, 1}};
  CHECK(assignment_objective(inst, {{1, 1}}) == 4);
  CHECK_THROWS_AS(assignment_objective(inst, {{2, 1}}), std::invalid_argument);  // over-covered
  CHECK_THROWS_AS(assignment_objective(inst, {{2}}), std::invalid_argument);     // wrong shape
}
