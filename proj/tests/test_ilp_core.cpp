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
#include <numeric>

#include "doctest.h"
#include "hms/nfold.hpp"
#include "hms/oracles.hpp"
#include "hms/scheduling.hpp"
#include "test_util.hpp"

using namespace hms;

TEST_CASE("integer and rational parsing") {
  CHECK(parse_int("0") == 0);
  CHECK(parse_int("-17") == -17);
  CHECK(parse_int("1000000000000000000000000") == Int("1000000000000000000000000"));
  CHECK_THROWS_AS(parse_int(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int("12x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int("1.5"), std::invalid_argument);

  CHECK(parse_rat("3/4") == make_rat(3, 4));
  CHECK(parse_rat("6/8") == make_rat(3, 4));
  CHECK(parse_rat("-5") == Rat(-5));
  CHECK(rat_to_string(parse_rat("6/8")) == "3/4");
  CHECK(rat_to_string(Rat(4)) == "4/1");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("matrix basics and max abs entry") {
  IntMatrix m(2, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = -5;
  m.at(1, 1) = 3;
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.max_abs() == 5);
  IntVec x = {1, 1, 1};
  CHECK(m.row_dot(0, x) == -4);
  CHECK(m.row_dot(1, x) == 3);

  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix r(testing::pick(rng, 1, 3), testing::pick(rng, 1, 4));
    Int brute = 0;
    for (long i = 0; i < r.rows(); ++i)
      for (long c = 0; c < r.cols(); ++c) {
        r.at(i, c) = testing::pick(rng, -9, 9);
        if (abs(r.at(i, c)) > brute) brute = abs(r.at(i, c));
      }
    CHECK(r.max_abs() == brute);
  }
}

namespace {

// One machine, t=1, n=1 shell around a given objective.
NFoldInstance tiny_instance(SeparableQuadObjective obj, IntVec l, IntVec u, IntVec b) {
  NFoldInstance inst;
  inst.A1 = IntMatrix(1, 1);
  inst.A1.at(0, 0) = 1;
  inst.A2 = IntMatrix(0, 1);
  inst.n = static_cast<long>(l.size());
  inst.l = std::move(l);
  inst.u = std::move(u);
  inst.b = std::move(b);
  inst.objective = std::move(obj);
  return inst;
}

}  // namespace

TEST_CASE("eval_objective exact values") {
  auto obj = SeparableQuadObjective::zeros(1);
  NFoldInstance zero = tiny_instance(obj, {0}, {9}, {0});
  IntVec x0 = {0};
  CHECK(eval_objective(zero, x0) == 0);

  obj.quad[0] = make_rat(1, 2);
  NFoldInstance half = tiny_instance(obj, {0}, {9}, {0});
  IntVec x4 = {4};
  CHECK(eval_objective(half, x4) == 8);

  IntVec wrong = {1, 2};
  CHECK_THROWS_AS(eval_objective(half, wrong), std::invalid_argument);
}

TEST_CASE("single-machine weighted-completion program evaluates to the Smith cost") {
  // 1x(p=2,w=4), 2x(2,2), 3x(2,1), 1x(3,1) on one machine
  SchedulingInstance inst;
  inst.tag = ProblemTag::kRWeightedCompletion;
  inst.kinds = 1;
  inst.machines = {{0, 1}};
  inst.job_types = {{{Int(2)}, 4, 1}, {{Int(2)}, 2, 2}, {{Int(2)}, 1, 3}, {{Int(3)}, 1, 1}};
  NFoldInstance prog = build_nfold_rwc(inst);

  // the optimum keeps every job on the only machine; z are the ratio-order
  // prefix masses
  IntVec x = {1, 2, 3, 1, 2, 6, 12, 15};
  REQUIRE(check_feasible(prog, x).feasible());

  std::vector<SmithJob> jobs = {{2, 4}, {2, 2}, {2, 2}, {2, 1}, {2, 1}, {2, 1}, {3, 1}};
  CHECK(eval_objective(prog, x) == smith_order(jobs).cost);
  CHECK(eval_objective(prog, x) == 73);
}

TEST_CASE("check_feasible reports rows and bounds") {
  SUBCASE("x = l against b = full matrix times l") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      NFoldInstance inst = testing::random_nfold(rng);
      const long r = inst.r(), s = inst.s();
      for (long row = 0; row < r; ++row) {
        Int acc = 0;
        for (long i = 0; i < inst.n; ++i) acc += inst.A1.row_dot(row, inst.brick(inst.l, i));
        inst.b[row] = acc;
      }
      for (long i = 0; i < inst.n; ++i)
        for (long row = 0; row < s; ++row)
          inst.b[r + i * s + row] = inst.A2.row_dot(row, inst.brick(inst.l, i));
      CHECK(check_feasible(inst, inst.l).feasible());
    }
  }

  SUBCASE("violated global row carries its residual") {
    NFoldInstance inst = tiny_instance(SeparableQuadObjective::zeros(2), {0, 0}, {5, 5}, {3});
    IntVec x = {1, 1};
    ViolationReport report = check_feasible(inst, x);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].row == 0);
    CHECK(report.rows[0].residual == -1);
    CHECK(report.bounds.empty());
  }

  SUBCASE("bound violations") {
    NFoldInstance inst = tiny_instance(SeparableQuadObjective::zeros(1), {2}, {4}, {5});
    IntVec x = {5};
    ViolationReport report = check_feasible(inst, x);
    CHECK(report.rows.empty());
    REQUIRE(report.bounds.size() == 1);
    CHECK(report.bounds[0].index == 0);
    CHECK_FALSE(report.bounds[0].lower);
    CHECK(report.bounds[0].amount == 1);
  }

  SUBCASE("brute-enumerated feasible points pass") {
    testing::Rng rng(23);
    int found = 0;
    for (int trial = 0; trial < 40 && found < 8; ++trial) {
      NFoldInstance inst = testing::random_nfold(rng);
      auto sol = brute_solve_ip(assemble_full_matrix(inst), inst.b, inst.l, inst.u, inst.objective);
      if (!sol) continue;
      ++found;
      CHECK(check_feasible(inst, sol->x).feasible());
    }
    CHECK(found > 0);
  }
}

TEST_CASE("assemble_full_matrix block pattern") {
  SUBCASE("n=1 stacks A1 over A2") {
    NFoldInstance inst;
    inst.A1 = IntMatrix(1, 2);
    inst.A1.at(0, 0) = 3;
    inst.A1.at(0, 1) = -1;
    inst.A2 = IntMatrix(1, 2);
    inst.A2.at(0, 0) = 2;
    inst.A2.at(0, 1) = 5;
    inst.n = 1;
    inst.b = {0, 0};
    inst.l = {0, 0};
    inst.u = {1, 1};
    inst.objective = SeparableQuadObjective::zeros(2);
    IntMatrix full = assemble_full_matrix(inst);
    CHECK(full.rows() == 2);
    CHECK(full.cols() == 2);
    CHECK(full.at(0, 0) == 3);
    CHECK(full.at(0, 1) == -1);
    CHECK(full.at(1, 0) == 2);
    CHECK(full.at(1, 1) == 5);
  }

  SUBCASE("two bricks repeat the top band and block-diagonalize A2") {
    NFoldInstance inst;
    inst.A1 = IntMatrix(2, 3);
    inst.A1.at(0, 0) = 1;
    inst.A1.at(1, 1) = 1;
    inst.A2 = IntMatrix(1, 3);
    inst.A2.at(0, 0) = 1;
    inst.A2.at(0, 1) = 2;
    inst.A2.at(0, 2) = 1;
    inst.n = 2;
    inst.b = {0, 0, 0, 0};
    inst.l.assign(6, Int(0));
    inst.u.assign(6, Int(1));
    inst.objective = SeparableQuadObjective::zeros(6);
    IntMatrix full = assemble_full_matrix(inst);
    REQUIRE(full.rows() == 4);
    REQUIRE(full.cols() == 6);
    // top band repeated
    for (long i : {0L, 3L}) {
      CHECK(full.at(0, i + 0) == 1);
      CHECK(full.at(1, i + 1) == 1);
    }
    // block diagonal
    CHECK(full.at(2, 0) == 1);
    CHECK(full.at(2, 1) == 2);
    CHECK(full.at(2, 2) == 1);
    CHECK(full.at(2, 3) == 0);
    CHECK(full.at(3, 3) == 1);
    CHECK(full.at(3, 4) == 2);
    CHECK(full.at(3, 5) == 1);
    CHECK(full.at(3, 0) == 0);
  }

  SUBCASE("full matrix agrees with check_feasible on random x") {
    testing::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      NFoldInstance inst = testing::random_nfold(rng);
      IntMatrix full = assemble_full_matrix(inst);
      for (int probe = 0; probe < 10; ++probe) {
        IntVec x(inst.dim());
        for (long j = 0; j < inst.dim(); ++j)
          x[j] = inst.l[j] + testing::pick(rng, 0, to_long(inst.u[j] - inst.l[j]));
        bool rows_ok = true;
        for (long row = 0; row < full.rows(); ++row)
          if (full.row_dot(row, x) != inst.b[row]) rows_ok = false;
        CHECK(check_feasible(inst, x).rows.empty() == rows_ok);
      }
    }
  }
}

TEST_CASE("objective is convex along integer directions") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    NFoldInstance inst = testing::random_nfold(rng);
    IntVec x(inst.dim()), g(inst.dim());
    for (long j = 0; j < inst.dim(); ++j) {
      x[j] = testing::pick(rng, -4, 4);
      g[j] = testing::pick(rng, -2, 2);
    }
    auto at = [&](long lambda) {
      IntVec p(inst.dim());
      for (long j = 0; j < inst.dim(); ++j) p[j] = x[j] + lambda * g[j];
      return eval_objective(inst, p);
    };
    long l1 = testing::pick(rng, -3, 3);
    long step = testing::pick(rng, 1, 3);
    CHECK(at(l1 + step) * 2 <= at(l1) + at(l1 + 2 * step));
  }
}

TEST_CASE("instance validation rejects malformed programs") {
  NFoldInstance inst = tiny_instance(SeparableQuadObjective::zeros(1), {0}, {1}, {0});
  CHECK_NOTHROW(inst.validate());
  inst.l = {2};  // above u
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.l = {0};
  inst.objective.quad[0] = make_rat(-1, 2);
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}
