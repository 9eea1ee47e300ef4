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

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hms/graver.hpp"
#include "hms/io.hpp"
#include "hms/oracles.hpp"
#include "hms/scheduling.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitResource = 3;
constexpr int kExitMismatch = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hms::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SolveOptions {
  std::string file;
  std::string method = "nfold";
  std::string brick_radius, sigma_radius;
  long budget = 0;
  bool as_json = false;
};

hms::AugmentationConfig make_config(const hms::NFoldInstance& shape, const SolveOptions& opt) {
  hms::AugmentationConfig cfg = hms::AugmentationConfig::tuned(shape);
  if (!opt.brick_radius.empty()) cfg.brick_radius = hms::parse_int(opt.brick_radius);
  if (!opt.sigma_radius.empty()) cfg.sigma_radius = hms::parse_int(opt.sigma_radius);
  if (opt.budget > 0) cfg.node_budget = opt.budget;
  return cfg;
}

void emit_assignment(const hms::Assignment& a, bool as_json) {
  if (as_json) {
    hms::AssignmentDocument doc{a.objective, a.counts};
    std::cout << hms::serialize_assignment(doc).dump(2) << "\n";
    return;
  }
  std::cout << "optimum " << hms::rat_to_string(a.objective) << "\n";
  for (size_t j = 0; j < a.counts.size(); ++j) {
    std::cout << "type " << j << ":";
    for (const hms::Int& c : a.counts[j]) std::cout << " " << c.get_str();
    std::cout << "\n";
  }
}

void emit_value(const hms::Rat& v, bool as_json) {
  if (as_json)
    std::cout << json{{"status", "optimal"}, {"objective", hms::rat_to_string(v)}}.dump(2) << "\n";
  else
    std::cout << "optimum " << hms::rat_to_string(v) << "\n";
}

int emit_infeasible(bool as_json) {
  if (as_json)
    std::cout << json{{"status", "infeasible"}}.dump(2) << "\n";
  else
    std::cout << "infeasible\n";
  return kExitInfeasible;
}

int run_solve(const SolveOptions& opt) {
  hms::InstanceDocument doc = hms::parse_instance_text(slurp(opt.file));

  if (auto* prog = std::get_if<hms::NFoldInstance>(&doc)) {
    if (opt.method == "brute") {
      auto sol = hms::brute_solve_ip(hms::assemble_full_matrix(*prog), prog->b, prog->l, prog->u,
                                     prog->objective);
      if (!sol) return emit_infeasible(opt.as_json);
      emit_value(sol->value, opt.as_json);
      return kExitOk;
    }
    if (opt.method != "nfold") {
      std::cerr << "error: method '" << opt.method << "' does not apply to n-fold programs\n";
      return kExitInput;
    }
    hms::NFoldOutcome out = hms::solve_nfold(*prog, make_config(*prog, opt));
    if (auto* sol = std::get_if<hms::NFoldSolution>(&out)) {
      if (opt.as_json) {
        json xs = json::array();
        for (const hms::Int& v : sol->x) xs.push_back(v.get_str());
        std::cout << json{{"status", "optimal"},
                          {"objective", hms::rat_to_string(sol->value)},
                          {"x", std::move(xs)}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "optimum " << hms::rat_to_string(sol->value) << "\nx:";
        for (const hms::Int& v : sol->x) std::cout << " " << v.get_str();
        std::cout << "\n";
      }
      return kExitOk;
    }
    return emit_infeasible(opt.as_json);
  }

  if (auto* bp = std::get_if<hms::BinPackingInstance>(&doc)) {
    auto [inst, threshold] = hms::reduce_binpacking(*bp);
    hms::Rat value;
    if (opt.method == "brute") {
      value = *hms::brute_min_weighted_completion(inst);
    } else if (opt.method == "fixdim") {
      value = hms::solve_rwc_fixeddim(inst).objective;
    } else {
      value = hms::solve_rwc_nfold(inst).assignment.objective;
    }
    const bool packs = value == threshold;
    if (opt.as_json)
      std::cout << json{{"status", packs ? "packs" : "no-packing"},
                        {"objective", hms::rat_to_string(value)},
                        {"threshold", hms::rat_to_string(threshold)}}
                       .dump(2)
                << "\n";
    else
      std::cout << (packs ? "packs" : "no-packing") << " (cost " << hms::rat_to_string(value)
                << ", threshold " << hms::rat_to_string(threshold) << ")\n";
    return packs ? kExitOk : kExitInfeasible;
  }

  const auto& inst = std::get<hms::SchedulingInstance>(doc);
  if (inst.tag == hms::ProblemTag::kRWeightedCompletion) {
    if (opt.method == "brute") {
      auto v = hms::brute_min_weighted_completion(inst, opt.budget > 0 ? opt.budget : 10'000'000);
      if (!v) return emit_infeasible(opt.as_json);
      emit_value(*v, opt.as_json);
      return kExitOk;
    }
    if (opt.method == "fixdim") {
      hms::FixedDimOptions fopts;
      if (opt.budget > 0) fopts.node_budget = opt.budget;
      emit_assignment(hms::solve_rwc_fixeddim(inst, fopts), opt.as_json);
      return kExitOk;
    }
    hms::NFoldInstance shape = hms::build_nfold_rwc(inst);
    emit_assignment(hms::solve_rwc_nfold(inst, make_config(shape, opt)).assignment, opt.as_json);
    return kExitOk;
  }

  // makespan problems
  if (opt.method == "brute") {
    auto v = hms::brute_min_makespan(inst, opt.budget > 0 ? opt.budget : 10'000'000);
    if (!v) return emit_infeasible(opt.as_json);
    emit_value(*v, opt.as_json);
    return kExitOk;
  }
  if (opt.method != "nfold") {
    std::cerr << "error: method '" << opt.method << "' does not apply to makespan problems\n";
    return kExitInput;
  }
  hms::NFoldInstance shape =
      inst.tag == hms::ProblemTag::kQCmax
          ? hms::build_nfold_qcmax(inst, hms::Int(0), hms::lcm_of_speeds(inst))
          : hms::build_nfold_rcmax(inst, hms::Int(0));
  auto result = hms::minimize_makespan(inst, make_config(shape, opt));
  if (!result) return emit_infeasible(opt.as_json);
  emit_assignment(result->assignment, opt.as_json);
  return kExitOk;
}

int run_graver(const std::string& file, const std::string& inline_spec, const std::string& radius,
               long budget) {
  hms::IntMatrix A(0, 0);
  if (!inline_spec.empty()) {
    std::istringstream in(inline_spec);
    long rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw hms::ParseError("--inline wants: rows cols entries...");
    hms::IntMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) {
        std::string tok;
        if (!(in >> tok)) throw hms::ParseError("--inline: not enough entries");
        m.at(r, c) = hms::parse_int(tok);
      }
    A = std::move(m);
  } else {
    json doc = json::parse(slurp(file), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("entries"))
      throw hms::ParseError("matrix file wants {\"rows\",\"cols\",\"entries\"}");
    long rows = doc.at("rows").get<long>(), cols = doc.at("cols").get<long>();
    hms::IntMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) {
        const json& e = doc.at("entries").at(r).at(c);
        m.at(r, c) = e.is_string() ? hms::parse_int(e.get<std::string>()) : hms::Int(e.get<long>());
      }
    A = std::move(m);
  }
  hms::Int rho = radius.empty() ? hms::default_graver_radius(A) : hms::parse_int(radius);
  hms::GraverBasis basis =
      hms::graver_basis_box(A, rho, budget > 0 ? budget : 50'000'000);
  for (const hms::IntVec& g : basis.elements) {
    for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? " " : "") << g[i].get_str();
    std::cout << "\n";
  }
  std::cout << "count " << basis.elements.size() << "\n";
  return kExitOk;
}

int run_reduce(const std::string& file, const std::string& out_path) {
  hms::InstanceDocument doc = hms::parse_instance_text(slurp(file));
  auto* bp = std::get_if<hms::BinPackingInstance>(&doc);
  if (!bp) throw hms::ParseError("reduce-binpacking wants a binpacking instance");
  auto [inst, threshold] = hms::reduce_binpacking(*bp);
  json out{{"instance", hms::serialize_instance(hms::InstanceDocument(inst))},
           {"threshold", hms::rat_to_string(threshold)}};
  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    f << out.dump(2) << "\n";
  }
  return kExitOk;
}

int run_verify(const std::string& inst_file, const std::string& assign_file) {
  hms::InstanceDocument doc = hms::parse_instance_text(slurp(inst_file));
  auto* inst = std::get_if<hms::SchedulingInstance>(&doc);
  if (!inst) throw hms::ParseError("verify wants a scheduling instance");
  hms::AssignmentDocument a = hms::parse_assignment_text(slurp(assign_file));
  hms::Rat actual = hms::assignment_objective(*inst, a.counts);
  if (actual == a.objective) {
    std::cout << "ok " << hms::rat_to_string(actual) << "\n";
    return kExitOk;
  }
  std::cout << "mismatch: claimed " << hms::rat_to_string(a.objective) << ", actual "
            << hms::rat_to_string(actual) << "\n";
  return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact high-multiplicity scheduling solvers"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file to proven optimality");
  solve->add_option("file", solve_opt.file, "instance json")->required();
  solve->add_option("--method", solve_opt.method, "nfold|fixdim|brute")
      ->check(CLI::IsMember({"nfold", "fixdim", "brute"}));
  solve->add_option("--brick-radius", solve_opt.brick_radius, "starting per-brick move radius");
  solve->add_option("--sigma-radius", solve_opt.sigma_radius, "starting partial-sum radius");
  solve->add_option("--budget", solve_opt.budget, "search node budget");
  solve->add_flag("--json", solve_opt.as_json, "machine-readable output");

  std::string graver_file, graver_inline, graver_radius;
  long graver_budget = 0;
  CLI::App* graver = app.add_subcommand("graver", "enumerate a Graver basis");
  graver->add_option("file", graver_file, "matrix json");
  graver->add_option("--inline", graver_inline, "\"rows cols e11 e12 ...\"");
  graver->add_option("--radius", graver_radius, "enumeration radius override");
  graver->add_option("--budget", graver_budget, "search node budget");

  std::string reduce_file, reduce_out;
  CLI::App* reduce = app.add_subcommand("reduce-binpacking",
                                        "rewrite tight bin packing as weighted completion");
  reduce->add_option("file", reduce_file, "binpacking json")->required();
  reduce->add_option("-o,--output", reduce_out, "write json here instead of stdout");

  std::string verify_inst, verify_assign;
  CLI::App* verify = app.add_subcommand("verify", "check an assignment against its instance");
  verify->add_option("instance", verify_inst, "instance json")->required();
  verify->add_option("assignment", verify_assign, "assignment json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_opt);
    if (*graver) {
      if (graver_file.empty() == graver_inline.empty()) {
        std::cerr << "error: pass exactly one of a matrix file or --inline\n";
        return kExitInput;
      }
      return run_graver(graver_file, graver_inline, graver_radius, graver_budget);
    }
    if (*reduce) return run_reduce(reduce_file, reduce_out);
    if (*verify) return run_verify(verify_inst, verify_assign);
  } catch (const hms::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const hms::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
