// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "apd/checks.hpp"
#include "apd/harness.hpp"
#include "apd/rng.hpp"
#include "apd/zoo.hpp"

using namespace apd;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunManifest qcqp_manifest(const fs::path& out) {
  RunManifest man;
  man.problem.kind = ProblemSpec::Kind::qcqp;
  man.problem.qcqp = {12, 3, true};
  man.solver.algorithm = Algorithm::apdb;
  man.solver.mu = 1.0;
  man.solver.tau0 = 1e-3;
  man.solver.gamma0 = 1.0;
  man.solver.c_alpha = 0.998;
  man.solver.c_beta = 0.0;
  man.solver.delta = 1e-3;
  man.solver.max_outer = 20000;
  man.out_dir = out.string();
  man.seed = 11;
  man.epsilon = 1e-5;
  return man;
}

}  // namespace

TEST_CASE("rate fitting") {
  std::vector<long> ks;
  std::vector<double> inv, inv2;
  for (long k = 10; k <= 1000; ++k) {
    ks.push_back(k);
    inv.push_back(1.0 / k);
    inv2.push_back(1.0 / (static_cast<double>(k) * k));
  }
  CHECK(rate_fit(ks, inv) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(rate_fit(ks, inv2) == doctest::Approx(-2.0).epsilon(1e-6));
  std::vector<double> bad = inv;
  bad[5] = 0.0;
  CHECK_THROWS_AS(rate_fit(ks, bad), std::invalid_argument);
}

TEST_CASE("grid saddle oracle") {
  SUBCASE("bilinear scalar") {
    auto L = [](const Vec& x, const Vec& y) { return x[0] * y[0]; };
    const GridSaddle gs = grid_saddle_oracle(L, Vec::Constant(1, -1.0),
                                             Vec::Constant(1, 1.0),
                                             Vec::Constant(1, -1.0),
                                             Vec::Constant(1, 1.0), 201);
    CHECK(std::abs(gs.x_star[0]) <= 0.011);
    CHECK(std::abs(gs.value) <= 0.011);
  }
  SUBCASE("quadratic coupling on the half-line") {
    auto L = [](const Vec& x, const Vec& y) { return x[0] * x[0] * y[0]; };
    const GridSaddle gs = grid_saddle_oracle(L, Vec::Constant(1, -1.0),
                                             Vec::Constant(1, 1.0), Vec::Zero(1),
                                             Vec::Constant(1, 1.0), 201);
    CHECK(std::abs(gs.x_star[0]) <= 0.011);
    CHECK(gs.value == doctest::Approx(0.0).epsilon(1e-3));
  }
  CHECK_THROWS(grid_saddle_oracle([](const Vec&, const Vec&) { return 0.0; },
                                  Vec::Zero(2), Vec::Zero(2), Vec::Zero(2),
                                  Vec::Zero(2), 11));
}

TEST_CASE("finite-difference suite catches an injected fault") {
  const auto kits = verification_zoo(4);
  const auto& kit = kits.front();
  Rng rng(6);
  std::vector<std::pair<Vec, Vec>> pts;
  for (int i = 0; i < 10; ++i)
    pts.emplace_back(kit.sample_x_interior(rng), kit.sample_y_interior(rng));
  CHECK(finite_diff_check(kit.oracle, pts, 1e-6) <= 1e-6);

  SaddleOracle corrupted = kit.oracle;
  corrupted.grad_x = [inner = kit.oracle.grad_x](const Vec& x, const Vec& y) {
    Vec g = inner(x, y);
    g[0] += 1e-3;
    return g;
  };
  CHECK(finite_diff_check(corrupted, pts, 1e-6) > 1e-4);
}

TEST_CASE("prox-inequality suite catches a corrupted prox") {
  const auto kits = verification_zoo(4);
  for (const auto& kit : kits) {
    const ProxSuiteReport rep = prox_inequality_suite(kit.oracle, kit.prox_spec,
                                                      100, 17);
    INFO(kit.name);
    CHECK(rep.pass);
    CHECK(rep.samples == 200);
  }
  auto kit = kits.front();
  SaddleOracle broken = kit.oracle;
  broken.prox_f = [](const Vec& xb, const Vec&, double) { return xb; };
  const ProxSuiteReport rep = prox_inequality_suite(broken, kit.prox_spec, 100, 17);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("verification suites all pass") {
  std::ostringstream sink;
  CHECK(run_verification(2026, sink) == 0);
}

TEST_CASE("qcqp manifest end to end") {
  const fs::path out = fs::temp_directory_path() / "apd_harness_qcqp";
  fs::remove_all(out);
  RunManifest man = qcqp_manifest(out);
  CHECK(cli_run(man) == 0);

  const std::string csv = slurp(out / "rep000.csv");
  CHECK(csv.rfind("k,elapsed_s,tau,sigma,theta,inner_steps,ek,gap,subopt,infeas,"
                  "grad_x_evals,grad_y_evals\n", 0) == 0);
  // iteration column is strictly increasing from zero; the inner_steps
  // column accounts for every prox trial the solver made
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  long expect = 0, inner_sum = 0;
  while (std::getline(lines, line)) {
    CHECK(std::stol(line.substr(0, line.find(','))) == expect);
    std::stringstream ss(line);
    std::string cell;
    for (int j = 0; j <= 5 && std::getline(ss, cell, ','); ++j)
      if (j == 5) inner_sum += std::stol(cell);
    ++expect;
  }
  CHECK(expect >= 1);
  const std::string summary = slurp(out / "summary.json");
  CHECK(summary.find("\"all_converged\": true") != std::string::npos);
  const auto pf = summary.find("\"prox_f\": ");
  REQUIRE(pf != std::string::npos);
  CHECK(std::stol(summary.substr(pf + 10)) == inner_sum);
}

TEST_CASE("replications are byte-identical across parallelism degrees") {
  const fs::path serial = fs::temp_directory_path() / "apd_harness_serial";
  const fs::path parallel = fs::temp_directory_path() / "apd_harness_parallel";
  fs::remove_all(serial);
  fs::remove_all(parallel);
  RunManifest man = qcqp_manifest(serial);
  man.problem.qcqp = {8, 2, true};
  man.solver.tau0 = 1e-2;
  man.solver.max_outer = 40000;
  man.replications = 4;
  man.parallelism = 1;
  CHECK(cli_run(man) == 0);
  man.out_dir = parallel.string();
  man.parallelism = 4;
  CHECK(cli_run(man) == 0);
  for (int r = 0; r < 4; ++r) {
    char name[32];
    std::snprintf(name, sizeof(name), "rep%03d.csv", r);
    CHECK(slurp(serial / name) == slurp(parallel / name));
  }
  // summaries agree except for the echoed parallelism degree itself
  std::string s = slurp(serial / "summary.json");
  std::string q = slurp(parallel / "summary.json");
  const auto pos = q.find("\"parallel\": 4");
  REQUIRE(pos != std::string::npos);
  q.replace(pos, 13, "\"parallel\": 1");
  CHECK(s == q);
}

TEST_CASE("game manifest emits the sup-gap metric and empty gap cells") {
  const fs::path out = fs::temp_directory_path() / "apd_harness_game";
  fs::remove_all(out);
  RunManifest man;
  man.problem.kind = ProblemSpec::Kind::game;
  man.solver.algorithm = Algorithm::apd;
  man.solver.max_outer = 3000;
  man.ref_policy = RefPolicy::none;
  man.out_dir = out.string();
  man.seed = 5;
  man.epsilon = 0.0;  // run the full budget
  man.solver.tol = 0.0;
  CHECK(cli_run(man) == 0);
  const std::string csv = slurp(out / "rep000.csv");
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  // columns: k,elapsed,tau,sigma,theta,inner,ek,gap,subopt,...
  std::vector<std::string> cells;
  std::stringstream ss(first);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  CHECK(cells[6].empty());   // no backtracking test value for plain APD
  CHECK(cells[7].empty());   // no reference gap without a reference
  CHECK(!cells[8].empty());  // sup-gap lands in the subopt column

  const double slope = rates_from_csv((out / "rep000.csv").string(), "subopt",
                                      100, 3000);
  CHECK(slope <= -0.9);
}

TEST_CASE("manifest validation") {
  RunManifest man;
  man.out_dir.clear();
  CHECK_THROWS(man.validate());
  man.out_dir = "x";
  man.replications = 0;
  CHECK_THROWS(man.validate());
  man.replications = 1;
  man.solver.c_alpha = 0.9;
  man.solver.c_beta = 0.3;
  CHECK_THROWS_WITH_AS(man.validate(), doctest::Contains("c_alpha + c_beta"),
                       std::invalid_argument);
}
