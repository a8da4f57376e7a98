#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hs2/harness.hpp"

using namespace hs2;

namespace {

ExperimentConfig small_hsbm(Algorithm a) {
  ExperimentConfig c;
  c.algorithm = a;
  c.source.kind = InstanceSource::Kind::kHsbm;
  c.source.hsbm = HsbmParams{24, 2, 3, 0.8, 0.2, 0};
  c.budget = BudgetSpec{BudgetMode::kExplicit, 24};
  c.trials = 6;
  c.master_seed = 99;
  return c;
}

std::string table(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_results(out, rows);
  return out.str();
}

}  // namespace

TEST_SUITE("cli-harness") {
  TEST_CASE("algorithm and budget parsing") {
    CHECK(parse_algorithm("ce-s2-pair") == Algorithm::kCePair);
    CHECK(to_string(Algorithm::kPairNoisy) == "hs2-pair-noisy");
    CHECK_THROWS_AS(parse_algorithm("s2"), Error);
    CHECK(parse_budget("17").value == 17);
    CHECK(parse_budget("auto:q_star_pair").mode == BudgetMode::kQStarPair);
    CHECK_THROWS_AS(parse_budget("0"), Error);
    CHECK_THROWS_AS(parse_budget("-3"), Error);
    CHECK_THROWS_AS(parse_budget("12x"), Error);
    CHECK_THROWS_AS(parse_budget("auto:other"), Error);
  }

  TEST_CASE("configuration conflicts") {
    ExperimentConfig c = small_hsbm(Algorithm::kPoint);
    c.p = 0.1;
    CHECK_THROWS_AS(validate(c), Error);
    c = small_hsbm(Algorithm::kPairNoisy);
    c.budget.mode = BudgetMode::kNoisy;
    CHECK_THROWS_AS(validate(c), Error);  // noisy budget without p
    c.p = 0.1;
    CHECK_NOTHROW(validate(c));
    c = small_hsbm(Algorithm::kPair);
    c.budget.mode = BudgetMode::kNoisy;
    CHECK_THROWS_AS(validate(c), Error);
    c = small_hsbm(Algorithm::kPoint);
    c.trials = 0;
    CHECK_THROWS_AS(validate(c), Error);
  }

  TEST_CASE("budget of n always succeeds") {
    for (Algorithm a : {Algorithm::kPoint, Algorithm::kCePoint}) {
      const auto rows = run_experiment(small_hsbm(a));
      REQUIRE(rows.size() == 6);
      for (const auto& r : rows) {
        CHECK(r.success);
        CHECK(r.queries_used <= r.budget);
        CHECK(r.label_accuracy == doctest::Approx(1.0));
      }
    }
  }

  TEST_CASE("rows never exceed the budget") {
    ExperimentConfig c = small_hsbm(Algorithm::kPair);
    c.budget.value = 7;
    for (const auto& r : run_experiment(c)) CHECK(r.queries_used <= 7);
  }

  TEST_CASE("results are identical across worker counts") {
    for (Algorithm a : {Algorithm::kPoint, Algorithm::kPair, Algorithm::kCePair}) {
      ExperimentConfig c = small_hsbm(a);
      c.workers = 1;
      const std::string one = table(run_experiment(c));
      c.workers = 4;
      CHECK(table(run_experiment(c)) == one);
    }
    ExperimentConfig noisy = small_hsbm(Algorithm::kPairNoisy);
    noisy.p = 0.1;
    noisy.seed_sample = 12;
    noisy.budget.value = 5000;
    const std::string one = table(run_experiment(noisy));
    noisy.workers = 3;
    CHECK(table(run_experiment(noisy)) == one);
  }

  TEST_CASE("solved seed sample larger than n is an error") {
    ExperimentConfig c = small_hsbm(Algorithm::kPairNoisy);
    c.p = 0.1;
    c.trials = 1;
    CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("M="), Error);
  }

  TEST_CASE("per-trial seeds and instances") {
    ExperimentConfig c = small_hsbm(Algorithm::kPoint);
    const auto rows = run_experiment(c);
    for (const auto& r : rows) CHECK(r.seed == (99u ^ r.trial));
    c.fix_instance = true;
    const auto fixed = run_experiment(c);
    for (const auto& r : fixed) CHECK(r.params.c_size == fixed.front().params.c_size);
  }

  TEST_CASE("auto budgets use the instance parameters") {
    ExperimentConfig c = small_hsbm(Algorithm::kPoint);
    c.budget.mode = BudgetMode::kQStar;
    c.trials = 2;
    for (const auto& r : run_experiment(c)) {
      REQUIRE(r.kappa_computed);
      const auto in = bound_inputs(r.params, c.delta);
      CHECK(r.budget == static_cast<std::uint64_t>(std::ceil(q_star(in))));
    }
    c.algorithm = Algorithm::kPair;
    c.budget.mode = BudgetMode::kQStarPair;
    for (const auto& r : run_experiment(c)) {
      CHECK(r.budget == static_cast<std::uint64_t>(std::ceil(q_star_pair(bound_inputs(r.params, c.delta)))));
    }
  }

  TEST_CASE("clique-expanded runs report the expanded cut") {
    ExperimentConfig c = small_hsbm(Algorithm::kCePoint);
    c.trials = 1;
    const auto ce = run_experiment(c).front();
    c.algorithm = Algorithm::kPoint;
    const auto plain = run_experiment(c).front();
    CHECK(ce.params.boundary_size == plain.params.boundary_size);
    CHECK(ce.params.c_size != plain.params.c_size);
  }

  TEST_CASE("table format") {
    ExperimentConfig c = small_hsbm(Algorithm::kPoint);
    c.trials = 2;
    c.full_analysis = false;
    const std::string t = table(run_experiment(c));
    std::istringstream in(t);
    std::string version, header, row;
    std::getline(in, version);
    std::getline(in, header);
    std::getline(in, row);
    CHECK(version == "# hs2-results v1");
    CHECK(header == results_header());
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    // Without --timing the runtime column stays blank; kappa was skipped.
    CHECK(row.find(",,") != std::string::npos);
  }

  TEST_CASE("summary statistics") {
    std::vector<ResultRow> rows(3);
    rows[0].queries_until_recovery = 4;
    rows[0].success = true;
    rows[1].queries_until_recovery = 8;
    rows[1].success = true;
    const Summary s = summarize(rows);
    CHECK(s.trials == 3);
    CHECK(s.recovered == 2);
    CHECK(s.mean_recovery == doctest::Approx(6.0));
    CHECK(s.std_recovery == doctest::Approx(std::sqrt(8.0)));
    CHECK(s.success_rate == doctest::Approx(2.0 / 3.0));
    CHECK(format_summary(s).find("success_rate=0.6667") != std::string::npos);
  }

  TEST_CASE("trace export and file instances") {
    const auto dir = std::filesystem::temp_directory_path() / "hs2_harness_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto inst = hsbm(HsbmParams{12, 2, 3, 0.9, 0.2, 4});
    write_hypergraph_file((dir / "g.hgr").string(), inst.graph);
    save_labels((dir / "g.labels").string(), inst.labels);

    ExperimentConfig c;
    c.source.kind = InstanceSource::Kind::kFile;
    c.source.graph_path = (dir / "g.hgr").string();
    c.source.labels_path = (dir / "g.labels").string();
    c.budget = BudgetSpec{BudgetMode::kExplicit, 12};
    c.trials = 2;
    c.trace_dir = (dir / "traces").string();
    const auto rows = run_experiment(c);
    CHECK(rows.front().success);
    std::ifstream trace(dir / "traces" / "trial_0.trace");
    std::string first;
    std::getline(trace, first);
    CHECK(first.rfind("0 point ", 0) == 0);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("analysis report") {
    Hypergraph g(4, {{0, 1, 2, 3}});
    const std::string text = format_analysis(compare_with_ce(g, LabelFunction({0, 1, 2, 3})));
    CHECK(text.find("c_size=1\n") != std::string::npos);
    CHECK(text.find("ce_c_size=6\n") != std::string::npos);
    CHECK(text.find("boundary_size=4\n") != std::string::npos);
    CHECK(text.find("ce_boundary_size=4\n") != std::string::npos);
    CHECK(text.find("kappa_equal=1") != std::string::npos);
  }
}
