#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "bnsl/error.hpp"
#include "bnsl/inference.hpp"
#include "support/synthetic.hpp"

using namespace bnsl;
using testsupport::copy_chain_table;
using testsupport::make_table;
using testsupport::random_table;

TEST_CASE("fit_cpts applies the smoothing formula") {
  SUBCASE("balanced counts stay balanced") {
    const DiscreteTable t = make_table({"X"}, {2}, {{0}, {0}, {1}, {1}});
    const CptSet cpts = fit_cpts(t, Dag::empty(1), 1.0);
    CHECK(cpts.nodes[0].p(0, 0) == doctest::Approx(0.5));
    CHECK(cpts.nodes[0].p(0, 1) == doctest::Approx(0.5));
  }

  SUBCASE("counts [3,1] with alpha 1 give [4/6, 2/6]") {
    const DiscreteTable t = make_table({"X"}, {2}, {{0}, {0}, {0}, {1}});
    const CptSet cpts = fit_cpts(t, Dag::empty(1), 1.0);
    CHECK(cpts.nodes[0].p(0, 0) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
    CHECK(cpts.nodes[0].p(0, 1) == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
  }

  SUBCASE("unsmoothed unobserved configurations fall back to uniform") {
    // parent state 1 never occurs
    const DiscreteTable t = make_table({"P", "X"}, {2, 2}, {{0, 0}, {0, 1}});
    Dag dag = Dag::empty(2);
    dag.parents[1] = ParentSet::of({0});
    const CptSet cpts = fit_cpts(t, dag, 0.0);
    CHECK(cpts.nodes[1].p(1, 0) == 0.5);
    CHECK(cpts.nodes[1].p(1, 1) == 0.5);
  }

  SUBCASE("rows are distributions; alpha > 0 keeps them strictly positive") {
    std::mt19937_64 rng(15);
    const DiscreteTable t = random_table(rng, 5, 60);
    const Dag dag = testsupport::random_dag(rng, 5, 2);
    const CptSet cpts = fit_cpts(t, dag, 1.0);
    for (const auto& node : cpts.nodes)
      for (std::int64_t j = 0; j < node.config_count; ++j) {
        double row = 0.0;
        for (int k = 0; k < node.cardinality; ++k) {
          CHECK(node.p(j, k) > 0.0);
          row += node.p(j, k);
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-9));
      }
  }

  SUBCASE("negative alpha is refused") {
    const DiscreteTable t = make_table({"X"}, {2}, {{0}});
    CHECK_THROWS_AS(fit_cpts(t, Dag::empty(1), -0.5), ConfigError);
  }
}

TEST_CASE("query_posterior") {
  SUBCASE("single-node network returns its marginal") {
    std::vector<std::vector<int>> rows(10, std::vector<int>{1});
    for (int i = 0; i < 3; ++i) rows[i][0] = 0;
    const DiscreteTable t = make_table({"X"}, {2}, rows);
    const Dag dag = Dag::empty(1);
    const CptSet cpts = fit_cpts(t, dag, 0.0);
    const auto post = query_posterior(cpts, dag, Query{0, {}});
    CHECK(post[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(post[1] == doctest::Approx(0.7).epsilon(1e-12));
  }

  SUBCASE("deterministic copy chain is certain given its parent") {
    const DiscreteTable t = testsupport::copy_pair_table(100);
    Dag dag = Dag::empty(2);
    dag.parents[1] = ParentSet::of({0});
    const CptSet cpts = fit_cpts(t, dag, 0.0);
    const auto post = query_posterior(cpts, dag, Query{1, {{0, 1}}});
    CHECK(post[1] == doctest::Approx(1.0));
  }

  SUBCASE("v-structure posterior matches the explicit joint table") {
    const DiscreteTable t = make_table(
        {"A", "B", "C"}, {2, 2, 2},
        {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {1, 1, 0}, {0, 0, 1}});
    Dag dag = Dag::empty(3);
    dag.parents[2] = ParentSet::of({0, 1});
    const CptSet cpts = fit_cpts(t, dag, 1.0);

    // oracle: brute-force the 8-entry joint from the fitted factors
    const auto joint = [&](int a, int b, int c) {
      return cpts.nodes[0].p(0, a) * cpts.nodes[1].p(0, b) *
             cpts.nodes[2].p(a * 2 + b, c);
    };
    for (int c = 0; c < 2; ++c) {
      double num[2] = {0.0, 0.0};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) num[a] += joint(a, b, c);
      const double z = num[0] + num[1];
      const auto post = query_posterior(cpts, dag, Query{0, {{2, c}}});
      CHECK(post[0] == doctest::Approx(num[0] / z).epsilon(1e-12));
      CHECK(post[1] == doctest::Approx(num[1] / z).epsilon(1e-12));
    }
  }

  SUBCASE("full evidence on the parent set reduces to a CPT row lookup") {
    std::mt19937_64 rng(21);
    const DiscreteTable t = random_table(rng, 4, 80);
    Dag dag = Dag::empty(4);
    dag.parents[3] = ParentSet::of({0, 2});
    const CptSet cpts = fit_cpts(t, dag, 1.0);
    const Query q{3, {{0, 1}, {1, 0}, {2, 1}}};
    const auto post = query_posterior(cpts, dag, q);
    const std::int64_t config =
        1 * t.cardinalities[2] + 1; // parents {0,2} -> states (1,1)
    for (int k = 0; k < t.cardinalities[3]; ++k)
      CHECK(post[k] == doctest::Approx(cpts.nodes[3].p(config, k)).epsilon(1e-12));
  }

  SUBCASE("posteriors are normalized distributions") {
    std::mt19937_64 rng(22);
    const DiscreteTable t = random_table(rng, 5, 70);
    const Dag dag = testsupport::random_dag(rng, 5, 2);
    const CptSet cpts = fit_cpts(t, dag, 1.0);
    const auto post = query_posterior(cpts, dag, Query{2, {{0, 1}, {4, 0}}});
    double z = 0.0;
    for (double p : post) {
      CHECK(p >= 0.0);
      z += p;
    }
    CHECK(z == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("impossible evidence is a distinguished error") {
    // X1 is constantly 0 in training; with alpha = 0 the model assigns
    // probability zero to X1 = 1, so conditioning on it cannot normalize.
    const DiscreteTable t =
        make_table({"X1", "X2"}, {2, 2}, {{0, 0}, {0, 0}, {0, 1}});
    Dag dag = Dag::empty(2);
    dag.parents[1] = ParentSet::of({0});
    const CptSet cpts = fit_cpts(t, dag, 0.0);
    const auto post = query_posterior(cpts, dag, Query{1, {{0, 0}}});
    CHECK(post[1] == doctest::Approx(1.0 / 3.0)); // consistent query works
    CHECK_THROWS_AS(query_posterior(cpts, dag, Query{1, {{0, 1}}}), DataError);
  }

  SUBCASE("guards") {
    DiscreteTable wide;
    for (int i = 0; i < 26; ++i) {
      wide.names.push_back("v" + std::to_string(i));
      wide.cardinalities.push_back(2);
    }
    for (int r = 0; r < 2; ++r)
      for (int i = 0; i < 26; ++i) wide.data.push_back(r % 2);
    const Dag dag = Dag::empty(26);
    const CptSet cpts = fit_cpts(wide, dag, 1.0);
    CHECK_THROWS_AS(query_posterior(cpts, dag, Query{0, {}}), SolverError);

    const DiscreteTable t = testsupport::copy_pair_table(10);
    const Dag small = Dag::empty(2);
    const CptSet c2 = fit_cpts(t, small, 1.0);
    CHECK_THROWS_AS(query_posterior(c2, small, Query{0, {{0, 1}}}), DataError);
    CHECK_THROWS_AS(query_posterior(c2, small, Query{5, {}}), DataError);
    CHECK_THROWS_AS(query_posterior(c2, small, Query{0, {{1, 9}}}), DataError);
  }
}

TEST_CASE("evaluation protocol") {
  SUBCASE("a perfect deterministic predictor has zero error") {
    const DiscreteTable train = testsupport::copy_pair_table(200);
    const DiscreteTable test = testsupport::copy_pair_table(50);
    Dag dag = Dag::empty(2);
    dag.parents[1] = ParentSet::of({0});
    const CptSet cpts = fit_cpts(train, dag, 0.0);
    CHECK(evaluate_mse(cpts, dag, test, 1, {0}) == 0.0);
    CHECK(evaluate_accuracy(cpts, dag, test, 1, {0}) == 1.0);
  }

  SUBCASE("a constant 0.5 prediction scores MSE 0.25") {
    const DiscreteTable train = make_table({"X"}, {2}, {{0}, {1}});
    const DiscreteTable test1 = make_table(
        {"X"}, {2}, {{0}, {1}, {1}, {0}});
    const Dag dag = Dag::empty(1);
    const CptSet cpts = fit_cpts(train, dag, 0.0);
    CHECK(evaluate_mse(cpts, dag, test1, 0, {}) ==
          doctest::Approx(0.25).epsilon(1e-12));
    // p1 = 0.5 is not > 0.5, so the constant predictor always answers 0
    CHECK(evaluate_accuracy(cpts, dag, test1, 0, {}) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("evaluate_task equals a direct row-by-row query loop") {
    std::mt19937_64 rng(33);
    const DiscreteTable train = random_table(rng, 4, 120, 2, 2);
    const DiscreteTable test = random_table(rng, 4, 30, 2, 2);
    const Dag dag = testsupport::random_dag(rng, 4, 2);
    const CptSet cpts = fit_cpts(train, dag, 1.0);
    const std::vector<int> evidence{0, 2};

    const TaskResult task = evaluate_task(cpts, dag, test, 3, evidence);
    double sq = 0.0;
    std::int64_t correct = 0;
    for (std::int64_t row = 0; row < test.row_count(); ++row) {
      Query q;
      q.target = 3;
      for (int v : evidence) q.evidence[v] = test.at(row, v);
      const double p1 = query_posterior(cpts, dag, q)[1];
      const int y = test.at(row, 3);
      sq += (p1 - y) * (p1 - y);
      if ((p1 > 0.5 ? 1 : 0) == y) ++correct;
    }
    CHECK(task.mse == sq / test.row_count());
    CHECK(task.accuracy ==
          static_cast<double>(correct) / test.row_count());
    CHECK(task.confusion.tp + task.confusion.tn + task.confusion.fp +
              task.confusion.fn ==
          test.row_count());

    CHECK(task.mse >= 0.0);
    CHECK(task.mse <= 1.0);
    CHECK(task.accuracy >= 0.0);
    CHECK(task.accuracy <= 1.0);
  }

  SUBCASE("targets must be binary and present") {
    const DiscreteTable t = make_table({"X", "Y"}, {3, 2}, {{0, 0}, {2, 1}});
    const Dag dag = Dag::empty(2);
    const CptSet cpts = fit_cpts(t, dag, 1.0);
    CHECK_THROWS_AS(evaluate_mse(cpts, dag, t, 0, {}), DataError);  // r=3
    CHECK_THROWS_AS(evaluate_mse(cpts, dag, t, 1, {1}), DataError); // self
    DiscreteTable empty;
    empty.names = t.names;
    empty.cardinalities = t.cardinalities;
    CHECK_THROWS_AS(evaluate_mse(cpts, dag, empty, 1, {}), DataError);
  }
}

TEST_CASE("log_likelihood") {
  SUBCASE("uniform binary node: 4 rows cost 4 ln 0.5") {
    const DiscreteTable t = make_table({"X"}, {2}, {{0}, {1}, {0}, {1}});
    const Dag dag = Dag::empty(1);
    const CptSet cpts = fit_cpts(t, dag, 0.0);
    CHECK(log_likelihood(cpts, dag, t) ==
          doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-12));
  }

  SUBCASE("empty table scores zero") {
    const DiscreteTable t = make_table({"X"}, {2}, {{0}});
    DiscreteTable empty;
    empty.names = t.names;
    empty.cardinalities = t.cardinalities;
    const Dag dag = Dag::empty(1);
    const CptSet cpts = fit_cpts(t, dag, 1.0);
    CHECK(log_likelihood(cpts, dag, empty) == 0.0);
  }

  SUBCASE("the true chain structure dominates the empty structure") {
    const DiscreteTable t = copy_chain_table(1000);
    Dag truth = Dag::empty(3);
    truth.parents[1] = ParentSet::of({0});
    truth.parents[2] = ParentSet::of({1});
    const CptSet fitted = fit_cpts(t, truth, 1.0);
    const CptSet empty_fit = fit_cpts(t, Dag::empty(3), 1.0);
    CHECK(log_likelihood(fitted, truth, t) >
          log_likelihood(empty_fit, Dag::empty(3), t));
  }

  SUBCASE("impossible rows send the total to negative infinity") {
    const DiscreteTable train = testsupport::copy_pair_table(10);
    Dag dag = Dag::empty(2);
    dag.parents[1] = ParentSet::of({0});
    const CptSet cpts = fit_cpts(train, dag, 0.0);
    const DiscreteTable bad = make_table({"X1", "X2"}, {2, 2}, {{0, 1}});
    CHECK(log_likelihood(cpts, dag, bad) ==
          -std::numeric_limits<double>::infinity());
  }
}
