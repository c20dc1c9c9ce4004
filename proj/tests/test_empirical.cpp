#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mvc/step_cdf.hpp"
#include "oracles.hpp"

using namespace mvc;

namespace {

WeightArray plain(Eigen::VectorXd w) {
  WeightArray a;
  a.w = std::move(w);
  return a;
}

std::vector<double> vals(const StepCdf& f) { return f.values; }

}  // namespace

TEST_CASE("sort_sample groups ties") {
  Eigen::VectorXd x(4);
  x << 3.0, 1.0, 2.0, 1.0;
  const SortedSample s = sort_sample(x);
  CHECK(s.distinct == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.group_offset == std::vector<int>{0, 2, 3, 4});
  CHECK(s.distinct_count() == 3);
  // The two smallest positions hold the tied observations, in either order.
  CHECK(x(s.order[0]) == 1.0);
  CHECK(x(s.order[1]) == 1.0);
  CHECK(x(s.order[2]) == 2.0);
  CHECK(x(s.order[3]) == 3.0);
}

TEST_CASE("weighted ecdf follows the strict-inequality convention") {
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  Eigen::VectorXd w(3);
  w << 2.0, 2.0, -1.0;
  const StepCdf f = weighted_ecdf(x, plain(w));

  CHECK(f.knots == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(f.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(f.values[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(f.values[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.total_mass() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(f(0.5) == 0.0);
  CHECK(f(1.0) == 0.0);  // observations at x do not count toward F(x)
  CHECK(f(1.5) == doctest::Approx(2.0 / 3.0));
  CHECK(f(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(f(2.5) == doctest::Approx(4.0 / 3.0));
  CHECK(f(3.0) == doctest::Approx(4.0 / 3.0));
  CHECK(f(99.0) == doctest::Approx(1.0));

  CHECK(f.jump(0) == doctest::Approx(2.0 / 3.0));
  CHECK(f.jump(1) == doctest::Approx(2.0 / 3.0));
  CHECK(f.jump(2) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("weighted ecdf shares the jump among tied observations") {
  Eigen::VectorXd x(4);
  x << 2.0, 1.0, 2.0, 3.0;
  Eigen::VectorXd w(4);
  w << 1.0, 1.0, 1.0, 1.0;
  const StepCdf f = weighted_ecdf(x, plain(w));
  CHECK(f.values[0] == doctest::Approx(0.25));
  CHECK(f.values[1] == doctest::Approx(0.75));
  CHECK(f.values[2] == doctest::Approx(1.0));
}

TEST_CASE("weighted ecdf rejects mismatched lengths") {
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(weighted_ecdf(x, plain(Eigen::VectorXd::Ones(2))), DimensionMismatchError);
}

TEST_CASE("improvements match hand values on a non-monotone ecdf") {
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  Eigen::VectorXd w(3);
  w << 2.0, 2.0, -1.0;
  const StepCdf f = weighted_ecdf(x, plain(w));

  const StepCdf up = improve_upward(f);
  const StepCdf down = improve_downward(f);
  const StepCdf two = improve_two_sided(f);

  const std::vector<double> expected{2.0 / 3.0, 1.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(up.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(down.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(two.values[i] == doctest::Approx(expected[i]).epsilon(1e-14));
  }
  CHECK(up.kind == WeightKind::improved_upper);
  CHECK(down.kind == WeightKind::improved_lower);
  CHECK(two.kind == WeightKind::improved_central);

  const WeightArray b = improved_weights(x, two);
  CHECK(b.w(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.w(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.w(2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_FALSE(b.mass_deficit);
}

TEST_CASE("improvements agree with the definitional scans") {
  std::mt19937_64 eng(42);
  std::normal_distribution<double> normal(1.0, 1.5);
  std::uniform_int_distribution<int> lattice(-3, 3);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 12;
    Eigen::VectorXd x(n), w(n);
    for (int j = 0; j < n; ++j) {
      x(j) = 0.5 * lattice(eng);  // coarse grid so ties occur
      w(j) = normal(eng);
    }
    const double total = w.sum();
    if (std::abs(total) < 0.2 * n) continue;
    w *= n / total;

    const StepCdf f = weighted_ecdf(x, plain(w));
    const std::vector<double> raw = oracle::raw_values(x, w);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(f.values[i] == doctest::Approx(raw[i]).epsilon(1e-12));
    }

    const std::vector<double> up = oracle::improve_up(raw);
    const std::vector<double> down = oracle::improve_down(raw);
    const std::vector<double> two = oracle::improve_two(raw);
    const StepCdf fu = improve_upward(f);
    const StepCdf fd = improve_downward(f);
    const StepCdf ft = improve_two_sided(f);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(std::abs(fu.values[i] - up[i]) < 1e-12);
      CHECK(std::abs(fd.values[i] - down[i]) < 1e-12);
      CHECK(std::abs(ft.values[i] - two[i]) < 1e-12);
    }

    const WeightArray b = improved_weights(x, ft);
    const Eigen::VectorXd ob = oracle::jump_weights(x, f.knots, two);
    CHECK((b.w - ob).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("improvements are idempotent") {
  Eigen::VectorXd x(5);
  x << 1.0, 2.0, 3.0, 4.0, 5.0;
  Eigen::VectorXd w(5);
  w << 3.0, -1.0, -2.0, 4.0, 1.0;
  const StepCdf f = weighted_ecdf(x, plain(w));
  const StepCdf up = improve_upward(f);
  const StepCdf down = improve_downward(f);
  const StepCdf two = improve_two_sided(f);
  CHECK(vals(improve_upward(up)) == vals(up));
  CHECK(vals(improve_downward(down)) == vals(down));
  CHECK(vals(improve_two_sided(two)) == vals(two));
}

TEST_CASE("two-sided improvement flags removed mass") {
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  Eigen::VectorXd w(2);
  w << 4.0, -4.0;  // F overshoots to 2 then falls back to 0
  const StepCdf f = weighted_ecdf(x, plain(w));
  const StepCdf two = improve_two_sided(f);
  CHECK(two.values[0] == doctest::Approx(0.5));
  CHECK(two.values[1] == doctest::Approx(0.5));

  const WeightArray b = improved_weights(x, two);
  CHECK(b.mass_deficit);
  CHECK(b.w(0) == doctest::Approx(1.0));
  CHECK(b.w(1) == doctest::Approx(0.0));
  CHECK(b.mass() == doctest::Approx(0.5));
}

TEST_CASE("improved weights reconstruct the monotonized cdf at every knot") {
  Eigen::VectorXd x(5);
  x << 1.0, 1.0, 2.0, 3.0, 3.0;
  Eigen::VectorXd w(5);
  w << 3.0, -1.0, -2.0, 4.0, 1.0;
  const StepCdf two = improve_two_sided(weighted_ecdf(x, plain(w)));
  const WeightArray b = improved_weights(x, two);
  const StepCdf rebuilt = weighted_ecdf(x, b);
  REQUIRE(rebuilt.values.size() == two.values.size());
  for (std::size_t i = 0; i < two.values.size(); ++i) {
    CHECK(rebuilt.values[i] == doctest::Approx(two.values[i]).epsilon(1e-13));
  }
  // Tied observations share their knot's jump equally.
  CHECK(b.w(0) == doctest::Approx(b.w(1)));
  CHECK(b.w(3) == doctest::Approx(b.w(4)));
}

TEST_CASE("improved_weights rejects a cdf from a different sample") {
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  Eigen::VectorXd y(4);
  y << 1.0, 2.0, 3.0, 4.0;
  const StepCdf f = weighted_ecdf(y, plain(Eigen::VectorXd::Ones(4)));
  CHECK_THROWS_AS(improved_weights(x, f), DimensionMismatchError);
}

TEST_CASE("weighted_moment averages columns against weights") {
  Eigen::MatrixXd g(2, 3);
  g << 1.0, 2.0, 3.0, 1.0, 4.0, 9.0;
  Eigen::VectorXd w(3);
  w << 3.0, 0.0, 0.0;
  const Eigen::VectorXd m = weighted_moment(g, plain(w));
  CHECK(m(0) == doctest::Approx(1.0));
  CHECK(m(1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(weighted_moment(g, plain(Eigen::VectorXd::Ones(2))), DimensionMismatchError);
}

TEST_CASE("improved_weight_set matches the per-array chain") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const int n = 25;
  Eigen::MatrixXd p(n, 2);
  for (int j = 0; j < n; ++j) {
    const double a = u(eng), b = u(eng);
    p(j, 0) = a / (a + b);
    p(j, 1) = b / (a + b);
  }
  const ConcentrationMatrix c = ConcentrationMatrix::checked(p);
  const GramMatrix g = gram_matrix(c);
  std::vector<WeightArray> a{minimax_weights(c, g, 0), minimax_weights(c, g, 1)};

  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) x(j) = normal(eng);

  const std::vector<WeightArray> set = improved_weight_set(x, a);
  REQUIRE(set.size() == 2);
  for (int m = 0; m < 2; ++m) {
    const WeightArray manual = improved_weights(x, improve_two_sided(weighted_ecdf(x, a[m])));
    CHECK((set[m].w - manual.w).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(set[m].component == m);
    CHECK(set[m].kind == WeightKind::improved_central);
  }
}
