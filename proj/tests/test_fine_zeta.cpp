#include <doctest.h>

#include "mfzeta/fine_zeta.hpp"
#include "mfzeta/legendre_spectrum.hpp"
#include "test_support.hpp"

using namespace mfzeta;
using namespace mfzeta::testing;

TEST_CASE("target sets") {
  CHECK(contains(Everything{}, vec({1e300})));
  CHECK(contains(Ball{vec({1.0}), 0.1}, vec({1.1})));
  CHECK_FALSE(contains(Ball{vec({1.0}), 0.1}, vec({1.1001})));
  CHECK(contains(Ball{vec({0.0, 0.0}), 1.0}, vec({0.6, 0.8})));
  CHECK_FALSE(contains(Ball{vec({0.0}), 1.0}, vec({0.0, 0.0})));
  CHECK(contains(Point{vec({0.5})}, vec({0.5 + 1e-15})));
  CHECK_FALSE(contains(Point{vec({0.5})}, vec({0.5001})));
  CHECK(contains(Interval{0.0, 1.0}, vec({0.0})));
  CHECK(contains(Interval{0.0, 1.0}, vec({1.0})));
  CHECK_FALSE(contains(Interval{0.0, 1.0}, vec({1.01})));
  CHECK(contains(Box{vec({0.0, 0.0}), vec({1.0, 2.0})}, vec({0.5, 2.0})));
  CHECK_FALSE(contains(Box{vec({0.0, 0.0}), vec({1.0, 2.0})}, vec({1.5, 0.0})));

  CHECK_ERROR(validate_target(Ball{vec({0.0}), 0.0}), ErrorCode::DomainError);
  CHECK_ERROR(validate_target(Interval{1.0, 0.0}), ErrorCode::DomainError);
  CHECK_ERROR(validate_target(Box{vec({0.0}), vec({1.0, 1.0})}), ErrorCode::DomainError);
  CHECK_NOTHROW(validate_target(Interval{1.0, 1.0}));
}

TEST_CASE("bowen_fine against the exhaustive binomial count") {
  const auto sys = bernoulli_system();
  const Observable m = measure_observable(sys);
  const Eigen::VectorXd lr = sys.log_ratio();
  for (int n : {8, 12, 14}) {
    for (double q : {0.0, 1.0, 2.0}) {
      const double alpha = alpha_of_q(sys, q);
      const auto est = bowen_fine(sys.graph, m, Ball{vec({alpha}), 0.05}, lr, n);
      const double count = bernoulli_ball_count(0.3, n, alpha, 0.05);
      CHECK(static_cast<double>(est.count) == count);
      if (count > 0) {
        CHECK(est.value == doctest::Approx(std::log2(count) / n).epsilon(1e-12));
      } else {
        CHECK(est.value == kNegInf);
      }
    }
  }
  SUBCASE("unconstrained target recovers the Bowen dimension") {
    const auto two = two_vertex_system();
    const auto est = bowen_fine(two.graph, measure_observable(two), Everything{},
                                two.log_ratio(), 12);
    CHECK(est.count == word_count(two.graph, 12));
    // Level-n Bowen root approaches the true one from the level-sum side.
    const double exact = oracle_root_decreasing(
        [](double s) { return std::pow(2.0, -s) + std::pow(6.0, -s) - 1.0; }, 0.0, 1.0);
    CHECK(std::abs(est.value - exact) < 0.1);
  }
  CHECK_ERROR(bowen_fine(sys.graph, m, Ball{vec({1.0}), 0.1}, vec({-1.0, 0.0}), 4),
              ErrorCode::DomainError);
}

TEST_CASE("property: fine majorant and target monotonicity") {
  // On one vertex a Chernoff bound gives the majorant at every level; with
  // several vertices it only holds up to a boundary constant of order log(C)/n.
  std::mt19937 rng(43);
  for (int trial = 0; trial < 8; ++trial) {
    const auto sys = random_system(rng, 1, 3);
    const Observable m = measure_observable(sys);
    const Eigen::VectorXd lr = sys.log_ratio();
    const int n = 10;
    const double alpha = alpha_of_q(sys, 0.5);
    const auto tau = [&](double q) { return tau_measure(sys, q).tau; };

    const std::vector<double> radii = {0.4, 0.2, 0.1};
    const auto rep = shrinking_target_fine(sys.graph, m, vec({alpha}), radii, lr, n);
    REQUIRE(rep.estimates.size() == 3);
    for (std::size_t k = 1; k < 3; ++k) {
      // Nested sets: count and value never grow.
      CHECK(rep.estimates[k].count <= rep.estimates[k - 1].count);
      CHECK(rep.estimates[k].value <= rep.estimates[k - 1].value + 1e-12);
    }
    CHECK(rep.monotone);
    for (std::size_t k = 0; k < 3; ++k) {
      const double sup = legendre_sup(tau, alpha - radii[k], alpha + radii[k]);
      CHECK(rep.estimates[k].value <= sup + 3.0 / n);
    }
    // Everything dominates any constrained target.
    const auto all = bowen_fine(sys.graph, m, Everything{}, lr, n);
    CHECK(all.value >= rep.estimates[0].value);
  }
  const auto sys = bernoulli_system();
  const std::vector<double> bad = {0.1, 0.2};
  CHECK_ERROR(shrinking_target_fine(sys.graph, measure_observable(sys), vec({1.0}), bad,
                                    sys.log_ratio(), 6),
              ErrorCode::DomainError);
}

TEST_CASE("constrained pressure and fine coefficients") {
  const auto sys = symmetric_system();
  const Observable m = measure_observable(sys);
  const Eigen::VectorXd lr = sys.log_ratio();
  CHECK(constrained_pressure(sys.graph, m, Everything{}, vec({0.0, 0.0}), 7) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(constrained_pressure(sys.graph, m, Interval{2.0, 3.0}, vec({0.0, 0.0}), 7) == kNegInf);

  // c_n = (1/n) 2^n 2^{-t n}: radius 2^{t-1}.
  const double t = 0.5;
  const auto coeffs = fine_zeta_coefficients(sys.graph, m, Everything{}, t, lr, 16);
  REQUIRE(coeffs.size() == 16);
  CHECK(coeffs[9] == doctest::Approx(10.0 * (1.0 - t) * std::log(2.0) - std::log(10.0)));
  const double radius = radius_estimate(coeffs);
  double growth = kNegInf;
  for (int n = 13; n <= 16; ++n) growth = std::max(growth, (1.0 - t) * std::log(2.0) - std::log(n) / n);
  CHECK(radius == doctest::Approx(std::exp(-growth)).epsilon(1e-12));

  const auto empty = fine_zeta_coefficients(sys.graph, m, Interval{2.0, 3.0}, t, lr, 8);
  CHECK(radius_estimate(empty) == kPosInf);
  CHECK_ERROR(radius_estimate(std::span(coeffs).first(3)), ErrorCode::InsufficientData);
  std::vector<double> sparse(8, kNegInf);
  sparse[7] = 0.0;
  CHECK_ERROR(radius_estimate(sparse), ErrorCode::InsufficientData);
}

TEST_CASE("fixed targets and attainable ranges") {
  const auto sys = bernoulli_system();
  const Observable m = measure_observable(sys);
  const Eigen::VectorXd lr = sys.log_ratio();
  const Box range = attainable_range(m);
  CHECK(range.lo(0) == doctest::Approx(-std::log2(0.7)));
  CHECK(range.hi(0) == doctest::Approx(-std::log2(0.3)));

  const double a1 = alpha_of_q(sys, 1.0);
  const auto est = fixed_target_fine(sys.graph, m, Interval{a1 - 0.05, a1 + 0.05}, lr, 14);
  CHECK_FALSE(est.degenerate);
  CHECK(est.value == doctest::Approx(std::log2(bernoulli_ball_count(0.3, 14, a1, 0.05)) / 14)
                         .epsilon(1e-12));

  const auto outside = fixed_target_fine(sys.graph, m, Interval{3.0, 4.0}, lr, 6);
  CHECK(outside.degenerate);
  CHECK(outside.value == kNegInf);
  const auto point = fixed_target_fine(sys.graph, m, Interval{1.0, 1.0}, lr, 6);
  CHECK(point.degenerate);
  CHECK_ERROR(fixed_target_fine(sys.graph, m, Ball{vec({1.0}), 0.1}, lr, 6),
              ErrorCode::DomainError);

  SUBCASE("composed ranges") {
    Eigen::MatrixXd f(2, 2);
    f << 1.0, 2.0, 3.0, 4.0;
    const Box ratio = attainable_range(Composed{f, CoordinateRatio{0, 1}});
    CHECK(ratio.lo(0) == doctest::Approx(0.25));
    CHECK(ratio.hi(0) == doctest::Approx(1.5));
    const Box holder = attainable_range(Composed{f, HolderProduct{vec({1.0}), vec({1.0})}});
    CHECK(holder.lo(0) == doctest::Approx(0.25));
    CHECK(holder.hi(0) == doctest::Approx(1.5));
    const Box lin = attainable_range(LinearIntegral{f});
    CHECK(lin.lo == vec({1.0, 2.0}));
    CHECK(lin.hi == vec({3.0, 4.0}));
    // Every enumerated value lies in the box.
    const Observable c = Composed{f, CoordinateRatio{0, 1}};
    for_each_observation(sys.graph, c, lr, 6,
                         [&](std::span<const EdgeId>, const Eigen::VectorXd& v, double) {
                           CHECK(v(0) >= ratio.lo(0));
                           CHECK(v(0) <= ratio.hi(0));
                         });
  }
}
