#include <doctest.h>

#include "mfzeta/coarse_zeta.hpp"
#include "mfzeta/pressure.hpp"
#include "test_support.hpp"

using namespace mfzeta;
using namespace mfzeta::testing;

namespace {

double two_vertex_tau_oracle(double q) {
  return oracle_root_decreasing(
      [q](double s) {
        return std::pow(2.0, -q - s) + std::pow(2.0, -q) * std::pow(6.0, -s) - 1.0;
      },
      -40.0, 40.0);
}

}  // namespace

TEST_CASE("a_matrix entries") {
  const auto sys = two_vertex_system();
  const Eigen::MatrixXd a = a_matrix(sys, 2.0, 1.0);
  CHECK(a(0, 0) == doctest::Approx(0.25 * 0.5));
  CHECK(a(0, 1) == doctest::Approx(0.25 / 3.0));
  CHECK(a(1, 0) == doctest::Approx(0.5));
  CHECK(a(1, 1) == 0.0);
  // Extended precision instantiation agrees.
  const auto al = a_matrix<long double>(sys, 2.0L, 1.0L);
  CHECK(static_cast<double>(al(0, 1)) == doctest::Approx(a(0, 1)).epsilon(1e-15));
}

TEST_CASE("tau_measure against closed forms") {
  SUBCASE("symmetric system: tau = 1 - q") {
    const auto sys = symmetric_system();
    for (double q : {-5.0, -1.5, 0.0, 0.3, 1.0, 5.0}) {
      const auto t = tau_measure(sys, q);
      CHECK(std::abs(t.tau - (1.0 - q)) <= 1e-12);
      CHECK(t.method == TauMethod::ClosedFormScalar);
    }
  }
  SUBCASE("Bernoulli") {
    const auto sys = bernoulli_system();
    for (int k = 0; k <= 100; ++k) {
      const double q = -5.0 + 0.1 * k;
      CHECK(std::abs(tau_measure(sys, q).tau - bernoulli_tau(0.3, q)) <= 1e-12);
    }
  }
  SUBCASE("two-vertex system") {
    const auto sys = two_vertex_system();
    for (double q : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      const auto t = tau_measure(sys, q);
      CHECK(t.method == TauMethod::AnalyticRoot);
      CHECK(std::abs(t.tau - two_vertex_tau_oracle(q)) <= 1e-12);
      CHECK(std::abs(t.residual) <= 1e-12);
      CHECK(t.lo <= t.tau);
      CHECK(t.tau <= t.hi);
    }
  }
  CHECK(std::string(to_string(TauMethod::EmpiricalLevelN)) == "empirical-level-n");
}

TEST_CASE("property: tau(1) = 0, tau(0) = Bowen root, tau decreasing and convex") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sys = random_system(rng);
    CHECK(std::abs(tau_measure(sys, 1.0).tau) <= 1e-12);
    CHECK(std::abs(tau_measure(sys, 0.0).tau - bowen_root(sys.graph, sys.log_ratio()).root) <=
          1e-12);
    double prev = tau_measure(sys, -2.0).tau;
    for (double q = -1.5; q <= 2.0; q += 0.5) {
      const double cur = tau_measure(sys, q).tau;
      CHECK(cur < prev);
      const double mid = tau_measure(sys, q - 0.25).tau;
      CHECK(mid <= 0.5 * (prev + cur) + 1e-10);
      prev = cur;
    }
  }
}

TEST_CASE("zeta_closed_form") {
  SUBCASE("single vertex reduces to sigma / (1 - sigma)") {
    const auto sys = bernoulli_system();
    const double q = 2.0;
    const double s = bernoulli_tau(0.3, q) + 0.5;
    const double sigma = std::pow(0.3, q) * std::pow(0.5, s) + std::pow(0.7, q) * std::pow(0.5, s);
    CHECK(zeta_closed_form(sys, q, s) == doctest::Approx(sigma / (1.0 - sigma)).epsilon(1e-13));
  }
  SUBCASE("domain") {
    const auto sys = two_vertex_system();
    const double tau = tau_measure(sys, 0.0).tau;
    CHECK_ERROR(zeta_closed_form(sys, 0.0, tau - 0.1), ErrorCode::DomainError);
    CHECK_ERROR(zeta_closed_form(sys, 0.0, tau), ErrorCode::DomainError);
    CHECK(zeta_closed_form(sys, 0.0, tau + 1e-3) > 100.0);
  }
}

TEST_CASE("property: closed form equals the truncated series") {
  std::mt19937 rng(31);
  std::vector<GDSystem> systems = {bernoulli_system(), two_vertex_system()};
  for (int i = 0; i < 10; ++i) systems.push_back(random_system(rng, 3, 4));
  for (const auto& sys : systems) {
    const Observable m = measure_observable(sys);
    for (double q : {-2.0, 0.0, 2.0}) {
      const double s = tau_measure(sys, q).tau + 1.0;
      const auto rep = zeta_truncated(sys.graph, m, sys.log_ratio(), vec({q}), s, 200);
      CHECK(rep.transfer_route);
      CHECK(rep.converges);
      const double exact = zeta_closed_form(sys, q, s);
      CHECK(std::exp(rep.log_partial.back()) == doctest::Approx(exact).epsilon(1e-10));
      CHECK(rep.radius_estimate > 1.0);
    }
  }
}

TEST_CASE("zeta_truncated diagnostics") {
  const auto sys = bernoulli_system();
  const Observable m = measure_observable(sys);
  const Eigen::VectorXd lr = sys.log_ratio();

  SUBCASE("below the abscissa the partial sums diverge") {
    const double s = bernoulli_tau(0.3, 1.0) - 0.2;
    const auto rep = zeta_truncated(sys.graph, m, lr, vec({1.0}), s, 60);
    CHECK_FALSE(rep.converges);
    CHECK(rep.growth_estimate == doctest::Approx(0.2 * std::log(2.0)).epsilon(1e-9));
  }
  SUBCASE("enumeration route matches transfer route") {
    // A Composed identity is not additive-detected, so it is enumerated.
    Eigen::MatrixXd table(2, 1);
    table << std::log(0.3) / std::log(0.5), std::log(0.7) / std::log(0.5);
    const Observable c = Composed{table, IdentityMap{}};
    const auto slow = zeta_truncated(sys.graph, c, lr, vec({2.0}), 0.0, 12);
    const auto fast = zeta_truncated(sys.graph, m, lr, vec({2.0}), 0.0, 12);
    CHECK_FALSE(slow.transfer_route);
    CHECK(fast.transfer_route);
    REQUIRE(slow.log_level.size() == 12);
    for (int n = 0; n < 12; ++n) {
      CHECK(slow.log_level[n] == doctest::Approx(fast.log_level[n]).epsilon(1e-12));
    }
  }
  SUBCASE("errors") {
    CHECK_ERROR(zeta_truncated(sys.graph, m, lr, vec({1.0}), 0.0, 1), ErrorCode::DomainError);
    CHECK_ERROR(zeta_truncated(sys.graph, m, vec({-1.0, 0.0}), vec({1.0}), 0.0, 5),
                ErrorCode::DomainError);
    CHECK_ERROR(zeta_truncated(sys.graph, m, lr, vec({1.0, 2.0}), 0.0, 5),
                ErrorCode::DomainError);
    const Observable c = Composed{Eigen::MatrixXd::Ones(2, 1), IdentityMap{}};
    CHECK_ERROR(zeta_truncated(sys.graph, c, lr, vec({1.0}), 0.0, 40), ErrorCode::DomainError);
  }
}

TEST_CASE("tau_empirical") {
  SUBCASE("exact at every level when the ratio is constant") {
    const auto sys = bernoulli_system();
    for (double q : {-1.0, 0.0, 1.0, 2.0}) {
      const auto t = tau_empirical(sys.graph, measure_observable(sys), sys.log_ratio(),
                                   vec({q}), 8);
      CHECK(t.method == TauMethod::EmpiricalLevelN);
      CHECK(std::abs(t.tau - bernoulli_tau(0.3, q)) <= 1e-12);
    }
  }
  SUBCASE("single vertex: the level sum is a power, so every level is exact") {
    const auto sys = one_vertex({0.5, 0.25}, {0.4, 0.6});
    for (double q : {-1.0, 2.0}) {
      const auto t = tau_empirical(sys.graph, measure_observable(sys), sys.log_ratio(), vec({q}), 4);
      CHECK(std::abs(t.tau - tau_measure(sys, q).tau) <= 1e-12);
    }
  }
  SUBCASE("converges with n on a graph-directed system") {
    const auto sys = two_vertex_system();
    const Observable m = measure_observable(sys);
    for (double q : {-1.0, 2.0}) {
      const double exact = tau_measure(sys, q).tau;
      const double e4 = std::abs(tau_empirical(sys.graph, m, sys.log_ratio(), vec({q}), 4).tau - exact);
      const double e12 = std::abs(tau_empirical(sys.graph, m, sys.log_ratio(), vec({q}), 12).tau - exact);
      CHECK(e12 < e4);
      CHECK(e12 < 0.1);
    }
  }
  SUBCASE("q of the wrong size") {
    const auto sys = bernoulli_system();
    CHECK_ERROR(tau_empirical(sys.graph, measure_observable(sys), sys.log_ratio(), vec({1.0, 1.0}), 4),
                ErrorCode::DomainError);
  }
}

TEST_CASE("tau_linearized") {
  const auto sys = symmetric_system();
  Eigen::MatrixXd f(2, 1);
  f << 0.0, 1.0;
  for (double q = -4.0; q <= 4.0; q += 0.5) {
    const auto t = tau_linearized(sys, f, vec({q}));
    CHECK(t.method == TauMethod::LinearizedBirkhoff);
    CHECK(std::abs(t.tau - std::log2(1.0 + std::pow(2.0, -q))) <= 1e-12);
    // Same abscissa from level-n enumeration.
    const auto e = tau_empirical(sys.graph, LinearIntegral{f}, sys.log_ratio(), vec({q}), 6);
    CHECK(std::abs(e.tau - t.tau) <= 1e-12);
  }
  CHECK_ERROR(tau_linearized(bernoulli_system(), Eigen::MatrixXd::Zero(3, 1), vec({1.0})),
              ErrorCode::UnboundEdge);
  CHECK_ERROR(tau_linearized(one_vertex({0.5, 0.25}, {0.5, 0.5}), f, vec({1.0})),
              ErrorCode::NonConstantRatio);
}
