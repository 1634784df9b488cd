#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfzeta/coarse_zeta.hpp"
#include "mfzeta/potentials.hpp"

namespace mfzeta {

/// tau*(alpha) = inf_q (q alpha + tau(q)), the sign convention used throughout
/// this library. Returns -inf when alpha lies outside the slope range of tau.
/// `tau` must be convex.
double legendre_transform(const std::function<double(double)>& tau, double alpha);

/// Discrete version over samples (q_k, tau_k), q ascending. Returns -inf when
/// the minimum sits on an end sample whose adjacent segment still descends.
double legendre_transform(std::span<const double> q, std::span<const double> tau,
                          double alpha);

/// Vector version over samples: rows of `q` are sample points. Plain discrete
/// infimum, no divergence certificate.
double legendre_transform(const Eigen::Ref<const Eigen::MatrixXd>& q,
                          const Eigen::Ref<const Eigen::VectorXd>& tau,
                          const Eigen::Ref<const Eigen::VectorXd>& alpha);

/// alpha(q) = -tau'(q) by implicit differentiation of rho(A(q, tau(q))) = 1.
double alpha_of_q(const GDSystem& system, double q);

struct SpectrumRow {
  double q = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
  double f = 0.0;
  TauMethod method = TauMethod::AnalyticRoot;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  bool single_point = false;  // tau is affine: the spectrum is one point
};

SpectrumTable spectrum_table(const GDSystem& system, double q_min, double q_max, int steps);

struct FormalismOptions {
  int n = 18;
  double radius = 0.05;
  double tolerance = 0.1;
};

struct FormalismProbe {
  double alpha = 0.0;
  double fine = 0.0;           // level-n Bowen estimate on the ball
  double legendre_sup = 0.0;   // sup of tau* over the ball
  double difference = 0.0;     // |fine - legendre_sup|, 0 when both are -inf
  double slack = 0.0;          // 3/n
  std::uint64_t count = 0;     // words with U in the ball
  bool agreement = false;      // difference <= tolerance
  bool majorant = false;       // fine <= legendre_sup + slack
};

struct FormalismReport {
  int n = 0;
  double radius = 0.0;
  double tolerance = 0.0;
  std::vector<FormalismProbe> probes;
  bool all_majorant = true;
  bool all_agreement = true;
};

/// sup of tau* over [lo, hi].
double legendre_sup(const std::function<double(double)>& tau, double lo, double hi);

/// Compares level-n fine estimates with the Legendre side for scalar
/// observables. `tau` supplies the coarse side.
FormalismReport verify_formalism(const DirectedMultigraph& g, const Observable& u,
                                 const Eigen::Ref<const Eigen::VectorXd>& phi,
                                 const std::function<double(double)>& tau,
                                 std::span<const double> alphas,
                                 const FormalismOptions& options);

/// Measure case: U = Phi / Lambda, phi = Lambda, tau from tau_measure.
FormalismReport verify_formalism(const GDSystem& system, std::span<const double> alphas,
                                 const FormalismOptions& options);

}  // namespace mfzeta
