#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "mfzeta/numerics.hpp"
#include "mfzeta/potentials.hpp"

namespace mfzeta {

/// a(i,j)(q,s) = sum_{e: i->j} p_e^q r_e^s.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a_matrix(const GDSystem& system,
                                                               Scalar q, Scalar s) {
  using std::exp;
  using std::log;
  const auto& g = system.graph;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(g.vertex_count(),
                                                                 g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Scalar lp = log(Scalar(system.p(e)));
    const Scalar lr = log(Scalar(system.r(e)));
    a(g.init(e), g.term(e)) += exp(q * lp + s * lr);
  }
  return a;
}

inline Eigen::MatrixXd a_matrix(const GDSystem& system, double q, double s) {
  return a_matrix<double>(system, q, s);
}

enum class TauMethod { AnalyticRoot, ClosedFormScalar, EmpiricalLevelN, LinearizedBirkhoff };

const char* to_string(TauMethod method);

struct TauResult {
  Eigen::VectorXd q;
  double tau = 0.0;
  TauMethod method = TauMethod::AnalyticRoot;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
};

/// tau(q) for the self-similar measure: the root s of rho(A(q,s)) = 1.
TauResult tau_measure(const GDSystem& system, double q);

/// 1^T (I - A)^{-1} A 1; throws DomainError unless s > tau(q).
double zeta_closed_form(const GDSystem& system, double q, double s);

/// Finite-n view of a coarse zeta series sum_n sum_{|w|=n} exp((<q|U(w)> + s) S_n phi(w)).
struct TruncationReport {
  int n_max = 0;
  std::vector<double> log_level;    // log of the level-n inner sum
  std::vector<double> log_partial;  // log of the running total through level n
  std::vector<double> growth;       // (1/n) log of the level-n inner sum
  double growth_estimate = 0.0;     // max growth over the last ceil(n_max/4) levels
  double radius_estimate = 0.0;     // exp(-growth_estimate)
  bool converges = false;           // growth_estimate < 0
  bool transfer_route = false;      // inner sums from matrix powers, not enumeration
};

TruncationReport zeta_truncated(const DirectedMultigraph& g, const Observable& u,
                                const Eigen::Ref<const Eigen::VectorXd>& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& q, double s,
                                int n_max);

/// Root in s of the level-n functional (1/n) log sum exp((<q|U(w)> + s) S_n phi(w)).
TauResult tau_empirical(const DirectedMultigraph& g, const Observable& u,
                        const Eigen::Ref<const Eigen::VectorXd>& phi,
                        const Eigen::Ref<const Eigen::VectorXd>& q, int n);

/// tau(q) = P(<q|f> log r) / (-log r) for a LinearIntegral observable on a
/// system whose ratios all equal r. Throws NonConstantRatio.
TauResult tau_linearized(const GDSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& f,
                         const Eigen::Ref<const Eigen::VectorXd>& q);

}  // namespace mfzeta
