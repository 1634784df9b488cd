#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfzeta/graph_shift.hpp"
#include "mfzeta/numerics.hpp"
#include "mfzeta/potentials.hpp"

namespace mfzeta {

/// T(i,j) = sum_{e: i->j} exp(pot(e)). Templated so the same construction can be
/// run in extended precision.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
transfer_matrix(const DirectedMultigraph& g, const Eigen::MatrixBase<Derived>& pot) {
  using Scalar = typename Derived::Scalar;
  using std::exp;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(g.vertex_count(),
                                                                 g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    t(g.init(e), g.term(e)) += exp(pot(e));
  }
  return t;
}

/// Topological pressure log rho(T) of a depth-one potential. The matrix is
/// built from pot - max(pot) so that large |pot| neither overflows nor
/// underflows.
double pressure(const DirectedMultigraph& g, const Eigen::Ref<const Eigen::VectorXd>& pot);

/// (1/n) log sum_{|w|=n} exp(S_n pot(w)) by enumeration.
double empirical_pressure(const DirectedMultigraph& g,
                          const Eigen::Ref<const Eigen::VectorXd>& pot, int n);

/// log(1^T T^n 1) for n = 1..n_max using renormalized matrix powers.
std::vector<double> log_level_sums(const DirectedMultigraph& g,
                                   const Eigen::Ref<const Eigen::VectorXd>& pot,
                                   int n_max);

/// Root s of P(s * lambda) = 0. Requires lambda < 0 on every edge.
RootResult bowen_root(const DirectedMultigraph& g,
                      const Eigen::Ref<const Eigen::VectorXd>& lambda);

}  // namespace mfzeta
