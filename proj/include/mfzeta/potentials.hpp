#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>

#include "mfzeta/graph_shift.hpp"

namespace mfzeta {

/// A potential that depends only on the first edge: one value per edge id.
using DepthOnePotential = Eigen::VectorXd;

/// Throws UnboundEdge unless `pot` has one finite value per edge of `g`.
void check_potential(const DirectedMultigraph& g,
                     const Eigen::Ref<const Eigen::VectorXd>& pot);

/// Graph-directed similarity system: contraction ratio r_e and probability p_e
/// on every edge.
struct GDSystem {
  DirectedMultigraph graph;
  Eigen::VectorXd r;
  Eigen::VectorXd p;
  bool osc_asserted = false;

  /// Lambda(e) = log r_e.
  DepthOnePotential log_ratio() const { return r.array().log().matrix(); }
  /// Phi(e) = log p_e.
  DepthOnePotential log_probability() const { return p.array().log().matrix(); }
};

/// Validates the graph and the per-edge tables. Throws RatioOutOfRange or
/// ProbabilityRowSum (naming the vertex and the deficit).
GDSystem build_system(DirectedMultigraph graph, Eigen::VectorXd r,
                      Eigen::VectorXd p, bool osc_asserted = false);

/// Sum of the potential's values along w.
double birkhoff_sum(const Eigen::Ref<const Eigen::VectorXd>& pot,
                    std::span<const EdgeId> w);

// Observables. Tables are |E| x M matrices, one column per component.

/// U(mu) = (int psi_j dmu / int phi dmu)_j; requires phi < 0 on every edge.
struct MeasureRatio {
  Eigen::MatrixXd psi;
  DepthOnePotential phi;
};

/// U(mu) = (int f_j dmu)_j.
struct LinearIntegral {
  Eigen::MatrixXd f;
};

struct IdentityMap {};

/// Q(x) = x_numerator / x_denominator.
struct CoordinateRatio {
  int numerator = 0;
  int denominator = 1;
};

/// Q(x) = prod_i x_i^{s_i} / prod_i x_{M+i}^{t_i}, with the columns of the
/// composed table ordered f_1..f_M, g_1..g_M.
struct HolderProduct {
  Eigen::VectorXd s;
  Eigen::VectorXd t;
};

using Composition = std::variant<IdentityMap, CoordinateRatio, HolderProduct>;

/// U(mu) = Q(int Phi dmu) for a vector table Phi.
struct Composed {
  Eigen::MatrixXd phi_vec;
  Composition q;
};

using Observable = std::variant<MeasureRatio, LinearIntegral, Composed>;

/// The local-dimension observable int Phi / int Lambda of a system.
Observable measure_observable(const GDSystem& system);

/// Throws InvalidObservable or UnboundEdge.
void validate_observable(const DirectedMultigraph& g, const Observable& u);

/// Output dimension M.
int observable_dimension(const Observable& u);

/// The |E| x K tables whose Birkhoff sums determine U on a cylinder.
Eigen::MatrixXd observable_tables(const Observable& u);

/// U on the empirical measure of a length-n word, given the Birkhoff sums of
/// observable_tables(u) along it.
Eigen::VectorXd observable_from_sums(const Observable& u,
                                     const Eigen::Ref<const Eigen::VectorXd>& sums,
                                     int n);

Eigen::VectorXd observable_value(const DirectedMultigraph& g, const Observable& u,
                                 std::span<const EdgeId> w);

/// Calls visit(word, U(word), S_n pot(word)) for every word of length n in
/// lexicographic order.
template <typename Visitor>
void for_each_observation(const DirectedMultigraph& g, const Observable& u,
                          const Eigen::Ref<const Eigen::VectorXd>& pot, int n,
                          Visitor&& visit) {
  const Eigen::MatrixXd obs_tables = observable_tables(u);
  Eigen::MatrixXd tables(g.edge_count(), obs_tables.cols() + 1);
  tables.leftCols(obs_tables.cols()) = obs_tables;
  tables.col(obs_tables.cols()) = pot;
  const Eigen::Index k = obs_tables.cols();
  WordEnumerator it(g, n, &tables);
  while (it.next()) {
    const auto sums = it.sums();
    const Eigen::VectorXd value = observable_from_sums(u, sums.head(k), n);
    visit(it.word(), value, sums(k));
  }
}

}  // namespace mfzeta
