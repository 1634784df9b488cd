#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mfzeta/potentials.hpp"

namespace mfzeta {

/// No constraint: every word qualifies.
struct Everything {};

struct Point {
  Eigen::VectorXd alpha;
};

/// Closed Euclidean ball.
struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
};

/// Closed interval, scalar observables only.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Product of closed intervals.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

using TargetSet = std::variant<Everything, Point, Ball, Interval, Box>;

/// Throws DomainError on a non-positive radius or an inverted interval.
void validate_target(const TargetSet& c);

/// Membership with a relative slack of 1e-12, so that values produced by
/// rounding on the boundary of a closed set count as inside.
bool contains(const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Level-n solution of the Bowen equation for a target set.
struct FineEstimate {
  int n = 0;
  TargetSet target;
  double value = 0.0;       // -inf iff count == 0
  std::uint64_t count = 0;  // words of length n with U in the target
  double residual = 0.0;
  bool degenerate = false;  // fixed target misses the attainable range
};

/// (1/n) log sum_{|w|=n, U(w) in C} exp(S_n pot(w)); -inf for an empty sum.
double constrained_pressure(const DirectedMultigraph& g, const Observable& u,
                            const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& pot,
                            int n);

/// log c_n for n = 1..n_max where c_n = (1/n) sum_{|w|=n, U(w) in C} exp(t S_n phi(w)).
std::vector<double> fine_zeta_coefficients(const DirectedMultigraph& g, const Observable& u,
                                           const TargetSet& c, double t,
                                           const Eigen::Ref<const Eigen::VectorXd>& phi,
                                           int n_max);

/// 1 / limsup c_n^{1/n} estimated from the last ceil(n/4) coefficients. +inf
/// when every tail coefficient vanishes; InsufficientData below 4 levels or 4
/// finite coefficients.
double radius_estimate(std::span<const double> log_coefficients);

/// Root t of constrained_pressure(C, t phi) = 0 at level n.
FineEstimate bowen_fine(const DirectedMultigraph& g, const Observable& u, const TargetSet& c,
                        const Eigen::Ref<const Eigen::VectorXd>& phi, int n);

struct ShrinkingTargetReport {
  std::vector<double> radii;
  std::vector<FineEstimate> estimates;
  bool monotone = true;  // non-increasing as the radius shrinks, up to 2/n
};

ShrinkingTargetReport shrinking_target_fine(const DirectedMultigraph& g, const Observable& u,
                                            const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                            std::span<const double> radii,
                                            const Eigen::Ref<const Eigen::VectorXd>& phi, int n);

/// Box containing every value U can take on a cylinder, from edge-wise extremes.
Box attainable_range(const Observable& u);

/// bowen_fine for a closed convex Interval or Box. Flags `degenerate` when the
/// interior of the target misses attainable_range(u); the estimate is still
/// computed.
FineEstimate fixed_target_fine(const DirectedMultigraph& g, const Observable& u,
                               const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& phi,
                               int n);

}  // namespace mfzeta
