#include "mfzeta/fine_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mfzeta/errors.hpp"
#include "mfzeta/numerics.hpp"

namespace mfzeta {

namespace {

constexpr double kMembershipSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool in_closed(double x, double lo, double hi) {
  const double slack = kMembershipSlack * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  return x >= lo - slack && x <= hi + slack;
}

// Distinct values of S_n pot over the constrained words, with multiplicities.
struct ConstrainedLevel {
  std::map<double, std::uint64_t> sums;
  std::uint64_t count = 0;

  double log_sum(double scale) const {
    LogSumExp acc;
    for (const auto& [sum, mult] : sums) acc.add(scale * sum, mult);
    return acc.value();
  }
};

ConstrainedLevel collect(const DirectedMultigraph& g, const Observable& u, const TargetSet& c,
                         const Eigen::Ref<const Eigen::VectorXd>& pot, int n) {
  ConstrainedLevel level;
  const bool vacuous = std::holds_alternative<Everything>(c);
  for_each_observation(g, u, pot, n,
                       [&](std::span<const EdgeId>, const Eigen::VectorXd& value, double sum) {
                         if (vacuous || contains(c, value)) {
                           ++level.sums[sum];
                           ++level.count;
                         }
                       });
  return level;
}

void check_inputs(const DirectedMultigraph& g, const Observable& u, const TargetSet& c,
                  const Eigen::Ref<const Eigen::VectorXd>& pot) {
  check_potential(g, pot);
  validate_observable(g, u);
  validate_target(c);
}

}  // namespace

void validate_target(const TargetSet& c) {
  std::visit(Overloaded{
                 [](const Everything&) {},
                 [](const Point&) {},
                 [](const Ball& b) {
                   if (!(b.radius > 0.0)) {
                     throw Error(ErrorCode::DomainError, "ball radius must be positive");
                   }
                 },
                 [](const Interval& i) {
                   if (!(i.lo <= i.hi)) throw Error(ErrorCode::DomainError, "interval lo > hi");
                 },
                 [](const Box& b) {
                   if (b.lo.size() != b.hi.size() || !(b.lo.array() <= b.hi.array()).all()) {
                     throw Error(ErrorCode::DomainError, "box bounds are inconsistent");
                   }
                 },
             },
             c);
}

bool contains(const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::visit(
      Overloaded{
          [](const Everything&) { return true; },
          [&](const Point& p) {
            if (p.alpha.size() != x.size()) return false;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              if (!in_closed(x(i), p.alpha(i), p.alpha(i))) return false;
            }
            return true;
          },
          [&](const Ball& b) {
            if (b.center.size() != x.size()) return false;
            const double slack = kMembershipSlack * (1.0 + b.center.norm() + b.radius);
            return (x - b.center).norm() <= b.radius + slack;
          },
          [&](const Interval& i) { return x.size() == 1 && in_closed(x(0), i.lo, i.hi); },
          [&](const Box& b) {
            if (b.lo.size() != x.size()) return false;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              if (!in_closed(x(i), b.lo(i), b.hi(i))) return false;
            }
            return true;
          },
      },
      c);
}

double constrained_pressure(const DirectedMultigraph& g, const Observable& u,
                            const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& pot,
                            int n) {
  check_inputs(g, u, c, pot);
  const ConstrainedLevel level = collect(g, u, c, pot, n);
  return level.log_sum(1.0) / n;
}

std::vector<double> fine_zeta_coefficients(const DirectedMultigraph& g, const Observable& u,
                                           const TargetSet& c, double t,
                                           const Eigen::Ref<const Eigen::VectorXd>& phi,
                                           int n_max) {
  check_inputs(g, u, c, phi);
  if (!(phi.array() < 0.0).all()) {
    throw Error(ErrorCode::DomainError, "potential must be strictly negative");
  }
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) {
    const ConstrainedLevel level = collect(g, u, c, phi, n);
    out.push_back(level.log_sum(t) - std::log(static_cast<double>(n)));
  }
  return out;
}

double radius_estimate(std::span<const double> log_coefficients) {
  const auto levels = static_cast<int>(log_coefficients.size());
  if (levels < 4) {
    throw Error(ErrorCode::InsufficientData, "need at least 4 coefficients");
  }
  const int window = (levels + 3) / 4;
  double growth = kNegInf;
  for (int n = levels - window + 1; n <= levels; ++n) {
    const double lc = log_coefficients[static_cast<std::size_t>(n - 1)];
    if (lc != kNegInf) growth = std::max(growth, lc / n);
  }
  if (growth == kNegInf) return kPosInf;
  const auto finite = std::count_if(log_coefficients.begin(), log_coefficients.end(),
                                    [](double lc) { return lc != kNegInf; });
  if (finite < 4) {
    throw Error(ErrorCode::InsufficientData, "fewer than 4 finite coefficients");
  }
  return std::exp(-growth);
}

FineEstimate bowen_fine(const DirectedMultigraph& g, const Observable& u, const TargetSet& c,
                        const Eigen::Ref<const Eigen::VectorXd>& phi, int n) {
  check_inputs(g, u, c, phi);
  if (!(phi.array() < 0.0).all()) {
    throw Error(ErrorCode::DomainError, "potential must be strictly negative");
  }
  FineEstimate out;
  out.n = n;
  out.target = c;
  const ConstrainedLevel level = collect(g, u, c, phi, n);
  out.count = level.count;
  if (level.count == 0) {
    out.value = kNegInf;
    return out;
  }
  const auto f = [&](double t) { return level.log_sum(t) / n; };
  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (f(hi) > 0.0) {
    if (++expansions > 200) throw Error(ErrorCode::BracketFailure, "no sign change");
    lo = hi;
    hi *= 2.0;
  }
  const RootResult root = bisect_decreasing(f, lo, hi);
  out.value = root.root;
  out.residual = root.residual;
  return out;
}

ShrinkingTargetReport shrinking_target_fine(const DirectedMultigraph& g, const Observable& u,
                                            const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                            std::span<const double> radii,
                                            const Eigen::Ref<const Eigen::VectorXd>& phi,
                                            int n) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw Error(ErrorCode::DomainError, "radii must be positive and strictly decreasing");
    }
  }
  ShrinkingTargetReport report;
  report.radii.assign(radii.begin(), radii.end());
  const double noise = 2.0 / n;
  for (double r : radii) {
    report.estimates.push_back(bowen_fine(g, u, Ball{alpha, r}, phi, n));
    const auto k = report.estimates.size();
    if (k > 1 && report.estimates[k - 1].value > report.estimates[k - 2].value + noise) {
      report.monotone = false;
    }
  }
  return report;
}

Box attainable_range(const Observable& u) {
  const auto column_range = [](const Eigen::MatrixXd& t) {
    return Box{t.colwise().minCoeff().transpose(), t.colwise().maxCoeff().transpose()};
  };
  return std::visit(
      Overloaded{
          [](const MeasureRatio& m) {
            // Ratios of sums of negatives lie between the extreme edge ratios.
            const Eigen::MatrixXd ratios = m.psi.array().colwise() / m.phi.array();
            return Box{ratios.colwise().minCoeff().transpose(),
                       ratios.colwise().maxCoeff().transpose()};
          },
          [&](const LinearIntegral& l) { return column_range(l.f); },
          [&](const Composed& c) {
            const Box base = column_range(c.phi_vec);
            return std::visit(
                Overloaded{
                    [&](const IdentityMap&) { return base; },
                    [&](const CoordinateRatio& q) {
                      const double nlo = base.lo(q.numerator), nhi = base.hi(q.numerator);
                      const double dlo = base.lo(q.denominator), dhi = base.hi(q.denominator);
                      if (dlo <= 0.0 && dhi >= 0.0) {
                        return Box{Eigen::VectorXd::Constant(1, kNegInf),
                                   Eigen::VectorXd::Constant(1, kPosInf)};
                      }
                      const double c1 = nlo / dlo, c2 = nlo / dhi, c3 = nhi / dlo, c4 = nhi / dhi;
                      return Box{Eigen::VectorXd::Constant(1, std::min({c1, c2, c3, c4})),
                                 Eigen::VectorXd::Constant(1, std::max({c1, c2, c3, c4}))};
                    },
                    [&](const HolderProduct& q) {
                      const Eigen::Index m = q.s.size();
                      const double num_lo =
                          (q.s.array() * base.lo.head(m).array().log()).sum();
                      const double num_hi =
                          (q.s.array() * base.hi.head(m).array().log()).sum();
                      const double den_lo =
                          (q.t.array() * base.lo.tail(m).array().log()).sum();
                      const double den_hi =
                          (q.t.array() * base.hi.tail(m).array().log()).sum();
                      return Box{Eigen::VectorXd::Constant(1, std::exp(num_lo - den_hi)),
                                 Eigen::VectorXd::Constant(1, std::exp(num_hi - den_lo))};
                    },
                },
                c.q);
          },
      },
      u);
}

FineEstimate fixed_target_fine(const DirectedMultigraph& g, const Observable& u,
                               const TargetSet& c, const Eigen::Ref<const Eigen::VectorXd>& phi,
                               int n) {
  Box target;
  if (const auto* i = std::get_if<Interval>(&c)) {
    target = Box{Eigen::VectorXd::Constant(1, i->lo), Eigen::VectorXd::Constant(1, i->hi)};
  } else if (const auto* b = std::get_if<Box>(&c)) {
    target = *b;
  } else {
    throw Error(ErrorCode::DomainError, "fixed targets are intervals or boxes");
  }
  validate_target(c);
  const Box range = attainable_range(u);
  bool meets = target.lo.size() == range.lo.size();
  for (Eigen::Index k = 0; meets && k < target.lo.size(); ++k) {
    meets = target.lo(k) < target.hi(k) && target.lo(k) < range.hi(k) &&
            target.hi(k) > range.lo(k);
  }
  FineEstimate out = bowen_fine(g, u, c, phi, n);
  out.degenerate = !meets;
  return out;
}

}  // namespace mfzeta
