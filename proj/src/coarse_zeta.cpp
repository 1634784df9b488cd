#include "mfzeta/coarse_zeta.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mfzeta/errors.hpp"
#include "mfzeta/pressure.hpp"

namespace mfzeta {

namespace {

constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 24;

// Sorted (value, multiplicity) list; exact duplicates merged.
using WeightedSamples = std::vector<std::pair<std::pair<double, double>, std::uint64_t>>;

double weighted_log_sum(const WeightedSamples& samples, double s) {
  LogSumExp acc;
  for (const auto& [key, count] : samples) {
    acc.add((key.first + s) * key.second, count);
  }
  return acc.value();
}

}  // namespace

const char* to_string(TauMethod method) {
  switch (method) {
    case TauMethod::AnalyticRoot: return "analytic-root";
    case TauMethod::ClosedFormScalar: return "closed-form-scalar";
    case TauMethod::EmpiricalLevelN: return "empirical-level-n";
    case TauMethod::LinearizedBirkhoff: return "linearized-birkhoff";
  }
  return "unknown";
}

TauResult tau_measure(const GDSystem& system, double q) {
  const auto& g = system.graph;
  const Eigen::VectorXd log_p = system.log_probability();
  const Eigen::VectorXd log_r = system.log_ratio();
  TauResult out;
  out.q = Eigen::VectorXd::Constant(1, q);

  std::function<double(double)> log_rho;
  if (g.vertex_count() == 1) {
    out.method = TauMethod::ClosedFormScalar;
    log_rho = [&](double s) {
      LogSumExp acc;
      for (EdgeId e = 0; e < g.edge_count(); ++e) acc.add(q * log_p(e) + s * log_r(e));
      return acc.value();
    };
  } else {
    out.method = TauMethod::AnalyticRoot;
    log_rho = [&](double s) {
      return pressure(g, (q * log_p + s * log_r).eval());
    };
  }
  double lo = -1.0;
  double hi = 1.0;
  expand_bracket_decreasing(log_rho, lo, hi);
  const RootResult root = bisect_decreasing(log_rho, lo, hi);
  out.tau = root.root;
  out.lo = root.lo;
  out.hi = root.hi;
  out.residual = std::expm1(root.residual);
  return out;
}

double zeta_closed_form(const GDSystem& system, double q, double s) {
  const double tau = tau_measure(system, q).tau;
  if (!(s > tau)) {
    throw Error(ErrorCode::DomainError,
                "series diverges: s=" + std::to_string(s) + " <= tau(q)=" + std::to_string(tau));
  }
  const Eigen::MatrixXd a = a_matrix(system, q, s);
  const Eigen::Index n = a.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::MatrixXd i_minus_a = Eigen::MatrixXd::Identity(n, n) - a;
  const Eigen::VectorXd x = i_minus_a.partialPivLu().solve(a * ones);
  return ones.dot(x);
}

TruncationReport zeta_truncated(const DirectedMultigraph& g, const Observable& u,
                                const Eigen::Ref<const Eigen::VectorXd>& phi,
                                const Eigen::Ref<const Eigen::VectorXd>& q, double s,
                                int n_max) {
  check_potential(g, phi);
  validate_observable(g, u);
  if (n_max < 2) throw Error(ErrorCode::DomainError, "n_max must be at least 2");
  if (!(phi.array() < 0.0).all()) {
    throw Error(ErrorCode::DomainError, "zeta potential must be strictly negative");
  }
  if (q.size() != observable_dimension(u)) {
    throw Error(ErrorCode::DomainError, "q has the wrong dimension for the observable");
  }

  TruncationReport report;
  report.n_max = n_max;

  // When the exponent is additive along words the inner sums are 1^T T^n 1.
  std::optional<Eigen::VectorXd> additive;
  if (const auto* m = std::get_if<MeasureRatio>(&u); m && m->phi == phi) {
    additive = (m->psi * q + s * phi).eval();
  } else if (const auto* l = std::get_if<LinearIntegral>(&u);
             l && (phi.array() == phi(0)).all()) {
    additive = (phi(0) * (l->f * q).array() + s * phi(0)).matrix().eval();
  }

  if (additive) {
    report.transfer_route = true;
    report.log_level = log_level_sums(g, *additive, n_max);
  } else {
    std::uint64_t total = 0;
    for (int n = 1; n <= n_max; ++n) {
      total += word_count(g, n);
      if (total > kEnumerationBudget) {
        throw Error(ErrorCode::DomainError,
                    "n_max=" + std::to_string(n_max) + " exceeds the enumeration budget");
      }
    }
    for (int n = 1; n <= n_max; ++n) {
      LogSumExp acc;
      for_each_observation(g, u, phi, n,
                           [&](std::span<const EdgeId>, const Eigen::VectorXd& value,
                               double sum) { acc.add((q.dot(value) + s) * sum); });
      report.log_level.push_back(acc.value());
    }
  }

  double running = kNegInf;
  for (int n = 1; n <= n_max; ++n) {
    const double level = report.log_level[static_cast<std::size_t>(n - 1)];
    running = log_add_exp(running, level);
    report.log_partial.push_back(running);
    report.growth.push_back(level / n);
  }
  const int window = (n_max + 3) / 4;
  report.growth_estimate = kNegInf;
  for (int n = n_max - window + 1; n <= n_max; ++n) {
    report.growth_estimate =
        std::max(report.growth_estimate, report.growth[static_cast<std::size_t>(n - 1)]);
  }
  report.radius_estimate = std::exp(-report.growth_estimate);
  report.converges = report.growth_estimate < 0.0;
  return report;
}

TauResult tau_empirical(const DirectedMultigraph& g, const Observable& u,
                        const Eigen::Ref<const Eigen::VectorXd>& phi,
                        const Eigen::Ref<const Eigen::VectorXd>& q, int n) {
  check_potential(g, phi);
  validate_observable(g, u);
  if (!(phi.array() < 0.0).all()) {
    throw Error(ErrorCode::DomainError, "potential must be strictly negative");
  }
  if (q.size() != observable_dimension(u)) {
    throw Error(ErrorCode::DomainError, "q has the wrong dimension for the observable");
  }
  std::map<std::pair<double, double>, std::uint64_t> merged;
  for_each_observation(g, u, phi, n,
                       [&](std::span<const EdgeId>, const Eigen::VectorXd& value,
                           double sum) { ++merged[{q.dot(value), sum}]; });
  const WeightedSamples samples(merged.begin(), merged.end());
  const auto level = [&](double s) { return weighted_log_sum(samples, s) / n; };

  double lo = -1.0;
  double hi = 1.0;
  expand_bracket_decreasing(level, lo, hi);
  const RootResult root = bisect_decreasing(level, lo, hi);
  TauResult out;
  out.q = q;
  out.tau = root.root;
  out.method = TauMethod::EmpiricalLevelN;
  out.lo = root.lo;
  out.hi = root.hi;
  out.residual = root.residual;
  return out;
}

TauResult tau_linearized(const GDSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& f,
                         const Eigen::Ref<const Eigen::VectorXd>& q) {
  const auto& g = system.graph;
  if (f.rows() != g.edge_count() || f.cols() != q.size()) {
    throw Error(ErrorCode::UnboundEdge, "f must be |E| x dim(q)");
  }
  const double ratio = system.r(0);
  if (!(system.r.array() == ratio).all()) {
    throw Error(ErrorCode::NonConstantRatio, "edges do not share a contraction ratio");
  }
  const double log_ratio = std::log(ratio);
  const Eigen::VectorXd pot = (f * q) * log_ratio;
  TauResult out;
  out.q = q;
  out.tau = pressure(g, pot) / -log_ratio;
  out.method = TauMethod::LinearizedBirkhoff;
  out.lo = out.hi = out.tau;
  out.residual = 0.0;
  return out;
}

}  // namespace mfzeta
