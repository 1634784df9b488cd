#include "mfzeta/legendre_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "mfzeta/errors.hpp"
#include "mfzeta/fine_zeta.hpp"
#include "mfzeta/numerics.hpp"
#include "mfzeta/perron.hpp"

namespace mfzeta {

namespace {

constexpr double kInitialBracket = 20.0;
constexpr double kFlatSlope = 1e-9;
constexpr int kMaxExpansions = 40;

}  // namespace

double legendre_transform(const std::function<double(double)>& tau, double alpha) {
  const auto h = [&](double q) { return q * alpha + tau(q); };
  const auto slope_at = [&](double q, bool right_end) {
    const double d = 1e-4 * (1.0 + std::abs(q));
    return right_end ? (h(q) - h(q - d)) / d : (h(q + d) - h(q)) / d;
  };

  double lo = -kInitialBracket;
  double hi = kInitialBracket;
  double prev_lo_slope = std::nan("");
  double prev_hi_slope = std::nan("");
  bool bracketed = false;
  for (int it = 0; it < kMaxExpansions; ++it) {
    const double s_lo = slope_at(lo, false);
    const double s_hi = slope_at(hi, true);
    const bool lo_ok = s_lo <= kFlatSlope;
    const bool hi_ok = s_hi >= -kFlatSlope;
    if (lo_ok && hi_ok) {
      bracketed = true;
      break;
    }
    // A boundary slope that no longer changes under doubling means h keeps
    // decreasing linearly: the infimum is -inf.
    if (!hi_ok) {
      if (!std::isnan(prev_hi_slope) &&
          std::abs(s_hi - prev_hi_slope) <= 1e-6 * std::abs(prev_hi_slope)) {
        return kNegInf;
      }
      prev_hi_slope = s_hi;
      hi *= 2.0;
    }
    if (!lo_ok) {
      if (!std::isnan(prev_lo_slope) &&
          std::abs(s_lo - prev_lo_slope) <= 1e-6 * std::abs(prev_lo_slope)) {
        return kNegInf;
      }
      prev_lo_slope = s_lo;
      lo *= 2.0;
    }
  }
  if (!bracketed) return kNegInf;
  const double q_star = golden_section_min(h, lo, hi, 1e-13);
  return std::min({h(q_star), h(lo), h(hi)});
}

double legendre_transform(std::span<const double> q, std::span<const double> tau,
                          double alpha) {
  if (q.size() != tau.size() || q.empty()) {
    throw Error(ErrorCode::DomainError, "need matching, non-empty samples");
  }
  std::size_t best = 0;
  std::vector<double> h(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    h[k] = q[k] * alpha + tau[k];
    if (h[k] < h[best]) best = k;
  }
  if (q.size() > 1) {
    const double scale = 1e-12 * (1.0 + std::abs(h[best]));
    if (best == 0 && h[1] > h[0] + scale) return kNegInf;
    const std::size_t last = q.size() - 1;
    if (best == last && h[last - 1] > h[last] + scale) return kNegInf;
  }
  return h[best];
}

double legendre_transform(const Eigen::Ref<const Eigen::MatrixXd>& q,
                          const Eigen::Ref<const Eigen::VectorXd>& tau,
                          const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  if (q.rows() != tau.size() || q.cols() != alpha.size() || q.rows() == 0) {
    throw Error(ErrorCode::DomainError, "sample shapes do not match");
  }
  return (q * alpha + tau).minCoeff();
}

double alpha_of_q(const GDSystem& system, double q) {
  const auto& g = system.graph;
  const double tau = tau_measure(system, q).tau;
  const Eigen::MatrixXd a = a_matrix(system, q, tau);
  Eigen::MatrixXd da_dq = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  Eigen::MatrixXd da_ds = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double lp = std::log(system.p(e));
    const double lr = std::log(system.r(e));
    const double w = std::exp(q * lp + tau * lr);
    da_dq(g.init(e), g.term(e)) += w * lp;
    da_ds(g.init(e), g.term(e)) += w * lr;
  }
  const auto pair = perron_pair(a);
  if (!pair.converged) {
    throw Error(ErrorCode::NoConvergence, "Perron pair of A(q, tau(q)) did not converge");
  }
  const double num = pair.left.dot(da_dq * pair.right);
  const double den = pair.left.dot(da_ds * pair.right);
  return num / den;
}

SpectrumTable spectrum_table(const GDSystem& system, double q_min, double q_max, int steps) {
  if (!(q_min < q_max) || steps < 2) {
    throw Error(ErrorCode::DomainError, "need q_min < q_max and steps >= 2");
  }
  SpectrumTable table;
  table.rows.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    // Endpoints are hit exactly.
    const double q = k == steps - 1 ? q_max : q_min + (q_max - q_min) * k / (steps - 1);
    const TauResult tau = tau_measure(system, q);
    SpectrumRow row;
    row.q = q;
    row.tau = tau.tau;
    row.alpha = alpha_of_q(system, q);
    row.f = q * row.alpha + row.tau;
    row.method = tau.method;
    table.rows.push_back(row);
  }
  const auto [lo, hi] = std::minmax_element(
      table.rows.begin(), table.rows.end(),
      [](const SpectrumRow& a, const SpectrumRow& b) { return a.alpha < b.alpha; });
  table.alpha_min = lo->alpha;
  table.alpha_max = hi->alpha;
  table.single_point = table.alpha_max - table.alpha_min <= 1e-12;
  return table;
}

double legendre_sup(const std::function<double(double)>& tau, double lo, double hi) {
  const auto star = [&](double a) { return legendre_transform(tau, a); };
  constexpr int kSamples = 32;
  std::vector<double> xs;
  for (int k = 0; k <= kSamples; ++k) xs.push_back(lo + (hi - lo) * k / kSamples);
  xs.push_back(0.5 * (lo + hi));
  std::sort(xs.begin(), xs.end());
  std::vector<double> values;
  for (double x : xs) values.push_back(star(x));
  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  double result = values[best];
  if (result == kNegInf) return kNegInf;
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[std::min(best + 1, xs.size() - 1)];
  if (b > a) {
    const double x = golden_section_min([&](double t) { return -star(t); }, a, b, 1e-10);
    result = std::max(result, star(x));
  }
  return result;
}

FormalismReport verify_formalism(const DirectedMultigraph& g, const Observable& u,
                                 const Eigen::Ref<const Eigen::VectorXd>& phi,
                                 const std::function<double(double)>& tau,
                                 std::span<const double> alphas,
                                 const FormalismOptions& options) {
  if (observable_dimension(u) != 1) {
    throw Error(ErrorCode::DomainError, "formalism check needs a scalar observable");
  }
  FormalismReport report;
  report.n = options.n;
  report.radius = options.radius;
  report.tolerance = options.tolerance;
  for (double alpha : alphas) {
    FormalismProbe probe;
    probe.alpha = alpha;
    const FineEstimate fine =
        bowen_fine(g, u, Ball{Eigen::VectorXd::Constant(1, alpha), options.radius}, phi,
                   options.n);
    probe.fine = fine.value;
    probe.count = fine.count;
    probe.legendre_sup = legendre_sup(tau, alpha - options.radius, alpha + options.radius);
    if (probe.fine == kNegInf && probe.legendre_sup == kNegInf) {
      probe.difference = 0.0;
    } else {
      probe.difference = std::abs(probe.fine - probe.legendre_sup);
    }
    probe.slack = 3.0 / options.n;
    probe.agreement = probe.difference <= options.tolerance;
    probe.majorant = probe.fine <= probe.legendre_sup + probe.slack;
    report.all_agreement = report.all_agreement && probe.agreement;
    report.all_majorant = report.all_majorant && probe.majorant;
    report.probes.push_back(probe);
  }
  return report;
}

FormalismReport verify_formalism(const GDSystem& system, std::span<const double> alphas,
                                 const FormalismOptions& options) {
  const auto tau = [&](double q) { return tau_measure(system, q).tau; };
  return verify_formalism(system.graph, measure_observable(system), system.log_ratio(), tau,
                          alphas, options);
}

}  // namespace mfzeta
