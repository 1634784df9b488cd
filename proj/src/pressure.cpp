#include "mfzeta/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfzeta/errors.hpp"
#include "mfzeta/perron.hpp"

namespace mfzeta {

namespace {

// Osborne balancing in the log domain. Adding h(init) - h(term) to every edge
// leaves cycle sums, and so the pressure, unchanged, while pulling the
// off-diagonal mass of each vertex in line with its incoming mass. Without it
// entries of exp(pot) can span more than the double range at large |q| and
// underflow to a reducible matrix.
Eigen::VectorXd balanced(const DirectedMultigraph& g, const Eigen::VectorXd& pot) {
  const int nv = g.vertex_count();
  if (nv == 1) return pot;
  Eigen::VectorXd h = Eigen::VectorXd::Zero(nv);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double largest = 0.0;
    for (VertexId v = 0; v < nv; ++v) {
      LogSumExp out, in;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (g.init(e) == g.term(e)) continue;
        if (g.init(e) == v) out.add(pot(e) + h(v) - h(g.term(e)));
        if (g.term(e) == v) in.add(pot(e) + h(g.init(e)) - h(v));
      }
      if (out.empty() || in.empty()) continue;
      const double step = 0.5 * (in.value() - out.value());
      h(v) += step;
      largest = std::max(largest, std::abs(step));
    }
    if (largest < 1e-3) break;
  }
  Eigen::VectorXd out = pot;
  for (EdgeId e = 0; e < g.edge_count(); ++e) out(e) += h(g.init(e)) - h(g.term(e));
  return out;
}

}  // namespace

double pressure(const DirectedMultigraph& g, const Eigen::Ref<const Eigen::VectorXd>& pot) {
  check_potential(g, pot);
  const Eigen::VectorXd cohomologous = balanced(g, pot);
  const double shift = cohomologous.maxCoeff();
  const Eigen::VectorXd scaled = cohomologous.array() - shift;
  const Eigen::MatrixXd t = transfer_matrix(g, scaled);
  const double rho = spectral_radius(t);
  if (std::isnan(rho)) {
    throw Error(ErrorCode::NoConvergence, "spectral radius did not converge");
  }
  return shift + std::log(rho);
}

double empirical_pressure(const DirectedMultigraph& g,
                          const Eigen::Ref<const Eigen::VectorXd>& pot, int n) {
  check_potential(g, pot);
  const Eigen::MatrixXd table = pot;
  WordEnumerator it(g, n, &table);
  LogSumExp acc;
  while (it.next()) acc.add(it.sums()(0));
  return acc.value() / n;
}

std::vector<double> log_level_sums(const DirectedMultigraph& g,
                                   const Eigen::Ref<const Eigen::VectorXd>& pot,
                                   int n_max) {
  check_potential(g, pot);
  const double shift = pot.maxCoeff();
  const Eigen::VectorXd scaled = pot.array() - shift;
  const Eigen::MatrixXd t = transfer_matrix(g, scaled);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(g.vertex_count());
  double log_scale = 0.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) {
    x = t * x;
    const double top = x.maxCoeff();
    if (!(top > 0.0)) {
      out.push_back(kNegInf);
      continue;
    }
    x /= top;
    log_scale += std::log(top);
    out.push_back(n * shift + log_scale + std::log(x.sum()));
  }
  return out;
}

RootResult bowen_root(const DirectedMultigraph& g,
                      const Eigen::Ref<const Eigen::VectorXd>& lambda) {
  check_potential(g, lambda);
  if (!(lambda.array() < 0.0).all()) {
    throw Error(ErrorCode::DomainError, "Bowen root needs a strictly negative potential");
  }
  const auto p = [&](double s) { return pressure(g, s * lambda); };
  // P(0) = log(lambda_B) >= 0, so only the right endpoint needs to move.
  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (p(hi) > 0.0) {
    if (++expansions > 200) {
      throw Error(ErrorCode::BracketFailure, "pressure stays positive");
    }
    lo = hi;
    hi *= 2.0;
  }
  if (p(lo) < 0.0) {
    throw Error(ErrorCode::BracketFailure, "pressure negative at s=0");
  }
  return bisect_decreasing(p, lo, hi);
}

}  // namespace mfzeta
