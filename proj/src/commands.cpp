#include "mfzeta/commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mfzeta/coarse_zeta.hpp"
#include "mfzeta/errors.hpp"
#include "mfzeta/fine_zeta.hpp"
#include "mfzeta/legendre_spectrum.hpp"
#include "mfzeta/pressure.hpp"

namespace mfzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDifferenceStep = 1e-5;

// JSON has no infinities; they travel as the tokens used in CSV.
ordered_json number(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::NotANumber, "NaN in output");
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  return x;
}

ordered_json numbers(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

struct Context {
  const RunConfig& config;
  const CommandOverrides& overrides;
  GDSystem system;
  Observable observable;
  Eigen::VectorXd phi;

  Context(const RunConfig& c, const CommandOverrides& o)
      : config(c), overrides(o), system(system_from(c)), observable(observable_from(c, system)),
        phi(system.log_ratio()) {}

  int n() const { return overrides.n.value_or(config.fine.n); }
  double radius() const { return overrides.radius.value_or(config.fine.radius); }
  bool measure() const { return config.observable.kind == ObservableKind::Measure; }

  std::vector<double> q_values() const {
    if (overrides.q) return {*overrides.q};
    return config.q_values();
  }

  bool constant_ratio() const { return (system.r.array() == system.r(0)).all(); }

  // Scalar tau(q) for the configured observable, plus the method used.
  TauResult tau(double q) const {
    if (observable_dimension(observable) != 1) {
      throw Error(ErrorCode::DomainError, "scalar q commands need a scalar observable");
    }
    const Eigen::VectorXd qv = Eigen::VectorXd::Constant(1, q);
    if (measure()) return tau_measure(system, q);
    if (const auto* l = std::get_if<LinearIntegral>(&observable); l && constant_ratio()) {
      return tau_linearized(system, l->f, qv);
    }
    return tau_empirical(system.graph, observable, phi, qv, n());
  }

  double alpha(double q) const {
    if (measure()) return alpha_of_q(system, q);
    return -(tau(q + kDifferenceStep).tau - tau(q - kDifferenceStep).tau) /
           (2.0 * kDifferenceStep);
  }

  std::vector<double> alpha_probes() const {
    if (overrides.alpha) return {*overrides.alpha};
    if (!config.fine.alpha.empty()) return config.fine.alpha;
    return {alpha(0.0), alpha(1.0), alpha(2.0)};
  }
};

std::string run_dim(const Context& ctx) {
  const RootResult root = bowen_root(ctx.system.graph, ctx.phi);
  std::ostringstream out;
  out << "dimension,residual,lo,hi\n"
      << format_number(root.root) << ',' << format_number(root.residual) << ','
      << format_number(root.lo) << ',' << format_number(root.hi) << '\n';
  return out.str();
}

std::string run_tau(const Context& ctx) {
  std::ostringstream out;
  out << "q,tau,method\n";
  for (double q : ctx.q_values()) {
    const TauResult t = ctx.tau(q);
    out << format_number(q) << ',' << format_number(t.tau) << ',' << to_string(t.method) << '\n';
  }
  return out.str();
}

std::string run_spectrum(const Context& ctx) {
  std::ostringstream out;
  out << "q,tau,alpha,f,method\n";
  for (double q : ctx.q_values()) {
    const TauResult t = ctx.tau(q);
    const double alpha = ctx.alpha(q);
    out << format_number(q) << ',' << format_number(t.tau) << ',' << format_number(alpha) << ','
        << format_number(q * alpha + t.tau) << ',' << to_string(t.method) << '\n';
  }
  return out.str();
}

std::string run_zeta(const Context& ctx) {
  const int dim = observable_dimension(ctx.observable);
  ordered_json entries = ordered_json::array();
  for (double q : ctx.q_values()) {
    const Eigen::VectorXd qv = Eigen::VectorXd::Constant(dim, q);
    std::vector<double> s_values = ctx.config.grid.s;
    if (s_values.empty()) s_values = {ctx.tau(q).tau + ctx.config.grid.s_offset};
    for (double s : s_values) {
      ordered_json entry;
      entry["q"] = number(q);
      entry["s"] = number(s);
      if (ctx.measure()) entry["closed_form"] = number(zeta_closed_form(ctx.system, q, s));
      const TruncationReport report = zeta_truncated(ctx.system.graph, ctx.observable, ctx.phi,
                                                     qv, s, ctx.config.grid.n_max);
      ordered_json tr;
      tr["n_max"] = report.n_max;
      tr["route"] = report.transfer_route ? "transfer-matrix" : "enumeration";
      tr["log_level"] = numbers(report.log_level);
      tr["log_partial"] = numbers(report.log_partial);
      tr["growth"] = numbers(report.growth);
      tr["growth_estimate"] = number(report.growth_estimate);
      tr["radius_estimate"] = number(report.radius_estimate);
      tr["converges"] = report.converges;
      tr["partial_sum"] = number(std::exp(report.log_partial.back()));
      entry["truncation"] = tr;
      entries.push_back(entry);
    }
  }
  ordered_json root;
  root["command"] = "zeta";
  root["entries"] = entries;
  return root.dump(2) + "\n";
}

std::vector<double> radii_for(const Context& ctx) {
  if (ctx.overrides.radius) return {*ctx.overrides.radius};
  if (!ctx.config.fine.radii.empty()) return ctx.config.fine.radii;
  const double r = ctx.config.fine.radius;
  return {4.0 * r, 2.0 * r, r};
}

std::string run_fine(const Context& ctx) {
  const std::vector<double> radii = radii_for(ctx);
  ordered_json targets = ordered_json::array();
  for (double alpha : ctx.alpha_probes()) {
    const Eigen::VectorXd point =
        Eigen::VectorXd::Constant(observable_dimension(ctx.observable), alpha);
    const ShrinkingTargetReport report =
        shrinking_target_fine(ctx.system.graph, ctx.observable, point, radii, ctx.phi, ctx.n());
    ordered_json t;
    t["alpha"] = number(alpha);
    t["n"] = ctx.n();
    t["monotone"] = report.monotone;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < report.estimates.size(); ++i) {
      const FineEstimate& e = report.estimates[i];
      ordered_json row;
      row["radius"] = number(report.radii[i]);
      row["value"] = number(e.value);
      row["count"] = e.count;
      row["residual"] = number(e.residual);
      rows.push_back(row);
    }
    t["estimates"] = rows;
    targets.push_back(t);
  }
  ordered_json root;
  root["command"] = "fine";
  root["targets"] = targets;
  return root.dump(2) + "\n";
}

std::string run_verify(const Context& ctx) {
  FormalismOptions options;
  options.n = ctx.n();
  options.radius = ctx.radius();
  options.tolerance = ctx.config.fine.tolerance;
  const std::vector<double> alphas = ctx.alpha_probes();
  const FormalismReport report =
      ctx.measure() ? verify_formalism(ctx.system, alphas, options)
                    : verify_formalism(ctx.system.graph, ctx.observable, ctx.phi,
                                       [&](double q) { return ctx.tau(q).tau; }, alphas, options);
  ordered_json probes = ordered_json::array();
  for (const FormalismProbe& p : report.probes) {
    ordered_json row;
    row["alpha"] = number(p.alpha);
    row["fine"] = number(p.fine);
    row["legendre_sup"] = number(p.legendre_sup);
    row["difference"] = number(p.difference);
    row["slack"] = number(p.slack);
    row["count"] = p.count;
    row["agreement"] = p.agreement;
    row["majorant"] = p.majorant;
    probes.push_back(row);
  }
  ordered_json root;
  root["command"] = "verify";
  root["n"] = report.n;
  root["radius"] = number(report.radius);
  root["tolerance"] = number(report.tolerance);
  root["all_majorant"] = report.all_majorant;
  root["all_agreement"] = report.all_agreement;
  root["probes"] = probes;
  return root.dump(2) + "\n";
}

std::string run_parry(const Context& ctx) {
  const auto& g = ctx.system.graph;
  const PerronData pd = perron_data(g);
  std::ostringstream out;
  out << "word,probability\n";
  WordEnumerator it(g, ctx.n());
  while (it.next()) {
    const auto w = it.word();
    for (std::size_t k = 0; k < w.size(); ++k) out << (k ? "-" : "") << w[k];
    out << ',' << format_number(parry_cylinder(g, pd, w)) << '\n';
  }
  return out.str();
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Domain: return kExitDomain;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

CommandResult run_command(std::string_view command, const RunConfig& config,
                          const CommandOverrides& overrides) {
  static const std::map<std::string_view, std::function<std::string(const Context&)>> kCommands = {
      {"dim", run_dim},       {"tau", run_tau},       {"spectrum", run_spectrum},
      {"zeta", run_zeta},     {"fine", run_fine},     {"verify", run_verify},
      {"parry", run_parry},
  };
  CommandResult result;
  const auto found = kCommands.find(command);
  if (found == kCommands.end()) {
    result.exit_code = kExitConfig;
    result.error = "unknown command '" + std::string(command) + "'";
    return result;
  }
  try {
    const Context ctx(config, overrides);
    result.output = found->second(ctx);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e);
    result.error = e.what();
    result.output.clear();
  }
  return result;
}

}  // namespace mfzeta
