#include "mfzeta/potentials.hpp"

#include <cmath>
#include <string>

#include "mfzeta/errors.hpp"

namespace mfzeta {

namespace {

constexpr double kRowSumTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_table(const DirectedMultigraph& g, const Eigen::MatrixXd& table,
                 const char* what) {
  if (table.rows() != g.edge_count() || table.cols() == 0) {
    throw Error(ErrorCode::UnboundEdge,
                std::string(what) + " table must have one row per edge");
  }
  if (!table.allFinite()) {
    throw Error(ErrorCode::InvalidObservable, std::string(what) + " table has non-finite values");
  }
}

}  // namespace

void check_potential(const DirectedMultigraph& g,
                     const Eigen::Ref<const Eigen::VectorXd>& pot) {
  if (pot.size() != g.edge_count()) {
    throw Error(ErrorCode::UnboundEdge,
                "potential has " + std::to_string(pot.size()) + " values for " +
                    std::to_string(g.edge_count()) + " edges");
  }
  if (!pot.allFinite()) {
    throw Error(ErrorCode::UnboundEdge, "potential has non-finite values");
  }
}

GDSystem build_system(DirectedMultigraph graph, Eigen::VectorXd r,
                      Eigen::VectorXd p, bool osc_asserted) {
  validate_graph(graph);
  if (r.size() != graph.edge_count() || p.size() != graph.edge_count()) {
    throw Error(ErrorCode::UnboundEdge, "r and p need one value per edge");
  }
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (!(r(e) > 0.0 && r(e) < 1.0)) {
      throw Error(ErrorCode::RatioOutOfRange,
                  "contraction ratio of edge " + std::to_string(e) + " not in (0,1)");
    }
    if (!(p(e) > 0.0 && p(e) <= 1.0)) {
      throw Error(ErrorCode::ProbabilityRowSum,
                  "probability of edge " + std::to_string(e) + " not in (0,1]");
    }
  }
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    double total = 0.0;
    for (EdgeId e : graph.out_edges(v)) total += p(e);
    if (std::abs(total - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::ProbabilityRowSum,
                  "probabilities leaving vertex " + std::to_string(v) +
                      " sum to " + std::to_string(total) + " (deficit " +
                      std::to_string(1.0 - total) + ")");
    }
  }
  return GDSystem{std::move(graph), std::move(r), std::move(p), osc_asserted};
}

double birkhoff_sum(const Eigen::Ref<const Eigen::VectorXd>& pot,
                    std::span<const EdgeId> w) {
  double sum = 0.0;
  for (EdgeId e : w) {
    if (e < 0 || e >= pot.size()) {
      throw Error(ErrorCode::UnboundEdge, "edge " + std::to_string(e) + " has no value");
    }
    sum += pot(e);
  }
  return sum;
}

Observable measure_observable(const GDSystem& system) {
  return MeasureRatio{system.log_probability(), system.log_ratio()};
}

void validate_observable(const DirectedMultigraph& g, const Observable& u) {
  std::visit(
      Overloaded{
          [&](const MeasureRatio& m) {
            check_table(g, m.psi, "psi");
            check_potential(g, m.phi);
            if (!(m.phi.array() < 0.0).all()) {
              throw Error(ErrorCode::InvalidObservable,
                          "measure-ratio denominator must be strictly negative");
            }
          },
          [&](const LinearIntegral& l) { check_table(g, l.f, "f"); },
          [&](const Composed& c) {
            check_table(g, c.phi_vec, "composed");
            const auto columns = c.phi_vec.cols();
            std::visit(
                Overloaded{
                    [](const IdentityMap&) {},
                    [&](const CoordinateRatio& q) {
                      if (q.numerator < 0 || q.numerator >= columns ||
                          q.denominator < 0 || q.denominator >= columns) {
                        throw Error(ErrorCode::InvalidObservable,
                                    "ratio coordinates out of range");
                      }
                    },
                    [&](const HolderProduct& q) {
                      if (q.s.size() == 0 || q.s.size() != q.t.size() ||
                          2 * q.s.size() != columns) {
                        throw Error(ErrorCode::InvalidObservable,
                                    "Holder-like product needs 2M columns and M exponents each");
                      }
                      if (!(q.s.array() > 0.0).all() || !(q.t.array() > 0.0).all()) {
                        throw Error(ErrorCode::InvalidObservable,
                                    "Holder-like exponents must be positive");
                      }
                      if (!(c.phi_vec.array() > 0.0).all()) {
                        throw Error(ErrorCode::InvalidObservable,
                                    "Holder-like tables must be strictly positive");
                      }
                    },
                },
                c.q);
          },
      },
      u);
}

int observable_dimension(const Observable& u) {
  return std::visit(
      Overloaded{
          [](const MeasureRatio& m) { return static_cast<int>(m.psi.cols()); },
          [](const LinearIntegral& l) { return static_cast<int>(l.f.cols()); },
          [](const Composed& c) {
            return std::holds_alternative<IdentityMap>(c.q)
                       ? static_cast<int>(c.phi_vec.cols())
                       : 1;
          },
      },
      u);
}

Eigen::MatrixXd observable_tables(const Observable& u) {
  return std::visit(
      Overloaded{
          [](const MeasureRatio& m) {
            Eigen::MatrixXd t(m.psi.rows(), m.psi.cols() + 1);
            t << m.psi, m.phi;
            return t;
          },
          [](const LinearIntegral& l) { return Eigen::MatrixXd(l.f); },
          [](const Composed& c) { return Eigen::MatrixXd(c.phi_vec); },
      },
      u);
}

Eigen::VectorXd observable_from_sums(const Observable& u,
                                     const Eigen::Ref<const Eigen::VectorXd>& sums,
                                     int n) {
  return std::visit(
      Overloaded{
          [&](const MeasureRatio& m) -> Eigen::VectorXd {
            const Eigen::Index dim = m.psi.cols();
            const double denom = sums(dim);
            if (denom == 0.0) {
              throw Error(ErrorCode::ZeroDenominator, "denominator Birkhoff sum is zero");
            }
            return sums.head(dim) / denom;
          },
          [&](const LinearIntegral&) -> Eigen::VectorXd { return sums / n; },
          [&](const Composed& c) -> Eigen::VectorXd {
            const Eigen::VectorXd x = sums / n;
            return std::visit(
                Overloaded{
                    [&](const IdentityMap&) -> Eigen::VectorXd { return x; },
                    [&](const CoordinateRatio& q) -> Eigen::VectorXd {
                      if (x(q.denominator) == 0.0) {
                        throw Error(ErrorCode::ZeroDenominator, "ratio denominator is zero");
                      }
                      return Eigen::VectorXd::Constant(1, x(q.numerator) / x(q.denominator));
                    },
                    [&](const HolderProduct& q) -> Eigen::VectorXd {
                      const Eigen::Index m = q.s.size();
                      // Work with logs: the tables are strictly positive.
                      const double log_num =
                          (q.s.array() * x.head(m).array().log()).sum();
                      const double log_den =
                          (q.t.array() * x.tail(m).array().log()).sum();
                      return Eigen::VectorXd::Constant(1, std::exp(log_num - log_den));
                    },
                },
                c.q);
          },
      },
      u);
}

Eigen::VectorXd observable_value(const DirectedMultigraph& g, const Observable& u,
                                 std::span<const EdgeId> w) {
  if (!is_admissible(g, w)) {
    throw Error(ErrorCode::InadmissibleWord, "word is not a path in the graph");
  }
  const Eigen::MatrixXd tables = observable_tables(u);
  if (tables.rows() != g.edge_count()) {
    throw Error(ErrorCode::UnboundEdge, "observable is bound to a different graph");
  }
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(tables.cols());
  for (EdgeId e : w) sums += tables.row(e).transpose();
  return observable_from_sums(u, sums, static_cast<int>(w.size()));
}

}  // namespace mfzeta
