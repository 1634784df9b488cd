#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfzeta/potentials.hpp"

namespace mfzeta {

struct EdgeSpec {
  int id = 0;
  std::string from;
  std::string to;
  double r = 0.0;
  double p = 0.0;
  bool operator==(const EdgeSpec&) const = default;
};

struct GraphSpec {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  bool osc = false;
  bool operator==(const GraphSpec&) const = default;
};

enum class ObservableKind { Measure, Linear, Ratio, Composed };

/// Tables are stored component-major: tables[j][e] is component j on edge e.
struct ObservableSpec {
  ObservableKind kind = ObservableKind::Measure;
  std::vector<std::vector<double>> f;        // linear
  std::vector<std::vector<double>> psi;      // ratio numerators
  std::vector<double> phi;                   // ratio denominator; empty means log r
  std::vector<std::vector<double>> phi_vec;  // composed
  std::string map = "identity";              // composed: identity | ratio | holder
  int numerator = 0;
  int denominator = 1;
  std::vector<double> s;
  std::vector<double> t;
  bool operator==(const ObservableSpec&) const = default;
};

struct GridSpec {
  double q_min = -5.0;
  double q_max = 5.0;
  int steps = 101;
  std::vector<double> q;  // explicit list; overrides the range when non-empty
  std::vector<double> s;  // zeta: explicit s values; empty means tau(q) + s_offset
  double s_offset = 0.5;
  int n_max = 60;
  bool operator==(const GridSpec&) const = default;
};

struct FineSpec {
  int n = 14;
  std::vector<double> alpha;
  double radius = 0.05;
  std::vector<double> radii;
  double tolerance = 0.1;
  bool operator==(const FineSpec&) const = default;
};

struct OutputSpec {
  std::string path;
  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  GraphSpec graph;
  ObservableSpec observable;
  GridSpec grid;
  FineSpec fine;
  OutputSpec output;
  bool operator==(const RunConfig&) const = default;

  /// q values of the grid in ascending order (or the explicit list).
  std::vector<double> q_values() const;
};

/// Parses and fully validates a JSON configuration. Throws ParseError (with
/// line and column), SchemaError (with the offending field path) or
/// SemanticError (graph/system/observable validation).
RunConfig parse_config(std::string_view text);

/// Canonical JSON text; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

GDSystem system_from(const RunConfig& config);
Observable observable_from(const RunConfig& config, const GDSystem& system);

/// 17 significant digits; infinities as `inf` / `-inf`; throws NotANumber on NaN.
std::string format_number(double x);

}  // namespace mfzeta
