#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace mfzeta {

using VertexId = int;
using EdgeId = int;

/// A finite admissible string of edges, ids in traversal order.
using Word = std::vector<EdgeId>;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
};

/// Finite directed multigraph with dense vertex ids 0..|V|-1 and dense edge ids
/// 0..|E|-1 (the position in the edge list).
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;
  DirectedMultigraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }
  VertexId init(EdgeId e) const { return edge(e).from; }
  VertexId term(EdgeId e) const { return edge(e).to; }

  /// Edges leaving `v`, in increasing id order.
  std::span<const EdgeId> out_edges(VertexId v) const {
    return out_[static_cast<std::size_t>(v)];
  }

  /// Same vertices, every edge reversed, ids preserved.
  DirectedMultigraph reversed() const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
};

/// One vertex carrying `symbols` self-loops.
DirectedMultigraph full_shift(int symbols);

/// Throws EmptyGraph, DanglingVertex or NotStronglyConnected.
void validate_graph(const DirectedMultigraph& g);

bool is_admissible(const DirectedMultigraph& g, std::span<const EdgeId> w);
VertexId word_init(const DirectedMultigraph& g, std::span<const EdgeId> w);
VertexId word_term(const DirectedMultigraph& g, std::span<const EdgeId> w);

/// Streams the words of length n in lexicographic order of edge ids. When a
/// table matrix (|E| rows, one column per potential) is attached, the Birkhoff
/// sums of every column along the current word are maintained incrementally.
///
/// The enumerator keeps pointers to `g` and `tables`; both must outlive it.
/// Single consumer.
class WordEnumerator {
 public:
  WordEnumerator(const DirectedMultigraph& g, int n,
                 const Eigen::MatrixXd* tables = nullptr);
  WordEnumerator(DirectedMultigraph&&, int, const Eigen::MatrixXd* = nullptr) = delete;

  /// Moves to the next word; the first call positions on the first word.
  /// Returns false once the stream is exhausted.
  bool next();

  std::span<const EdgeId> word() const { return word_; }
  int length() const { return n_; }

  /// Per-column sums over the current word (empty without tables).
  Eigen::Ref<const Eigen::VectorXd> sums() const {
    return prefix_.col(static_cast<Eigen::Index>(n_));
  }

 private:
  std::span<const EdgeId> candidates(int depth) const;
  void place(int depth, std::size_t pos);

  const DirectedMultigraph* g_;
  int n_;
  Eigen::MatrixXd columns_;  // tables transposed, one column per edge
  std::vector<EdgeId> all_edges_;
  std::vector<std::size_t> pos_;
  Word word_;
  Eigen::MatrixXd prefix_;  // column d holds sums over the first d edges
  bool started_ = false;
  bool done_ = false;
};

WordEnumerator enumerate_words(const DirectedMultigraph& g, int n);
WordEnumerator enumerate_words(DirectedMultigraph&&, int) = delete;

/// Materialized enumeration; intended for small n.
std::vector<Word> collect_words(const DirectedMultigraph& g, int n);

/// b(i,j) = number of edges from i to j.
IntMatrix incidence_matrix(const DirectedMultigraph& g);

/// |Sigma_G^n| = 1^T B^n 1 in exact arithmetic; throws Overflow.
std::uint64_t word_count(const DirectedMultigraph& g, int n);

/// Perron root of B with uB = lambda u, Bv = lambda v, sum(u) = 1 and
/// u.v = 1.
struct PerronData {
  double lambda = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double u_residual = 0.0;  // ||uB - lambda u||_inf
  double v_residual = 0.0;  // ||Bv - lambda v||_inf
};

PerronData perron_data(const DirectedMultigraph& g);

/// Parry measure of the cylinder [w]: u_{i(w)} v_{t(w)} lambda^{-|w|}.
double parry_cylinder(const DirectedMultigraph& g, const PerronData& pd,
                      std::span<const EdgeId> w);

using BlockTable = std::map<Word, double>;

struct HigherBlock {
  DirectedMultigraph graph;
  std::vector<Word> vertex_words;  // (k-1)-words, indexed by new vertex id
  std::vector<Word> edge_words;    // k-words, indexed by new edge id
  std::vector<Eigen::VectorXd> tables;
};

/// Higher-block presentation: vertices are the (k-1)-words, edges the k-words.
/// Each input table, keyed by k-words, becomes a depth-one table on the new
/// edges.
HigherBlock higher_block_recode(const DirectedMultigraph& g, int k,
                                std::span<const BlockTable> tables);

}  // namespace mfzeta
