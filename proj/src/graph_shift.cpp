#include "mfzeta/graph_shift.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "mfzeta/errors.hpp"
#include "mfzeta/perron.hpp"

namespace mfzeta {

DirectedMultigraph::DirectedMultigraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) {
    throw Error(ErrorCode::InvalidVertex, "negative vertex count");
  }
  out_.resize(static_cast<std::size_t>(vertex_count_));
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.from < 0 || ed.from >= vertex_count_ || ed.to < 0 ||
        ed.to >= vertex_count_) {
      throw Error(ErrorCode::InvalidVertex,
                  "edge " + std::to_string(e) + " references a missing vertex");
    }
    out_[static_cast<std::size_t>(ed.from)].push_back(e);
  }
}

DirectedMultigraph DirectedMultigraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const Edge& e : edges_) rev.push_back({e.to, e.from});
  return DirectedMultigraph(vertex_count_, std::move(rev));
}

DirectedMultigraph full_shift(int symbols) {
  return DirectedMultigraph(1, std::vector<Edge>(static_cast<std::size_t>(symbols), Edge{0, 0}));
}

namespace {

std::vector<bool> reachable_from(const DirectedMultigraph& g, VertexId start) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::queue<VertexId> frontier;
  frontier.push(start);
  seen[static_cast<std::size_t>(start)] = true;
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (EdgeId e : g.out_edges(v)) {
      const auto t = static_cast<std::size_t>(g.term(e));
      if (!seen[t]) {
        seen[t] = true;
        frontier.push(g.term(e));
      }
    }
  }
  return seen;
}

}  // namespace

void validate_graph(const DirectedMultigraph& g) {
  if (g.vertex_count() == 0 || g.edge_count() == 0) {
    throw Error(ErrorCode::EmptyGraph, "graph needs at least one vertex and one edge");
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).empty()) {
      throw Error(ErrorCode::DanglingVertex,
                  "vertex " + std::to_string(v) + " has no outgoing edge");
    }
  }
  const auto forward = reachable_from(g, 0);
  const auto backward = reachable_from(g.reversed(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!forward[static_cast<std::size_t>(v)] || !backward[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::NotStronglyConnected,
                  "vertex " + std::to_string(v) + " is not mutually reachable with vertex 0");
    }
  }
}

bool is_admissible(const DirectedMultigraph& g, std::span<const EdgeId> w) {
  if (w.empty()) return false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] < 0 || w[k] >= g.edge_count()) return false;
    if (k > 0 && g.term(w[k - 1]) != g.init(w[k])) return false;
  }
  return true;
}

VertexId word_init(const DirectedMultigraph& g, std::span<const EdgeId> w) {
  return g.init(w.front());
}

VertexId word_term(const DirectedMultigraph& g, std::span<const EdgeId> w) {
  return g.term(w.back());
}

WordEnumerator::WordEnumerator(const DirectedMultigraph& g, int n,
                               const Eigen::MatrixXd* tables)
    : g_(&g), n_(n) {
  if (n < 1) throw Error(ErrorCode::DomainError, "word length must be positive");
  if (tables != nullptr) {
    if (tables->rows() != g.edge_count()) {
      throw Error(ErrorCode::UnboundEdge, "table row count differs from edge count");
    }
    columns_ = tables->transpose();
  } else {
    columns_.resize(0, g.edge_count());
  }
  all_edges_.resize(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) all_edges_[static_cast<std::size_t>(e)] = e;
  pos_.assign(static_cast<std::size_t>(n), 0);
  word_.assign(static_cast<std::size_t>(n), 0);
  prefix_ = Eigen::MatrixXd::Zero(columns_.rows(), n + 1);
}

std::span<const EdgeId> WordEnumerator::candidates(int depth) const {
  if (depth == 0) return all_edges_;
  return g_->out_edges(g_->term(word_[static_cast<std::size_t>(depth - 1)]));
}

void WordEnumerator::place(int depth, std::size_t pos) {
  const auto d = static_cast<std::size_t>(depth);
  pos_[d] = pos;
  word_[d] = candidates(depth)[pos];
  prefix_.col(depth + 1) = prefix_.col(depth) + columns_.col(word_[d]);
}

bool WordEnumerator::next() {
  if (done_) return false;
  int depth = 0;
  if (started_) {
    depth = n_ - 1;
    while (depth >= 0 &&
           pos_[static_cast<std::size_t>(depth)] + 1 >= candidates(depth).size()) {
      --depth;
    }
    if (depth < 0) {
      done_ = true;
      return false;
    }
    place(depth, pos_[static_cast<std::size_t>(depth)] + 1);
    ++depth;
  } else {
    started_ = true;
    if (all_edges_.empty()) {
      done_ = true;
      return false;
    }
  }
  for (; depth < n_; ++depth) {
    if (candidates(depth).empty()) {
      throw Error(ErrorCode::DanglingVertex, "enumeration reached a vertex without exits");
    }
    place(depth, 0);
  }
  return true;
}

WordEnumerator enumerate_words(const DirectedMultigraph& g, int n) {
  return WordEnumerator(g, n);
}

std::vector<Word> collect_words(const DirectedMultigraph& g, int n) {
  std::vector<Word> out;
  WordEnumerator it(g, n);
  while (it.next()) out.emplace_back(it.word().begin(), it.word().end());
  return out;
}

IntMatrix incidence_matrix(const DirectedMultigraph& g) {
  IntMatrix b = IntMatrix::Zero(g.vertex_count(), g.vertex_count());
  for (const Edge& e : g.edges()) b(e.from, e.to) += 1;
  return b;
}

std::uint64_t word_count(const DirectedMultigraph& g, int n) {
  if (n < 1) throw Error(ErrorCode::DomainError, "word length must be positive");
  const IntMatrix b = incidence_matrix(g);
  const auto size = static_cast<std::size_t>(g.vertex_count());
  // x_i = number of words of the current length starting at vertex i.
  std::vector<std::uint64_t> x(size), y(size);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = static_cast<std::uint64_t>(g.out_edges(static_cast<VertexId>(i)).size());
  }
  for (int step = 1; step < n; ++step) {
    for (std::size_t i = 0; i < size; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < size; ++j) {
        const auto bij = static_cast<std::uint64_t>(
            b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        std::uint64_t term = 0;
        if (__builtin_mul_overflow(bij, x[j], &term) ||
            __builtin_add_overflow(acc, term, &acc)) {
          throw Error(ErrorCode::Overflow,
                      "word count at length " + std::to_string(n) + " exceeds 64 bits");
        }
      }
      y[i] = acc;
    }
    std::swap(x, y);
  }
  std::uint64_t total = 0;
  for (std::uint64_t xi : x) {
    if (__builtin_add_overflow(total, xi, &total)) {
      throw Error(ErrorCode::Overflow,
                  "word count at length " + std::to_string(n) + " exceeds 64 bits");
    }
  }
  return total;
}

PerronData perron_data(const DirectedMultigraph& g) {
  const Eigen::MatrixXd b = incidence_matrix(g).cast<double>();
  const auto pair = perron_pair(b);
  if (!pair.converged) {
    throw Error(ErrorCode::NoConvergence,
                "power iteration stalled; lambda=" + std::to_string(pair.lambda) +
                    " right residual=" + std::to_string(pair.right_residual) +
                    " left residual=" + std::to_string(pair.left_residual));
  }
  PerronData pd;
  pd.lambda = pair.lambda;
  pd.u = pair.left / pair.left.sum();
  pd.v = pair.right / pd.u.dot(pair.right);
  pd.u_residual = (b.transpose() * pd.u - pd.lambda * pd.u).lpNorm<Eigen::Infinity>();
  pd.v_residual = (b * pd.v - pd.lambda * pd.v).lpNorm<Eigen::Infinity>();
  return pd;
}

double parry_cylinder(const DirectedMultigraph& g, const PerronData& pd,
                      std::span<const EdgeId> w) {
  if (!is_admissible(g, w)) {
    throw Error(ErrorCode::InadmissibleWord, "word is not a path in the graph");
  }
  return pd.u(word_init(g, w)) * pd.v(word_term(g, w)) *
         std::pow(pd.lambda, -static_cast<double>(w.size()));
}

HigherBlock higher_block_recode(const DirectedMultigraph& g, int k,
                                std::span<const BlockTable> tables) {
  if (k < 2) throw Error(ErrorCode::DomainError, "block length must be at least 2");
  HigherBlock out;
  out.vertex_words = collect_words(g, k - 1);
  out.edge_words = collect_words(g, k);

  std::map<Word, VertexId> vertex_of;
  for (std::size_t i = 0; i < out.vertex_words.size(); ++i) {
    vertex_of.emplace(out.vertex_words[i], static_cast<VertexId>(i));
  }
  std::vector<Edge> edges;
  edges.reserve(out.edge_words.size());
  for (const Word& w : out.edge_words) {
    const Word head(w.begin(), w.end() - 1);
    const Word tail(w.begin() + 1, w.end());
    edges.push_back({vertex_of.at(head), vertex_of.at(tail)});
  }
  out.graph = DirectedMultigraph(static_cast<int>(out.vertex_words.size()), std::move(edges));

  for (const BlockTable& table : tables) {
    for (const auto& [key, value] : table) {
      if (static_cast<int>(key.size()) != k || !is_admissible(g, key)) {
        throw Error(ErrorCode::InadmissibleTableKey,
                    "table key is not an admissible word of length " + std::to_string(k));
      }
    }
    Eigen::VectorXd recoded(static_cast<Eigen::Index>(out.edge_words.size()));
    for (std::size_t e = 0; e < out.edge_words.size(); ++e) {
      const auto found = table.find(out.edge_words[e]);
      if (found == table.end()) {
        throw Error(ErrorCode::UnboundEdge,
                    "table has no value for block " + std::to_string(e));
      }
      recoded(static_cast<Eigen::Index>(e)) = found->second;
    }
    out.tables.push_back(std::move(recoded));
  }
  return out;
}

}  // namespace mfzeta
