#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <set>

#include "mfzeta/graph_shift.hpp"
#include "test_support.hpp"

using namespace mfzeta;
using namespace mfzeta::testing;

TEST_CASE("validate_graph accepts and rejects the basic shapes") {
  CHECK_NOTHROW(validate_graph(full_shift(2)));
  CHECK_NOTHROW(validate_graph(golden_graph()));
  CHECK_ERROR(validate_graph(DirectedMultigraph(2, {{0, 1}})), ErrorCode::DanglingVertex);
  CHECK_ERROR(validate_graph(DirectedMultigraph(2, {{0, 1}, {1, 1}})),
              ErrorCode::NotStronglyConnected);
  CHECK_ERROR(validate_graph(DirectedMultigraph(1, {})), ErrorCode::EmptyGraph);
  CHECK_ERROR(validate_graph(DirectedMultigraph(0, {})), ErrorCode::EmptyGraph);
  CHECK_ERROR(DirectedMultigraph(1, {{0, 3}}), ErrorCode::InvalidVertex);
}

TEST_CASE("enumerate_words streams Sigma_G^n in lexicographic order") {
  SUBCASE("full shift on two symbols") {
    const auto words = collect_words(full_shift(2), 3);
    CHECK(words.size() == 8);
    CHECK(std::is_sorted(words.begin(), words.end()));
  }
  SUBCASE("golden-mean graph at n=2, enumerated by hand") {
    const std::vector<Word> expected = {{0, 0}, {0, 1}, {1, 2}, {2, 0}, {2, 1}};
    CHECK(collect_words(golden_graph(), 2) == expected);
  }
  SUBCASE("n=1 is the edge list") {
    const auto words = collect_words(golden_graph(), 1);
    CHECK(words == std::vector<Word>{{0}, {1}, {2}});
  }
  SUBCASE("exhausted stream stays exhausted") {
    const auto one = full_shift(1);
    auto it = enumerate_words(one, 2);
    CHECK(it.next());
    CHECK_FALSE(it.next());
    CHECK_FALSE(it.next());
  }
  SUBCASE("attached tables carry Birkhoff sums") {
    Eigen::MatrixXd t(3, 1);
    t << 1.0, 10.0, 100.0;
    const auto g = golden_graph();
    WordEnumerator it(g, 3, &t);
    while (it.next()) {
      double expected = 0.0;
      for (EdgeId e : it.word()) expected += t(e, 0);
      CHECK(it.sums()(0) == expected);
    }
  }
}

TEST_CASE("word_count matches enumeration and 1^T B^n 1") {
  CHECK(word_count(full_shift(2), 10) == 1024);
  CHECK(word_count(golden_graph(), 1) == 3);
  CHECK(word_count(golden_graph(), 2) == 5);
  CHECK(word_count(golden_graph(), 3) == 8);
  CHECK(word_count(golden_graph(), 4) == 13);
  CHECK(word_count(full_shift(7), 1) == 7);
  CHECK_ERROR(word_count(full_shift(2), 64), ErrorCode::Overflow);
  CHECK(word_count(full_shift(2), 63) == (std::uint64_t{1} << 63));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sys = random_system(rng, 3, 3);
    const Eigen::MatrixXd b = incidence_matrix(sys.graph).cast<double>();
    Eigen::MatrixXd power = b;
    for (int n = 1; n <= 8; ++n) {
      const double via_matrix = power.sum();
      const auto counted = collect_words(sys.graph, n).size();
      CHECK(word_count(sys.graph, n) == counted);
      CHECK(static_cast<double>(counted) == via_matrix);
      power = power * b;
    }
  }
}

TEST_CASE("incidence_matrix counts parallel edges") {
  CHECK(incidence_matrix(full_shift(3)) == IntMatrix::Constant(1, 1, 3));
  IntMatrix golden(2, 2);
  golden << 1, 1, 1, 0;
  CHECK(incidence_matrix(golden_graph()) == golden);
  const DirectedMultigraph g(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}, {2, 2}});
  CHECK(incidence_matrix(g.reversed()) == incidence_matrix(g).transpose());
}

TEST_CASE("perron_data on the golden-mean graph") {
  const PerronData pd = perron_data(golden_graph());
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(pd.lambda == doctest::Approx(phi).epsilon(1e-14));
  // B is symmetric, so both eigenvectors are multiples of (phi, 1).
  const double c = (phi + 1.0) / (phi * phi + 1.0);
  CHECK(pd.u(0) == doctest::Approx(phi / (phi + 1.0)).epsilon(1e-13));
  CHECK(pd.v(0) == doctest::Approx(c * phi).epsilon(1e-13));
  CHECK(pd.v(1) == doctest::Approx(c).epsilon(1e-13));
  CHECK(pd.u.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pd.u.dot(pd.v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pd.u_residual <= 1e-12 * pd.lambda);
  CHECK(pd.v_residual <= 1e-12 * pd.lambda);

  const double e1 = parry_cylinder(golden_graph(), pd, Word{0});
  CHECK(e1 == doctest::Approx(pd.u(0) * pd.v(0) / phi).epsilon(1e-14));
}

TEST_CASE("perron_data on the full shift and a periodic graph") {
  const PerronData full = perron_data(full_shift(2));
  CHECK(full.lambda == 2.0);
  CHECK(full.u(0) == 1.0);
  CHECK(full.v(0) == 1.0);

  // Period 3: plain power iteration would cycle forever.
  const DirectedMultigraph cycle(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
  const PerronData pd = perron_data(cycle);
  CHECK(pd.lambda == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));
  CHECK(pd.v_residual <= 1e-12 * pd.lambda);
}

TEST_CASE("property: Perron root brackets and residuals on random graphs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = random_system(rng, 5, 8);
    const PerronData pd = perron_data(sys.graph);
    const Eigen::MatrixXd b = incidence_matrix(sys.graph).cast<double>();
    CHECK(pd.lambda <= b.rowwise().sum().maxCoeff() + 1e-12);
    CHECK(pd.lambda >= b.rowwise().sum().minCoeff() - 1e-12);
    CHECK(pd.u_residual <= 1e-12 * pd.lambda);
    CHECK(pd.v_residual <= 1e-12 * pd.lambda);
    CHECK((pd.u.array() > 0).all());
    CHECK((pd.v.array() > 0).all());
    // Cross-check against a dense eigensolver.
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(b).eigenvalues();
    CHECK(pd.lambda == doctest::Approx(ev.cwiseAbs().maxCoeff()).epsilon(1e-10));
  }
}

TEST_CASE("property: Parry measure is normalized and Kolmogorov consistent") {
  std::mt19937 rng(5);
  std::vector<DirectedMultigraph> graphs = {full_shift(2), golden_graph()};
  for (int i = 0; i < 6; ++i) graphs.push_back(random_system(rng, 3, 3).graph);
  for (const auto& g : graphs) {
    const PerronData pd = perron_data(g);
    for (int n = 1; n <= 8; ++n) {
      double total = 0.0;
      auto it = enumerate_words(g, n);
      while (it.next()) {
        const auto w = it.word();
        const double mass = parry_cylinder(g, pd, w);
        total += mass;
        double children = 0.0;
        Word longer(w.begin(), w.end());
        longer.push_back(0);
        for (EdgeId e : g.out_edges(word_term(g, w))) {
          longer.back() = e;
          children += parry_cylinder(g, pd, longer);
        }
        CHECK(std::abs(children - mass) <= 1e-12);
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }

  const PerronData full = perron_data(full_shift(2));
  CHECK(parry_cylinder(full_shift(2), full, Word{1, 0, 1}) == 0.125);
  CHECK_ERROR(parry_cylinder(golden_graph(), perron_data(golden_graph()), Word{1, 1}),
              ErrorCode::InadmissibleWord);
}

TEST_CASE("higher_block_recode") {
  const auto g = full_shift(2);
  BlockTable table;
  for (const Word& w : collect_words(g, 2)) table[w] = 10.0 * w[0] + w[1];

  const HigherBlock hb = higher_block_recode(g, 2, std::span(&table, 1));
  CHECK(hb.graph.vertex_count() == 2);
  CHECK(hb.graph.edge_count() == 4);
  CHECK_NOTHROW(validate_graph(hb.graph));

  SUBCASE("level n of the recoding counts level n+k-1 of the original") {
    const auto golden = golden_graph();
    for (int k = 2; k <= 4; ++k) {
      const HigherBlock rec = higher_block_recode(golden, k, {});
      for (int n = 1; n <= 6; ++n) {
        CHECK(collect_words(rec.graph, n).size() == collect_words(golden, n + k - 1).size());
      }
    }
  }

  SUBCASE("depth-one sums on the recoding equal depth-two sums on the original") {
    for (const Word& w : collect_words(g, 5)) {
      double direct = 0.0;
      for (std::size_t j = 0; j + 1 < w.size(); ++j) direct += table.at({w[j], w[j + 1]});
      // Map consecutive 2-blocks of w to recoded edge ids.
      Word recoded;
      for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        const Word block{w[j], w[j + 1]};
        const auto pos = std::find(hb.edge_words.begin(), hb.edge_words.end(), block);
        recoded.push_back(static_cast<EdgeId>(pos - hb.edge_words.begin()));
      }
      CHECK(is_admissible(hb.graph, recoded));
      double via_recode = 0.0;
      for (EdgeId e : recoded) via_recode += hb.tables[0](e);
      CHECK(via_recode == direct);
    }
  }

  SUBCASE("errors") {
    BlockTable bad = table;
    bad[{1, 1, 1}] = 0.0;
    CHECK_ERROR(higher_block_recode(g, 2, std::span(&bad, 1)), ErrorCode::InadmissibleTableKey);
    BlockTable inadmissible;
    for (const Word& w : collect_words(golden_graph(), 2)) inadmissible[w] = 1.0;
    inadmissible[{1, 1}] = 1.0;  // edge 1 ends at vertex 1, edge 1 starts at vertex 0
    CHECK_ERROR(higher_block_recode(golden_graph(), 2, std::span(&inadmissible, 1)),
                ErrorCode::InadmissibleTableKey);
    BlockTable partial;
    partial[{0, 0}] = 1.0;
    CHECK_ERROR(higher_block_recode(g, 2, std::span(&partial, 1)), ErrorCode::UnboundEdge);
  }
}
