#include <doctest.h>

#include "hgatelda/errors.hpp"
#include "hgatelda/similarity.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hgatelda;

TEST_SUITE_BEGIN("similarity");

namespace {
double contribution_of(const ContributionMap& map, std::size_t node) {
  for (const auto& [m, v] : map.values) {
    if (m == node) return v;
  }
  FAIL("node not in contribution map");
  return -1.0;
}
}  // namespace

TEST_CASE("contribution on isolated, chain and diamond DAGs") {
  const DiseaseDag isolated(1, {});
  const ContributionMap solo = contribution(isolated, 0, 0.5);
  CHECK(solo.values.size() == 1);
  CHECK(contribution_of(solo, 0) == 1.0);

  // chain d -> p -> g at delta 0.5
  const DiseaseDag chain(3, {{0, 1}, {1, 2}});
  const ContributionMap c = contribution(chain, 0, 0.5);
  CHECK(contribution_of(c, 0) == 1.0);
  CHECK(contribution_of(c, 1) == 0.5);
  CHECK(contribution_of(c, 2) == 0.25);

  // diamond: g's best child is either parent, both at 0.5
  const DiseaseDag diamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const ContributionMap d = contribution(diamond, 0, 0.5);
  CHECK(contribution_of(d, 3) == 0.25);

  CHECK_THROWS_AS(contribution(chain, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(contribution(chain, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(contribution(chain, 9, 0.5), std::invalid_argument);
}

TEST_CASE("contribution equals delta^depth on a pure chain") {
  const double delta = 0.37;
  const std::size_t n = 6;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  const DiseaseDag chain(n, edges);
  const ContributionMap map = contribution(chain, 0, delta);
  double expected = 1.0;
  for (std::size_t depth = 0; depth < n; ++depth) {
    CHECK(contribution_of(map, depth) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(contribution_of(map, depth) <= 1.0);
    expected *= delta;
  }
}

TEST_CASE("semantic_value sums the decayed contributions") {
  const DiseaseDag isolated(1, {});
  CHECK(semantic_value(isolated, 0, 0.5) == 1.0);

  const DiseaseDag one_parent(2, {{0, 1}});
  CHECK(semantic_value(one_parent, 0, 0.5) == doctest::Approx(1.5).epsilon(1e-12));

  const DiseaseDag chain(3, {{0, 1}, {1, 2}});
  CHECK(semantic_value(chain, 0, 0.5) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("disease similarity: diagonal, siblings, disjoint components") {
  testsupport::SiblingFixture fx;
  const SimilarityMatrix ds = disease_similarity(fx.dag, 0.5);
  for (std::size_t d = 0; d < 4; ++d) CHECK(ds(d, d) == 1.0);
  // siblings share only the root: (0.5 + 0.5) / (1.5 + 1.5)
  CHECK(ds(1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ds(2, 1) == ds(1, 2));
  // d4 is isolated: no shared ancestors with anything
  CHECK(ds(3, 0) == 0.0);
  CHECK(ds(3, 1) == 0.0);
}

TEST_CASE("lncrna similarity: diagonal, sibling-derived value, empty sets") {
  testsupport::SiblingFixture fx;
  const SimilarityMatrix ds = disease_similarity(fx.dag, 0.5);
  const SimilarityMatrix lfs = lncrna_functional_similarity(ds, fx.ld);
  CHECK(lfs.size() == 3);
  CHECK(lfs(0, 0) == 1.0);
  // D(l1)={d2}, D(l2)={d3}: (DS(d3,d2) + DS(d2,d3)) / 2 = 1/3
  CHECK(lfs(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // l3 has no associations
  CHECK(lfs(2, 0) == 0.0);
  CHECK(lfs(2, 1) == 0.0);
  CHECK(lfs(2, 2) == 1.0);
}

TEST_CASE("lncrna similarity rejects axis mismatches") {
  testsupport::SiblingFixture fx;
  const SimilarityMatrix ds = disease_similarity(fx.dag, 0.5);
  const AssociationMatrix wrong(AssociationRole::LD, 3, 7);
  CHECK_THROWS_AS(lncrna_functional_similarity(ds, wrong), std::invalid_argument);
  const AssociationMatrix ml(AssociationRole::ML, 3, 4);
  CHECK_THROWS_AS(lncrna_functional_similarity(ds, ml), std::invalid_argument);
}

TEST_CASE("similarity invariants and the brute-force oracle on random instances") {
  SeededRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t q = 3 + rng.uniform_index(6);
    const std::size_t p = 2 + rng.uniform_index(7);
    const DiseaseDag dag = testsupport::random_dag(q, rng);
    const AssociationMatrix ld = testsupport::random_ld(p, q, rng);
    const SimilarityMatrix ds = disease_similarity(dag, 0.5);
    const SimilarityMatrix lfs = lncrna_functional_similarity(ds, ld);

    for (std::size_t i = 0; i < q; ++i) {
      CHECK(ds(i, i) == 1.0);
      for (std::size_t j = 0; j < q; ++j) {
        CHECK(ds(i, j) == ds(j, i));
        CHECK(ds(i, j) >= 0.0);
        CHECK(ds(i, j) <= 1.0);
      }
    }
    for (std::size_t i = 0; i < p; ++i) {
      CHECK(lfs(i, i) == 1.0);
      for (std::size_t j = 0; j < p; ++j) {
        CHECK(lfs(i, j) == lfs(j, i));
        CHECK(lfs(i, j) >= 0.0);
        CHECK(lfs(i, j) <= 1.0);
        if (i != j) {
          const double oracle = testsupport::lfs_bruteforce_entry(ds, ld, i, j);
          CHECK(lfs(i, j) == doctest::Approx(oracle).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("LFS depends only on the association sets and DS") {
  // removing an edge of l3 must not change LFS(l1, l2)
  SeededRng rng(23);
  const DiseaseDag dag = testsupport::random_dag(6, rng);
  const SimilarityMatrix ds = disease_similarity(dag, 0.5);
  AssociationMatrix ld = testsupport::random_ld(4, 6, rng, 0.5);
  ld.set(3, 0, true);
  const SimilarityMatrix before = lncrna_functional_similarity(ds, ld);
  ld.set(3, 0, false);
  const SimilarityMatrix after = lncrna_functional_similarity(ds, ld);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(before(i, j) == after(i, j));
}

TEST_SUITE_END();
