#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "utree/invariants.hpp"
#include "utree/pte.hpp"
#include "utree/tree.hpp"
#include "helpers.hpp"

using namespace utree;
using testutil::make_path;

namespace {

std::vector<int> all_edges(const Tree& t) {
  std::vector<int> ids(t.edge_count());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

}  // namespace

TEST_CASE("lambda and rank") {
  const WeightedGraph p3 = make_path(3).as_weighted_graph();
  CHECK(lambda_of(p3, std::vector<int>{}) == Partition({1, 1, 1}));
  CHECK(lambda_of(p3, std::vector<int>{0, 1}) == Partition({3}));
  CHECK(lambda_of(p3, std::vector<int>{0}) == Partition({2, 1}));
  CHECK(rank(p3, std::vector<int>{}) == 0);
  CHECK(rank(p3, std::vector<int>{0, 1}) == 2);
  CHECK_THROWS_AS(lambda_of(p3, std::vector<int>{5}), std::invalid_argument);

  const WeightedGraph triangle(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(rank(triangle, std::vector<int>{0, 1, 2}) == 2);

  // weighted components
  const WeightedGraph wp3(3, {{0, 1}, {1, 2}}, {4, 1, 2});
  CHECK(lambda_of(wp3, std::vector<int>{1}) == Partition({4, 3}));
}

TEST_CASE("w-polynomial states model") {
  const WeightedGraph dot(1, {}, {5});
  PartitionPolynomial expect_dot;
  expect_dot.add(Partition({5}), 1);
  CHECK(w_polynomial(dot) == expect_dot);

  const WeightedGraph edge(2, {{0, 1}});
  PartitionPolynomial expect_edge;
  expect_edge.add(Partition({1, 1}), 1);
  expect_edge.add(Partition({2}), 1);
  CHECK(w_polynomial(edge) == expect_edge);

  const WeightedGraph triangle(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto w = w_polynomial(triangle);
  CHECK(w.coefficient(Partition({3}), 1) == 1);  // A = E: |A|-r = 1
  CHECK(w.coefficient(Partition({3}), 0) == 3);  // the three 2-edge subsets
  CHECK(w.coefficient(Partition({2, 1}), 0) == 3);
  CHECK(w.coefficient(Partition({1, 1, 1}), 0) == 1);
  CHECK(w.total_mass() == 8);
}

TEST_CASE("u-polynomial examples") {
  PartitionPolynomial expect;
  expect.add(Partition({3}), 1);
  expect.add(Partition({2, 1}), 2);
  expect.add(Partition({1, 1, 1}), 1);
  CHECK(u_polynomial(make_path(3)) == expect);

  PartitionPolynomial dot;
  dot.add(Partition({1}), 1);
  CHECK(u_polynomial(Tree(1, {})) == dot);

  PartitionPolynomial p2;
  p2.add(Partition({2}), 1);
  p2.add(Partition({1, 1}), 1);
  CHECK(u_polynomial(make_path(2)) == p2);
}

TEST_CASE("u_k restriction") {
  const Tree t = build_pte_tree(PteShape(2, {1, 1}));

  PartitionPolynomial top;
  top.add(Partition({15}), 1);
  CHECK(u_k_polynomial(t, 0) == top);

  PartitionPolynomial p3k1;
  p3k1.add(Partition({3}), 1);
  p3k1.add(Partition({2, 1}), 2);
  CHECK(u_k_polynomial(make_path(3), 1) == p3k1);

  const Tree t2 = build_pte_tree(PteShape(2, {2, 0}));
  CHECK(u_k_polynomial(t, 2) == u_k_polynomial(t2, 2));
  CHECK(u_k_polynomial(t, 3) != u_k_polynomial(t2, 3));

  // monotone inclusion: U_k terms sit inside U_{k+1} with <= coefficients
  for (int k = 0; k < 4; ++k) {
    const auto uk = u_k_polynomial(t, k);
    const auto uk1 = u_k_polynomial(t, k + 1);
    for (const auto& [key, c] : uk.terms())
      REQUIRE(c <= uk1.coefficient(key.first, key.second));
  }
}

TEST_CASE("u_f restriction") {
  const Tree t = build_pte_tree(PteShape(2, {1, 1}));

  PartitionPolynomial empty_f;
  empty_f.add(Partition({15}), 1);
  CHECK(u_f_polynomial(t, std::vector<int>{}) == empty_f);

  CHECK(u_f_polynomial(t, all_edges(t)) == u_polynomial(t));

  PartitionPolynomial core_expect;
  core_expect.add(Partition({15}), 1);
  core_expect.add(Partition({8, 7}), 2);
  core_expect.add(Partition({7, 7, 1}), 1);
  CHECK(u_f_polynomial(t, t.core_edges()) == core_expect);
}

TEST_CASE("coefficients") {
  const Tree t = build_pte_tree(PteShape(2, {1, 1}));
  const Tree t2 = build_pte_tree(PteShape(2, {2, 0}));
  CHECK(coefficient(u_k_polynomial(t, 2), Partition({15})) == 1);
  CHECK(coefficient(u_k_polynomial(t, 2), Partition({14})) == 0);

  // Predicted monomial (N-3a-1, 3a-1-2k, 2^(k+1)). With alpha=2, k=1 the
  // middle part 3a-1-2k = 3 collides with whole-unit cuts, so both trees
  // carry 4 extra subsets beyond sum_i C(p_i, k+1); the difference matches
  // the closed form 0 vs 1 exactly.
  const Partition target({8, 3, 2, 2});
  CHECK(coefficient(u_polynomial(t), target) == 4);
  CHECK(coefficient(u_polynomial(t2), target) == 5);
  CHECK(u_coefficient_direct(t, target) == 4);
  CHECK(u_coefficient_direct(t2, target) == 5);

  // Collision-free instance: alpha=6 pair (1,2,6) vs (0,4,5) of degree 2;
  // the coefficients equal sum_i C(p_i, 3) on the nose.
  const Partition t6target({39, 13, 2, 2, 2});
  const Tree t6a = build_pte_tree(PteShape(6, {1, 2, 6}));
  const Tree t6b = build_pte_tree(PteShape(6, {0, 4, 5}));
  CHECK(u_coefficient_direct(t6a, t6target) ==
        binomial(1, 3) + binomial(2, 3) + binomial(6, 3));
  CHECK(u_coefficient_direct(t6b, t6target) ==
        binomial(0, 3) + binomial(4, 3) + binomial(5, 3));

  // direct counting agrees with the full polynomial on random trees
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    const Tree rt = testutil::random_tree(rng, 3 + static_cast<int>(rng() % 9));
    const auto full = u_polynomial(rt);
    for (const auto& [key, c] : full.terms())
      REQUIRE(u_coefficient_direct(rt, key.first) == c);
    REQUIRE(u_coefficient_direct(rt, Partition({rt.vertex_count() + 1})) == 0);
  }
}

TEST_CASE("mass identity and term shapes") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 15; ++it) {
    const Tree t = testutil::random_tree(rng, 2 + static_cast<int>(rng() % 12));
    const int E = t.edge_count();
    for (int k = 0; k <= std::min(E, 4); ++k) {
      BigInt expect = 0;
      for (int i = 0; i <= std::min(k, E); ++i) expect += binomial(E, i);
      REQUIRE(u_k_polynomial(t, k).total_mass() == expect);
    }
    // per-size layers: every term has |A|+1 parts summing to N
    const auto layers = u_polynomials_by_size(t, std::min(E, 5));
    for (int m = 0; m < static_cast<int>(layers.size()); ++m)
      for (const auto& [key, c] : layers[m].terms()) {
        REQUIRE(static_cast<int>(key.first.size()) == m + 1);
        REQUIRE(key.first.sum() == t.vertex_count());
        REQUIRE(key.second == 0);
      }
  }
}

TEST_CASE("u equals w on unit-weight trees") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 40; ++it) {
    const Tree t = testutil::random_tree(rng, 2 + static_cast<int>(rng() % 12));
    const auto u = u_polynomial(t);
    const auto w = w_polynomial(t.as_weighted_graph());
    REQUIRE(u == w);
    REQUIRE(w.pure_x());
  }
}

TEST_CASE("u_f equals w of the contraction") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 40; ++it) {
    const Tree t = testutil::random_tree(rng, 2 + static_cast<int>(rng() % 12));
    const WeightedTree wt(t, testutil::random_weights(rng, t.vertex_count()));
    const auto f = testutil::random_subtree_edges(rng, t);
    const auto lhs = u_f_polynomial(wt, f);
    const auto rhs = w_polynomial(contract_to(wt, f).as_weighted_graph());
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("states model specialization on cyclic graphs") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 20; ++it) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const auto g = testutil::random_cyclic_graph(rng, n, 2);
    const auto w = w_polynomial(g);
    BigInt expect = BigInt(1) << g.edge_count();
    REQUIRE(w.evaluate_all_x1(2) == expect);
  }
}

TEST_CASE("thread count does not change results") {
  const Tree t = build_pte_tree(PteShape(2, {2, 0}));
  EnumOptions serial;
  const auto expect = u_k_polynomial(t, 4, serial).canonical_json();
  for (int threads : {2, 3, 5, 8, 16}) {
    EnumOptions parallel;
    parallel.threads = threads;
    REQUIRE(u_k_polynomial(t, 4, parallel).canonical_json() == expect);
    REQUIRE(u_coefficient_direct(t, Partition({8, 3, 2, 2}), serial) ==
            u_coefficient_direct(t, Partition({8, 3, 2, 2}), parallel));
  }
}

TEST_CASE("full U equals the top restriction") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 10; ++it) {
    const Tree t = testutil::random_tree(rng, 2 + static_cast<int>(rng() % 10));
    REQUIRE(u_polynomial(t) == u_k_polynomial(t, t.edge_count()));
  }
}

TEST_CASE("core restrictions agree across =_1 pairs") {
  // p =_1 p' makes both core restrictions and their complements agree
  const auto pairs = search_pte(2, 1, 3);
  REQUIRE(!pairs.certificates.empty());
  auto complement = [](const Tree& tree) {
    std::vector<bool> core(tree.edge_count(), false);
    for (int e : tree.core_edges()) core[e] = true;
    std::vector<int> out;
    for (int e = 0; e < tree.edge_count(); ++e)
      if (!core[e]) out.push_back(e);
    return out;
  };
  for (const auto& cert : pairs.certificates) {
    const int alpha = static_cast<int>(
        std::max(cert.a.entries().front(), cert.b.entries().front()));
    std::vector<int> pa(cert.a.entries().begin(), cert.a.entries().end());
    std::vector<int> pb(cert.b.entries().begin(), cert.b.entries().end());
    const Tree ta = build_pte_tree(PteShape(alpha, pa));
    const Tree tb = build_pte_tree(PteShape(alpha, pb));
    REQUIRE(u_f_polynomial(ta, ta.core_edges()) ==
            u_f_polynomial(tb, tb.core_edges()));
    REQUIRE(u_f_polynomial(ta, complement(ta)) ==
            u_f_polynomial(tb, complement(tb)));
  }
}

TEST_CASE("budgets are enforced") {
  const Tree big = make_path(33);  // 32 edges
  CHECK_THROWS_AS(u_polynomial(big), BudgetError);
  CHECK_THROWS_AS(w_polynomial(big.as_weighted_graph()), BudgetError);
  CHECK_THROWS_AS(u_f_polynomial(big, all_edges(big)), BudgetError);
  EnumOptions tight;
  tight.max_subsets = 10;
  CHECK_THROWS_AS(u_k_polynomial(make_path(12), 3, tight), BudgetError);
  CHECK_NOTHROW(u_k_polynomial(make_path(12), 3));
}
