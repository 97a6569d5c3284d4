#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "utree/invariants.hpp"
#include "utree/io.hpp"
#include "helpers.hpp"

using namespace utree;

TEST_CASE("tree json round-trip") {
  const Tree t = build_pte_tree(PteShape(2, {1, 1}));
  const std::string js = tree_to_json(t);
  CHECK(js.find("\"n\":15") == 1);
  CHECK(js.find("\"core\":[0,7]") != std::string::npos);
  CHECK(js.find("\"weights\"") == std::string::npos);

  const WeightedTree back = tree_from_json(js);
  CHECK(back.tree().edges() == t.edges());
  CHECK(back.tree().core_edges() == t.core_edges());
  CHECK(back.weights() == std::vector<int>(15, 1));
  CHECK(tree_to_json(back) == js);

  std::mt19937_64 rng(47);
  for (int it = 0; it < 20; ++it) {
    const Tree rt = testutil::random_tree(rng, 2 + static_cast<int>(rng() % 15));
    const WeightedTree wt(rt, testutil::random_weights(rng, rt.vertex_count()));
    const WeightedTree rb = tree_from_json(tree_to_json(wt));
    REQUIRE(rb.tree().edges() == wt.tree().edges());
    REQUIRE(rb.weights() == wt.weights());
    REQUIRE(tree_to_json(rb) == tree_to_json(wt));
  }

  CHECK_THROWS_AS(tree_from_json("{\"n\":3,\"edges\":[[0,1]]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json("{\"edges\":[[0,1]]}"), std::invalid_argument);
  CHECK_THROWS_AS(
      tree_from_json("{\"n\":2,\"edges\":[[0,1]],\"weights\":[1]}"),
      std::invalid_argument);
}

TEST_CASE("polynomial json round-trip") {
  const Tree t = build_pte_tree(PteShape(2, {2, 0}));
  const auto poly = u_k_polynomial(t, 3);
  const auto back = polynomial_from_json(poly.canonical_json());
  CHECK(back == poly);
  CHECK(back.canonical_json() == poly.canonical_json());
  CHECK(back.content_hash() == poly.content_hash());

  // y-grades survive
  PartitionPolynomial w;
  w.add(Partition({3}), 1, 4);
  w.add(Partition({2, 1}), 0, -2);
  CHECK(polynomial_from_json(w.canonical_json()) == w);
}

TEST_CASE("dot export") {
  const Tree t = build_pte_tree(PteShape(2, {1, 1}));
  const auto dot = tree_to_dot(t);
  CHECK(dot.find("graph T {") == 0);
  CHECK(dot.find("0 -- 1 [style=bold];") != std::string::npos);
  CHECK(dot.find("0 -- 8 [style=bold];") != std::string::npos);
  CHECK(dot.find("1 -- 2;") != std::string::npos);

  const WeightedTree wt(testutil::make_path(2), {3, 4});
  const auto wdot = tree_to_dot(wt);
  CHECK(wdot.find("w=3") != std::string::npos);
}

TEST_CASE("integer list parsing") {
  CHECK(parse_int_list("1,2,3") == (std::vector<long long>{1, 2, 3}));
  CHECK(parse_int_list("7") == std::vector<long long>{7});
  CHECK(parse_int_list("-1,0") == (std::vector<long long>{-1, 0}));
  CHECK_THROWS_AS(parse_int_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,x"), std::invalid_argument);
}
