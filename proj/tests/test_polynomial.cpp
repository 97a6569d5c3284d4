#include <catch2/catch_amalgamated.hpp>

#include "utree/partition.hpp"
#include "utree/polynomial.hpp"

using namespace utree;

TEST_CASE("partition normal form") {
  CHECK(Partition({1, 3, 2}).parts() == (std::vector<int>{3, 2, 1}));
  CHECK(Partition{}.empty());
  CHECK(Partition({5}).sum() == 5);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
  CHECK(Partition({2, 1}) < Partition({3}));
  CHECK(Partition({3}) < Partition({3, 1}));
}

TEST_CASE("polynomial accumulation and lookup") {
  PartitionPolynomial p;
  p.add(Partition({2, 1}), 1);
  p.add(Partition({1, 2}), 1);
  p.add(Partition({3}), 1);
  CHECK(p.term_count() == 2);
  CHECK(p.coefficient(Partition({2, 1})) == 2);
  CHECK(p.coefficient(Partition({3})) == 1);
  CHECK(p.coefficient(Partition({1, 1, 1})) == 0);
  CHECK(p.total_mass() == 3);

  // cancelling to zero removes the term
  p.add(Partition({3}), -1);
  CHECK(p.term_count() == 1);
  CHECK(p.coefficient(Partition({3})) == 0);
}

TEST_CASE("canonical serialization and hash") {
  PartitionPolynomial p;
  p.add(Partition({15}), 1);
  p.add(Partition({8, 7}), 2);
  p.add(Partition({7, 7, 1}), 1);
  CHECK(p.canonical_json() ==
        "{\"terms\":["
        "{\"partition\":[7,7,1],\"ypow\":0,\"coeff\":\"1\"},"
        "{\"partition\":[8,7],\"ypow\":0,\"coeff\":\"2\"},"
        "{\"partition\":[15],\"ypow\":0,\"coeff\":\"1\"}]}");

  PartitionPolynomial q;
  q.add(Partition({7, 7, 1}), 1);
  q.add(Partition({8, 7}), 2);
  q.add(Partition({15}), 1);
  CHECK(p == q);
  CHECK(p.content_hash() == q.content_hash());
  CHECK(p.content_hash().size() == 16);

  q.add(Partition({8, 7}), 0, 1);
  CHECK(p != q);
  CHECK(p.content_hash() != q.content_hash());
}

TEST_CASE("y-grades are part of the key") {
  PartitionPolynomial p;
  p.add(Partition({3}), 0, 1);
  p.add(Partition({3}), 1, 4);
  CHECK(p.term_count() == 2);
  CHECK(p.coefficient(Partition({3}), 1) == 4);
  CHECK(!p.pure_x());
  CHECK(p.evaluate_all_x1(2) == 5);
  CHECK(p.evaluate_all_x1(3) == 9);
}

TEST_CASE("diff") {
  PartitionPolynomial a, b;
  a.add(Partition({3}), 1);
  a.add(Partition({2, 1}), 2);
  b.add(Partition({3}), 1);
  b.add(Partition({2, 1}), 1);
  b.add(Partition({1, 1, 1}), 1);

  CHECK(poly_diff(a, a).empty());
  CHECK(poly_equal(a, a));
  const auto d = poly_diff(a, b);
  REQUIRE(d.size() == 2);
  CHECK(d[0].partition == Partition({1, 1, 1}));
  CHECK(d[0].lhs == 0);
  CHECK(d[0].rhs == 1);
  CHECK(d[1].partition == Partition({2, 1}));
  CHECK(d[1].lhs == 2);
  CHECK(d[1].rhs == 1);
}
