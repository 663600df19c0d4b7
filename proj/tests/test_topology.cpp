#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "tim/topology.hpp"

using tim::TopologyError;
using tim::TopologyMatrix;

TEST_CASE("parse round-trips through serialize") {
  auto t = TopologyMatrix::parse(fixtures::k6_three_pairs);
  CHECK(t.users() == 6);
  CHECK(t.serialize() == fixtures::k6_three_pairs);
  CHECK(TopologyMatrix::parse(t.serialize()) == t);
}

TEST_CASE("parse tolerates a missing final newline") {
  auto a = TopologyMatrix::parse("110\n011\n101");
  auto b = TopologyMatrix::parse("110\n011\n101\n");
  CHECK(a == b);
}

TEST_CASE("parse reports bad input with 1-based coordinates") {
  CHECK_THROWS_WITH_AS(TopologyMatrix::parse("10\n0"),
                       doctest::Contains("row 2"), TopologyError);
  CHECK_THROWS_WITH_AS(TopologyMatrix::parse("1x\n01\n"),
                       doctest::Contains("column 2"), TopologyError);
  CHECK_THROWS_WITH_AS(TopologyMatrix::parse("01\n01\n"),
                       doctest::Contains("diagonal"), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix::parse(""), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix::parse("\n\n"), TopologyError);
}

TEST_CASE("parse rejects more rows than max_users") {
  const int k = TopologyMatrix::max_users + 1;
  std::string text;
  for (int i = 0; i < k; ++i) {
    std::string row(k, '0');
    row[i] = '1';
    text += row + "\n";
  }
  CHECK_THROWS_WITH_AS(TopologyMatrix::parse(text), doctest::Contains("limit"),
                       TopologyError);
}

TEST_CASE("identity has links only on the diagonal") {
  TopologyMatrix t(5);
  CHECK(t.link_count() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(t.link(i, j) == (i == j));
}

TEST_CASE("all_ones hears everything") {
  auto t = TopologyMatrix::all_ones(4);
  CHECK(t.link_count() == 16);
  CHECK(t.serialize() == "1111\n1111\n1111\n1111\n");
}

TEST_CASE("with_link flips exactly one entry") {
  TopologyMatrix t(3);
  auto u = t.with_link(0, 2);
  CHECK(t.link_count() == 3);
  CHECK(u.link_count() == 4);
  CHECK(u.link(0, 2));
  CHECK(!u.link(2, 0));
}

TEST_CASE("bitstring is the row-major serialization without newlines") {
  auto t = TopologyMatrix::parse(fixtures::k3_cycle);
  CHECK(t.bitstring() == "110011101");
}

TEST_CASE("row constructor validates shape and diagonal") {
  CHECK_THROWS_AS(TopologyMatrix(0), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix(65), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix(3, {0b001, 0b010}), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix(3, {0b001, 0b010, 0b011}), TopologyError);
  CHECK_THROWS_AS(TopologyMatrix(2, {0b101, 0b10}), TopologyError);
  CHECK_NOTHROW(TopologyMatrix(3, {0b001, 0b010, 0b100}));
}

TEST_CASE("matrices order lexicographically by rows") {
  TopologyMatrix id(3);
  auto more = id.with_link(0, 1);
  CHECK(id < more);
  CHECK(!(more < id));
  CHECK(more != id);
}
