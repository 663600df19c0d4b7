#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "tim/message_graph.hpp"
#include "tim/topology.hpp"

using namespace tim;

namespace {
TopologyMatrix fx(const char* text) { return TopologyMatrix::parse(text); }
}  // namespace

TEST_CASE("alignment sets follow shared listeners") {
  auto g = build_message_graph(fx(fixtures::k6_three_pairs));
  auto p = alignment_sets(g);
  std::vector<std::vector<int>> want = {{0, 1}, {2, 3}, {4, 5}};
  CHECK(p.sets == want);
  CHECK(p.set_of == std::vector<int>{0, 0, 1, 1, 2, 2});
}

TEST_CASE("a single listener aligns its whole heard set") {
  auto g = build_message_graph(fx(fixtures::k4_three_one));
  auto p = alignment_sets(g);
  std::vector<std::vector<int>> want = {{0, 1, 2}, {3}};
  CHECK(p.sets == want);
}

TEST_CASE("unheard and singleton messages get singleton sets") {
  auto g = build_message_graph(fx(fixtures::k5_sparse));
  auto p = alignment_sets(g);
  std::vector<std::vector<int>> want = {{0, 2}, {1}, {3}, {4}};
  CHECK(p.sets == want);
  CHECK(((g.alignment_adj[0] >> 2) & 1u) == 1u);
  CHECK(((g.alignment_adj[2] >> 0) & 1u) == 1u);
}

TEST_CASE("internal conflicts are conflict edges inside one set") {
  auto t = fx(fixtures::k6_conflicted);
  auto g = build_message_graph(t);
  auto p = alignment_sets(g);
  auto bad = internal_conflicts(g, p);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].victim == 3);
  CHECK(bad[0].source == 4);
  CHECK(p.set_of[3] == p.set_of[4]);
  CHECK(!is_dof_half_optimal(t));
}

TEST_CASE("cross-set conflicts keep a topology optimal") {
  CHECK(is_dof_half_optimal(fx(fixtures::k4_two_pairs)));
  CHECK(is_dof_half_optimal(fx(fixtures::k4_three_one)));
  CHECK(is_dof_half_optimal(fx(fixtures::k6_three_pairs)));
  CHECK(is_dof_half_optimal(fx(fixtures::k3_cycle)));
  CHECK(is_dof_half_optimal(fx(fixtures::k8_expandable)));
  CHECK(is_dof_half_optimal(fx(fixtures::k5_sparse)));
}

TEST_CASE("maximality verdicts on hand-checked networks") {
  SUBCASE("maximal: every zero flip creates an internal conflict") {
    for (const char* text : {fixtures::k4_two_pairs, fixtures::k4_three_one,
                             fixtures::k6_three_pairs, fixtures::k3_cycle,
                             fixtures::k8_expanded_merge, fixtures::k8_expanded_links}) {
      auto v = is_maximal_by_definition(fx(text));
      CHECK(v.is_dof_optimal);
      CHECK(v.is_maximal);
      CHECK(!v.witness.has_value());
    }
  }
  SUBCASE("optimal but growable") {
    for (const char* text : {fixtures::k8_expandable, fixtures::k5_sparse}) {
      auto v = is_maximal_by_definition(fx(text));
      CHECK(v.is_dof_optimal);
      CHECK(!v.is_maximal);
      REQUIRE(v.witness.has_value());
      CHECK(v.witness->kind == VerdictWitness::Kind::addable_link);
    }
  }
  SUBCASE("conflicted") {
    auto v = is_maximal_by_definition(fx(fixtures::k6_conflicted));
    CHECK(!v.is_dof_optimal);
    CHECK(!v.is_maximal);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == VerdictWitness::Kind::internal_conflict);
    CHECK(v.witness->a == 3);
    CHECK(v.witness->b == 4);
  }
}

TEST_CASE("addable-link witness is genuinely addable") {
  auto t = fx(fixtures::k8_expandable);
  auto v = is_maximal_by_definition(t);
  REQUIRE(v.witness.has_value());
  CHECK(!t.link(v.witness->a, v.witness->b));
  CHECK(is_dof_half_optimal(t.with_link(v.witness->a, v.witness->b)));
}

TEST_CASE("one-user network is trivially maximal") {
  auto v = is_maximal_by_definition(TopologyMatrix(1));
  CHECK(v.is_dof_optimal);
  CHECK(v.is_maximal);
}

TEST_CASE("two-user full mesh is maximal, crossed singletons are not") {
  auto v = is_maximal_by_definition(TopologyMatrix::all_ones(2));
  CHECK(v.is_maximal);
  auto w = is_maximal_by_definition(TopologyMatrix(2));
  CHECK(w.is_dof_optimal);
  CHECK(!w.is_maximal);
}

TEST_CASE("dot output draws both relations") {
  auto dot = write_dot(fx(fixtures::k5_sparse));
  CHECK(dot.find("W1 -> W3 [dir=none]") != std::string::npos);
  CHECK(dot.find("W1 -> W4 [style=dashed, color=red]") != std::string::npos);
  CHECK(dot.find("W3 -> W4 [style=dashed, color=red]") != std::string::npos);
  CHECK(dot.find("digraph") == 0);
}
