#include "tim/message_graph.hpp"

#include <algorithm>
#include <numeric>

namespace tim {

namespace {

// Minimal union-find over message indices; path halving, union by index.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Union every message heard by some common receiver: that receiver witnesses
// the alignment of each pair among them.
DisjointSets alignment_components(const TopologyMatrix& t) {
  DisjointSets ds(t.users());
  for (int r = 0; r < t.users(); ++r) {
    std::uint64_t heard = t.row(r) & ~(1ull << r);
    int first = -1;
    for (int j = 0; j < t.users(); ++j) {
      if (!((heard >> j) & 1u)) continue;
      if (first < 0)
        first = j;
      else
        ds.unite(first, j);
    }
  }
  return ds;
}

}  // namespace

MessageGraph build_message_graph(const TopologyMatrix& t) {
  MessageGraph g;
  g.k = t.users();
  g.alignment_adj.assign(g.k, 0);
  g.conflict_from.assign(g.k, 0);
  for (int r = 0; r < g.k; ++r) {
    g.conflict_from[r] = t.row(r) & ~(1ull << r);
    std::uint64_t heard = g.conflict_from[r];
    for (int a = 0; a < g.k; ++a) {
      if (!((heard >> a) & 1u)) continue;
      g.alignment_adj[a] |= heard & ~(1ull << a);
    }
  }
  return g;
}

AlignmentPartition alignment_sets(const MessageGraph& g) {
  DisjointSets ds(g.k);
  for (int a = 0; a < g.k; ++a)
    for (int b = a + 1; b < g.k; ++b)
      if ((g.alignment_adj[a] >> b) & 1u) ds.unite(a, b);

  AlignmentPartition p;
  p.set_of.assign(g.k, -1);
  for (int m = 0; m < g.k; ++m) {
    int root = ds.find(m);
    if (p.set_of[root] < 0) {
      p.set_of[root] = static_cast<int>(p.sets.size());
      p.sets.emplace_back();
    }
    p.set_of[m] = p.set_of[root];
    p.sets[p.set_of[m]].push_back(m);
  }
  return p;
}

std::vector<InternalConflict> internal_conflicts(const MessageGraph& g,
                                                 const AlignmentPartition& p) {
  std::vector<InternalConflict> out;
  for (int victim = 0; victim < g.k; ++victim)
    for (int source = 0; source < g.k; ++source)
      if (((g.conflict_from[victim] >> source) & 1u) &&
          p.set_of[victim] == p.set_of[source])
        out.push_back({p.set_of[victim], victim, source});
  return out;
}

bool is_dof_half_optimal(const TopologyMatrix& t) {
  DisjointSets ds = alignment_components(t);
  for (int victim = 0; victim < t.users(); ++victim) {
    std::uint64_t conflicts = t.row(victim) & ~(1ull << victim);
    for (int source = 0; source < t.users(); ++source)
      if (((conflicts >> source) & 1u) && ds.find(victim) == ds.find(source))
        return false;
  }
  return true;
}

MaximalityVerdict is_maximal_by_definition(const TopologyMatrix& t) {
  MaximalityVerdict v;
  MessageGraph g = build_message_graph(t);
  AlignmentPartition p = alignment_sets(g);
  std::vector<InternalConflict> bad = internal_conflicts(g, p);
  if (!bad.empty()) {
    v.is_dof_optimal = false;
    v.is_maximal = false;
    VerdictWitness w;
    w.kind = VerdictWitness::Kind::internal_conflict;
    w.a = bad.front().victim;
    w.b = bad.front().source;
    w.detail = "messages " + std::to_string(bad.front().victim + 1) + " and " +
               std::to_string(bad.front().source + 1) +
               " share an alignment set but conflict";
    v.witness = w;
    return v;
  }
  v.is_dof_optimal = true;
  for (int i = 0; i < t.users(); ++i) {
    for (int j = 0; j < t.users(); ++j) {
      if (i == j || t.link(i, j)) continue;
      if (is_dof_half_optimal(t.with_link(i, j))) {
        v.is_maximal = false;
        VerdictWitness w;
        w.kind = VerdictWitness::Kind::addable_link;
        w.a = i;
        w.b = j;
        w.detail = "link (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                   ") can be added without breaking optimality";
        v.witness = w;
        return v;
      }
    }
  }
  v.is_maximal = true;
  return v;
}

std::string write_dot(const TopologyMatrix& t) {
  MessageGraph g = build_message_graph(t);
  std::string out = "digraph message_graph {\n";
  for (int m = 0; m < g.k; ++m) out += "  W" + std::to_string(m + 1) + ";\n";
  for (int a = 0; a < g.k; ++a)
    for (int b = a + 1; b < g.k; ++b)
      if ((g.alignment_adj[a] >> b) & 1u)
        out += "  W" + std::to_string(a + 1) + " -> W" + std::to_string(b + 1) +
               " [dir=none];\n";
  for (int victim = 0; victim < g.k; ++victim)
    for (int source = 0; source < g.k; ++source)
      if ((g.conflict_from[victim] >> source) & 1u)
        out += "  W" + std::to_string(source + 1) + " -> W" + std::to_string(victim + 1) +
               " [style=dashed, color=red];\n";
  out += "}\n";
  return out;
}

}  // namespace tim
