#include "tim/matrix_analysis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "tim/message_graph.hpp"

namespace tim {

namespace {

void check_bijection(const Permutation& p, int k) {
  if (p.size() != k)
    throw TopologyError("permutation has " + std::to_string(p.size()) +
                        " entries, expected " + std::to_string(k));
  std::vector<char> seen(k, 0);
  for (int v : p.to_new) {
    if (v < 0 || v >= k || seen[v])
      throw TopologyError("permutation is not a bijection on {1.." + std::to_string(k) + "}");
    seen[v] = 1;
  }
}

}  // namespace

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (to_new[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  check_bijection(*this, size());
  Permutation p;
  p.to_new.assign(size(), 0);
  for (int i = 0; i < size(); ++i) p.to_new[to_new[i]] = i;
  return p;
}

Permutation Permutation::identity_perm(int k) {
  Permutation p;
  p.to_new.resize(k);
  for (int i = 0; i < k; ++i) p.to_new[i] = i;
  return p;
}

TopologyMatrix apply_permutation(const TopologyMatrix& t, const Permutation& p) {
  check_bijection(p, t.users());
  std::vector<std::uint64_t> rows(t.users(), 0);
  for (int i = 0; i < t.users(); ++i)
    for (int j = 0; j < t.users(); ++j)
      if (t.link(i, j)) rows[p.to_new[i]] |= 1ull << p.to_new[j];
  return TopologyMatrix(t.users(), std::move(rows));
}

std::pair<TopologyMatrix, Permutation> canonicalize(const TopologyMatrix& t) {
  auto part = alignment_sets(build_message_graph(t));
  Permutation perm;
  perm.to_new.assign(t.users(), -1);
  int pos = 0;
  for (const auto& set : part.sets)
    for (int m : set) perm.to_new[m] = pos++;
  return {apply_permutation(t, perm), perm};
}

BlockDecomposition find_blocks(const TopologyMatrix& t) {
  if (!canonicalize(t).second.is_identity())
    throw TopologyError("matrix is not in canonical block order; canonicalize first");

  const int k = t.users();
  BlockDecomposition d;
  d.permutation = Permutation::identity_perm(k);

  auto part = alignment_sets(build_message_graph(t));
  const int nb = static_cast<int>(part.sets.size());
  std::vector<std::uint64_t> mask(nb, 0);
  int pos = 0;
  for (int b = 0; b < nb; ++b) {
    int len = static_cast<int>(part.sets[b].size());
    d.blocks.push_back({pos, pos + len});
    for (int m : part.sets[b]) mask[b] |= 1ull << m;
    pos += len;
  }
  if (k == 1) return d;  // lone desired link, nothing to classify

  std::vector<int> incoming(k, 0);
  for (int r = 0; r < k; ++r) {
    for (int b = 0; b < nb; ++b) {
      std::uint64_t seg = t.row(r) & mask[b];
      if (b == part.set_of[r]) {
        std::uint64_t extra = seg & ~(1ull << r);
        if (extra) {
          BlockViolation v;
          v.kind = BlockViolation::Kind::non_identity_principal;
          v.a = r;
          v.b = std::countr_zero(extra);
          v.text = "receiver " + std::to_string(r + 1) + " hears message " +
                   std::to_string(v.b + 1) + " of its own block";
          d.violations.push_back(v);
        }
        continue;
      }
      if (!seg) continue;
      if (seg == mask[b]) {
        d.interference_blocks.push_back({b, r, d.blocks[b].first, d.blocks[b].second});
        ++incoming[r];
      } else {
        BlockViolation v;
        v.kind = BlockViolation::Kind::incomplete_interference_block;
        v.a = r;
        v.b = b;
        v.text = "receiver " + std::to_string(r + 1) + " hears only part of block " +
                 std::to_string(b + 1);
        d.violations.push_back(v);
      }
    }
  }

  if (nb >= 2) {
    for (int r = 0; r < k; ++r) {
      if (incoming[r] == 1) continue;
      BlockViolation v;
      v.kind = BlockViolation::Kind::wrong_block_count;
      v.a = r;
      v.b = incoming[r];
      v.text = "receiver " + std::to_string(r + 1) + " hears " +
               std::to_string(incoming[r]) + " interference blocks, expected exactly 1";
      d.violations.push_back(v);
    }
  }

  std::vector<char> covered(static_cast<size_t>(nb) * nb, 0);
  for (const auto& ib : d.interference_blocks) {
    int other = part.set_of[ib.receiver];
    covered[static_cast<size_t>(ib.source_block) * nb + other] = 1;
    covered[static_cast<size_t>(other) * nb + ib.source_block] = 1;
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      if (covered[static_cast<size_t>(i) * nb + j]) continue;
      BlockViolation v;
      v.kind = BlockViolation::Kind::uncovered_pair;
      v.a = i;
      v.b = j;
      v.text = "blocks " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
               " never interfere";
      d.violations.push_back(v);
    }
  }
  return d;
}

BlockDecomposition analyze_blocks(const TopologyMatrix& t) {
  auto [canon, perm] = canonicalize(t);
  BlockDecomposition d = find_blocks(canon);
  d.permutation = perm;
  return d;
}

MaximalityVerdict is_mtm(const TopologyMatrix& t) {
  MaximalityVerdict v;
  if (t.users() == 1) {
    v.is_dof_optimal = true;
    v.is_maximal = true;
    return v;
  }
  BlockDecomposition d = analyze_blocks(t);
  bool conflicted = std::any_of(d.violations.begin(), d.violations.end(),
                                [](const BlockViolation& x) {
                                  return x.kind == BlockViolation::Kind::non_identity_principal;
                                });
  v.is_dof_optimal = !conflicted;
  v.is_maximal = d.violations.empty();
  if (v.is_maximal) return v;

  Permutation inv = d.permutation.inverse();
  const BlockViolation& f = d.violations.front();
  VerdictWitness w;
  switch (f.kind) {
    case BlockViolation::Kind::non_identity_principal:
      w.kind = VerdictWitness::Kind::internal_conflict;
      w.a = inv.to_new[f.a];
      w.b = inv.to_new[f.b];
      w.detail = "messages " + std::to_string(w.a + 1) + " and " + std::to_string(w.b + 1) +
                 " share an alignment set but conflict";
      break;
    case BlockViolation::Kind::incomplete_interference_block:
      w.kind = VerdictWitness::Kind::block_defect;
      w.a = inv.to_new[f.a];
      w.b = f.b;
      w.detail = "receiver " + std::to_string(w.a + 1) +
                 " hears only part of an alignment set";
      break;
    case BlockViolation::Kind::wrong_block_count:
      w.kind = VerdictWitness::Kind::block_defect;
      w.a = inv.to_new[f.a];
      w.b = f.b;
      w.detail = "receiver " + std::to_string(w.a + 1) + " hears " + std::to_string(f.b) +
                 " interference blocks, expected exactly 1";
      break;
    case BlockViolation::Kind::uncovered_pair:
      w.kind = VerdictWitness::Kind::block_defect;
      w.a = f.a;
      w.b = f.b;
      w.detail = "alignment sets " + std::to_string(f.a + 1) + " and " +
                 std::to_string(f.b + 1) + " never interfere";
      break;
  }
  v.witness = w;
  return v;
}

TransformResult transform_to_mtm(const TopologyMatrix& t, GrowthStrategy strategy) {
  {
    MessageGraph g = build_message_graph(t);
    AlignmentPartition p = alignment_sets(g);
    auto bad = internal_conflicts(g, p);
    if (!bad.empty())
      throw TopologyError("cannot grow a topology with an internal conflict: messages " +
                          std::to_string(bad.front().victim + 1) + " and " +
                          std::to_string(bad.front().source + 1) +
                          " already align and conflict");
  }

  TransformResult res{t, {}};
  const int k = t.users();
  auto add = [&res](int rx, int tx) {
    if (!res.matrix.link(rx, tx)) {
      res.matrix = res.matrix.with_link(rx, tx);
      res.added_links.push_back({rx, tx});
    }
  };

  while (true) {
    AlignmentPartition part = alignment_sets(build_message_graph(res.matrix));
    const int ns = static_cast<int>(part.sets.size());
    std::vector<std::uint64_t> mask(ns, 0);
    for (int s = 0; s < ns; ++s)
      for (int m : part.sets[s]) mask[s] |= 1ull << m;
    auto heard = [&](int r) { return res.matrix.row(r) & ~(1ull << r); };
    auto full_over = [&](int r, int s) { return (res.matrix.row(r) & mask[s]) == mask[s]; };

    // a receiver hearing part of a set must hear all of it
    int fill_r = -1, fill_s = -1;
    for (int r = 0; r < k && fill_r < 0; ++r) {
      std::uint64_t h = heard(r);
      if (!h) continue;
      int s = part.set_of[std::countr_zero(h)];
      if (s != part.set_of[r] && h != mask[s]) {
        fill_r = r;
        fill_s = s;
      }
    }
    if (fill_r >= 0) {
      for (int m : part.sets[fill_s]) add(fill_r, m);
      continue;
    }

    // sets that never interfere get connected, lexicographically first pair first
    std::vector<std::pair<int, int>> unlinked;
    for (int i = 0; i < ns; ++i) {
      for (int j = i + 1; j < ns; ++j) {
        bool linked = false;
        for (int m : part.sets[i]) linked = linked || full_over(m, j);
        for (int m : part.sets[j]) linked = linked || full_over(m, i);
        if (!linked) unlinked.push_back({i, j});
      }
    }

    bool acted = false;
    if (!unlinked.empty()) {
      for (auto [p1, p2] : unlinked) {
        std::uint64_t both = mask[p1] | mask[p2];
        bool mergeable = false;
        for (int r = 0; r < k && !mergeable; ++r)
          if (!((both >> r) & 1u) && (full_over(r, p1) || full_over(r, p2))) mergeable = true;
        int deaf = -1;
        for (int m = 0; m < k && deaf < 0; ++m)
          if (((both >> m) & 1u) && heard(m) == 0) deaf = m;

        bool prefer_merge = strategy == GrowthStrategy::merge;
        if ((prefer_merge && mergeable) || (!prefer_merge && deaf < 0 && mergeable)) {
          // everyone listening to one side now hears the union
          for (int r = 0; r < k; ++r) {
            if ((both >> r) & 1u) continue;
            if (full_over(r, p1))
              for (int m : part.sets[p2]) add(r, m);
            else if (full_over(r, p2))
              for (int m : part.sets[p1]) add(r, m);
          }
          acted = true;
        } else if (deaf >= 0) {
          int other = ((mask[p1] >> deaf) & 1u) ? p2 : p1;
          for (int m : part.sets[other]) add(deaf, m);
          acted = true;
        }
        if (acted) break;
      }
      if (!acted) {
        // every unlinked pair is two silent singletons; free some listener
        for (int r = 0; r < k && !acted; ++r) {
          if (heard(r) != 0) continue;
          int s = part.set_of[r] == 0 ? 1 : 0;
          for (int m : part.sets[s]) add(r, m);
          acted = true;
        }
        if (!acted)
          throw std::logic_error("no growth step applies but uncovered pairs remain");
      }
      continue;
    }

    // deaf receivers get the lowest foreign set
    if (ns >= 2) {
      for (int r = 0; r < k && !acted; ++r) {
        if (heard(r) != 0) continue;
        int s = part.set_of[r] == 0 ? 1 : 0;
        for (int m : part.sets[s]) add(r, m);
        acted = true;
      }
    }
    if (!acted) break;
  }
  return res;
}

}  // namespace tim
