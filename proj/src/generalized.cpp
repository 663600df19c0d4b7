#include "tim/generalized.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "tim/matrix_analysis.hpp"
#include "tim/message_graph.hpp"

namespace tim {

namespace {

// Structural sanity; semantic conditions live in validate_generalized_spec.
void check_well_formed(const GeneralizedAllianceSpec& s) {
  if (s.k < 1 || s.k > TopologyMatrix::max_users)
    throw SpecError("message count " + std::to_string(s.k) + " out of range");
  const int n = s.alliance_count();
  if (n < 1) throw SpecError("spec needs at least one alliance");
  for (int i = 0; i < n; ++i) {
    for (const auto& sub : s.alliances[i]) {
      if (sub.messages.empty())
        throw SpecError("alliance " + std::to_string(i + 1) +
                        " has a sub-alliance with no messages");
      std::set<int> seen;
      for (int m : sub.messages) {
        if (m < 0 || m >= s.k)
          throw SpecError("message index " + std::to_string(m + 1) +
                          " out of range");
        if (!seen.insert(m).second)
          throw SpecError("message " + std::to_string(m + 1) +
                          " listed twice in one sub-alliance");
      }
      if (sub.interferers.empty() && n > 1)
        throw SpecError("alliance " + std::to_string(i + 1) +
                        " has a sub-alliance with no interferers");
      std::set<int> iseen;
      for (int a : sub.interferers) {
        if (a < 0 || a >= n)
          throw SpecError("alliance index " + std::to_string(a + 1) +
                          " out of range");
        if (a == i)
          throw SpecError("alliance " + std::to_string(i + 1) +
                          " interferes with itself");
        if (!iseen.insert(a).second)
          throw SpecError("alliance " + std::to_string(a + 1) +
                          " listed twice in one interferer set");
      }
    }
  }
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return false;
}

}  // namespace

std::vector<std::vector<int>> GeneralizedAllianceSpec::members() const {
  std::vector<std::vector<int>> out(alliances.size());
  for (size_t i = 0; i < alliances.size(); ++i) {
    for (const auto& sub : alliances[i])
      out[i].insert(out[i].end(), sub.messages.begin(), sub.messages.end());
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

GeneralizedAllianceSpec lift(const AllianceSpec& s) {
  GeneralizedAllianceSpec out;
  out.k = s.k;
  out.alliances.resize(s.alliances.size());
  for (size_t i = 0; i < s.alliances.size(); ++i) {
    for (const auto& [partner, msgs] : s.alliances[i]) {
      if (msgs.empty()) continue;
      out.alliances[i].push_back({sorted_copy(msgs), {partner}});
    }
  }
  return out;
}

std::optional<AllianceSpec> lower(const GeneralizedAllianceSpec& s) {
  AllianceSpec out;
  out.k = s.k;
  out.alliances.resize(s.alliances.size());
  for (size_t i = 0; i < s.alliances.size(); ++i) {
    for (const auto& sub : s.alliances[i]) {
      if (sub.interferers.size() != 1) return std::nullopt;
      auto& msgs = out.alliances[i][sub.interferers[0]];
      msgs.insert(msgs.end(), sub.messages.begin(), sub.messages.end());
      std::sort(msgs.begin(), msgs.end());
    }
  }
  return out;
}

std::vector<GeneralizedViolation> validate_generalized_spec(
    const GeneralizedAllianceSpec& s, bool strict_overlap) {
  check_well_formed(s);
  std::vector<GeneralizedViolation> out;
  const int n = s.alliance_count();

  for (int i = 0; i < n; ++i) {
    if (s.alliances[i].empty()) {
      out.push_back({GeneralizedViolation::Kind::empty_alliance, i, -1,
                     "alliance " + std::to_string(i + 1) + " has no members"});
      continue;
    }
    std::vector<std::vector<int>> esets;
    for (const auto& sub : s.alliances[i])
      esets.push_back(sorted_copy(sub.interferers));
    const int ns = static_cast<int>(esets.size());
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < ns; ++b) {
        if (a == b) continue;
        if (subset_of(esets[a], esets[b]))
          out.push_back({GeneralizedViolation::Kind::subset_interferers, i, a,
                         "alliance " + std::to_string(i + 1) +
                             ": interferer set of sub-alliance " +
                             std::to_string(a + 1) + " is contained in that of " +
                             std::to_string(b + 1)});
      }
    if (strict_overlap) {
      for (int a = 0; a < ns; ++a)
        for (int b = a + 1; b < ns; ++b)
          if (!intersects(esets[a], esets[b]))
            out.push_back({GeneralizedViolation::Kind::disjoint_siblings, i, a,
                           "alliance " + std::to_string(i + 1) +
                               ": sub-alliances " + std::to_string(a + 1) +
                               " and " + std::to_string(b + 1) +
                               " share no interferer"});
    }
  }

  std::vector<int> claims(s.k, 0);
  for (const auto& alliance : s.alliances)
    for (const auto& sub : alliance)
      for (int m : sub.messages) ++claims[m];
  for (int m = 0; m < s.k; ++m)
    if (claims[m] != 1)
      out.push_back({GeneralizedViolation::Kind::coverage_mismatch, m, claims[m],
                     "message " + std::to_string(m + 1) + " claimed by " +
                         std::to_string(claims[m]) + " sub-alliances"});

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool hostile = false;
      for (const auto& sub : s.alliances[i])
        for (int a : sub.interferers) hostile |= a == j;
      for (const auto& sub : s.alliances[j])
        for (int a : sub.interferers) hostile |= a == i;
      if (!hostile)
        out.push_back({GeneralizedViolation::Kind::pair_not_hostile, i, j,
                       "alliances " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " never interfere"});
    }
  return out;
}

TopologyMatrix derive_generalized_topology(const GeneralizedAllianceSpec& s) {
  check_well_formed(s);
  const auto mem = s.members();
  std::vector<uint64_t> alliance_mask(mem.size(), 0);
  for (size_t i = 0; i < mem.size(); ++i)
    for (int m : mem[i]) alliance_mask[i] |= uint64_t{1} << m;

  std::vector<uint64_t> rows(s.k, 0);
  for (int m = 0; m < s.k; ++m) rows[m] = uint64_t{1} << m;
  for (size_t i = 0; i < s.alliances.size(); ++i)
    for (const auto& sub : s.alliances[i]) {
      uint64_t heard = 0;
      for (int a : sub.interferers) heard |= alliance_mask[a];
      for (int m : sub.messages) rows[m] |= heard;
    }
  return TopologyMatrix(s.k, rows);
}

int compute_e_max(const GeneralizedAllianceSpec& s) {
  check_well_formed(s);
  int best = 0;
  for (const auto& alliance : s.alliances)
    for (const auto& sub : alliance)
      best = std::max(best, static_cast<int>(sub.interferers.size()));
  return best;
}

bool is_maximal_for_dof(const GeneralizedAllianceSpec& s) {
  const int e_max = compute_e_max(s);
  for (const auto& alliance : s.alliances)
    for (const auto& sub : alliance)
      if (static_cast<int>(sub.interferers.size()) != e_max) return false;
  return true;
}

std::vector<std::vector<int>> column_classes(const TopologyMatrix& t) {
  const int k = t.users();
  std::vector<uint64_t> col(k, 0);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (t.link(r, c)) col[c] |= uint64_t{1} << r;

  std::vector<int> root(k);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (int x = 0; x < k; ++x)
    for (int y = x + 1; y < k; ++y) {
      if (t.link(x, y) || t.link(y, x)) continue;
      const uint64_t outside = ~((uint64_t{1} << x) | (uint64_t{1} << y));
      if (((col[x] ^ col[y]) & outside) != 0) continue;
      int rx = find(x), ry = find(y);
      if (rx != ry) root[std::max(rx, ry)] = std::min(rx, ry);
    }

  std::vector<std::vector<int>> classes;
  std::vector<int> index_of(k, -1);
  for (int x = 0; x < k; ++x) {
    int r = find(x);
    if (index_of[r] < 0) {
      index_of[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[index_of[r]].push_back(x);
  }
  return classes;
}

MaximalityVerdict is_mtm_for_dof(const TopologyMatrix& t, int e_m) {
  if (e_m < 1) throw TopologyError("interference depth must be at least 1");
  if (e_m == 1) return is_mtm(t);

  const int k = t.users();
  const auto classes = column_classes(t);
  const int nc = static_cast<int>(classes.size());
  std::vector<int> class_of(k, -1);
  std::vector<uint64_t> class_mask(nc, 0);
  for (int c = 0; c < nc; ++c)
    for (int m : classes[c]) {
      class_of[m] = c;
      class_mask[c] |= uint64_t{1} << m;
    }

  MaximalityVerdict v;
  v.is_dof_optimal = true;
  v.is_maximal = true;

  // A heard transmitter drags in its whole class (columns agree on every
  // foreign row), so each row is a disjoint union of classes.
  for (int r = 0; r < k; ++r) {
    const uint64_t heard = t.row(r) & ~(uint64_t{1} << r);
    uint64_t remaining = heard;
    int count = 0;
    while (remaining) {
      const int m = std::countr_zero(remaining);
      remaining &= ~class_mask[class_of[m]];
      ++count;
    }
    if (count > e_m) v.is_dof_optimal = false;
    if (count != e_m && v.is_maximal) {
      v.is_maximal = false;
      v.witness = VerdictWitness{
          VerdictWitness::Kind::block_defect, r, count,
          "receiver " + std::to_string(r + 1) + " hears " +
              std::to_string(count) + " interference classes, want " +
              std::to_string(e_m)};
    }
  }
  if (!v.is_maximal) return v;

  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      bool covered = false;
      for (int m : classes[a])
        covered |= (t.row(m) & class_mask[b]) == class_mask[b];
      for (int m : classes[b])
        covered |= (t.row(m) & class_mask[a]) == class_mask[a];
      if (!covered) {
        v.is_maximal = false;
        v.witness = VerdictWitness{
            VerdictWitness::Kind::block_defect, a, b,
            "interference classes " + std::to_string(a + 1) + " and " +
                std::to_string(b + 1) + " never interfere"};
        return v;
      }
    }
  return v;
}

DemandGraph build_demand_graph(const TopologyMatrix& t) {
  DemandGraph d;
  d.k = t.users();
  for (int p = 0; p < d.k; ++p)
    for (int q = 0; q < d.k; ++q)
      if (p != q && !t.link(p, q)) d.edges.emplace_back(p, q);
  return d;
}

int max_acyclic_subset(const DemandGraph& d) {
  if (d.k > 20)
    throw TopologyError("exhaustive acyclicity search capped at 20 users");
  if (d.k <= 0) return 0;
  std::vector<uint32_t> out(d.k, 0);
  for (const auto& [p, q] : d.edges) out[p] |= uint32_t{1} << q;

  int best = 1;  // any single vertex induces no cycle
  const uint32_t all = (uint32_t{1} << d.k) - 1;
  for (uint32_t s = 1; s <= all; ++s) {
    if (std::popcount(s) <= best) continue;
    // Kahn peel: repeatedly drop vertices with no in-subset successor.
    uint32_t remaining = s;
    bool progress = true;
    while (remaining && progress) {
      progress = false;
      uint32_t scan = remaining;
      while (scan) {
        const int v = std::countr_zero(scan);
        scan &= scan - 1;
        if ((out[v] & remaining) == 0) {
          remaining &= ~(uint32_t{1} << v);
          progress = true;
        }
      }
    }
    if (remaining == 0) best = std::popcount(s);
  }
  return best;
}

namespace {

DofReport finish_report(int e_max, const TopologyMatrix& t) {
  DofReport rep;
  rep.e_max = e_max;
  rep.dof_achievable = Fraction(1, e_max + 1);
  rep.psi = max_acyclic_subset(build_demand_graph(t));
  rep.dof_upper = Fraction(1, rep.psi);
  rep.tight = rep.dof_achievable == rep.dof_upper;
  return rep;
}

}  // namespace

DofReport dof_report(const TopologyMatrix& t, const GeneralizedAllianceSpec& s) {
  auto violations = validate_generalized_spec(s);
  if (!violations.empty())
    throw SpecError("spec invalid: " + violations.front().text);
  if (derive_generalized_topology(s) != t)
    throw TopologyError("spec does not derive the given topology");
  return finish_report(compute_e_max(s), t);
}

DofReport infer_dof_report(const TopologyMatrix& t) {
  const int k = t.users();
  const auto classes = column_classes(t);
  std::vector<int> class_of(k, -1);
  std::vector<uint64_t> class_mask(classes.size(), 0);
  for (size_t c = 0; c < classes.size(); ++c)
    for (int m : classes[c]) {
      class_of[m] = static_cast<int>(c);
      class_mask[c] |= uint64_t{1} << m;
    }
  int e_max = 0;
  for (int r = 0; r < k; ++r) {
    uint64_t remaining = t.row(r) & ~(uint64_t{1} << r);
    int count = 0;
    while (remaining) {
      remaining &= ~class_mask[class_of[std::countr_zero(remaining)]];
      ++count;
    }
    e_max = std::max(e_max, count);
  }
  return finish_report(e_max, t);
}

}  // namespace tim
