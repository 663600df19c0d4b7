#include "tim/alliance.hpp"

#include <algorithm>

namespace tim {

std::vector<std::vector<int>> AllianceSpec::members() const {
  std::vector<std::vector<int>> out(alliances.size());
  for (size_t i = 0; i < alliances.size(); ++i) {
    for (const auto& [partner, list] : alliances[i])
      out[i].insert(out[i].end(), list.begin(), list.end());
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

namespace {

void check_well_formed(const AllianceSpec& s) {
  int n = s.alliance_count();
  if (s.k < 1 || s.k > TopologyMatrix::max_users)
    throw SpecError("message count must be in [1, " +
                    std::to_string(TopologyMatrix::max_users) + "], got " +
                    std::to_string(s.k));
  if (n < 1) throw SpecError("need at least one alliance");
  for (int i = 0; i < n; ++i) {
    for (const auto& [partner, list] : s.alliances[i]) {
      if (partner < 0 || partner >= n)
        throw SpecError("alliance " + std::to_string(i + 1) +
                        " names unknown partner " + std::to_string(partner + 1));
      if (partner == i)
        throw SpecError("alliance " + std::to_string(i + 1) +
                        " cannot be hostile to itself");
      std::vector<int> sorted = list;
      std::sort(sorted.begin(), sorted.end());
      for (size_t x = 0; x < sorted.size(); ++x) {
        if (sorted[x] < 0 || sorted[x] >= s.k)
          throw SpecError("message " + std::to_string(sorted[x] + 1) +
                          " out of range in alliance " + std::to_string(i + 1));
        if (x > 0 && sorted[x] == sorted[x - 1])
          throw SpecError("message " + std::to_string(sorted[x] + 1) +
                          " repeated inside one sub-alliance");
      }
    }
  }
}

}  // namespace

std::vector<PartitionViolation> validate_spec(const AllianceSpec& s) {
  check_well_formed(s);
  int n = s.alliance_count();
  std::vector<PartitionViolation> out;

  if (n == 1 && s.k == 1) return out;  // lone message, nothing to interfere with

  // coverage: every message in exactly one sub-alliance
  std::vector<int> claims(s.k, 0);
  for (int i = 0; i < n; ++i)
    for (const auto& [partner, list] : s.alliances[i])
      for (int m : list) ++claims[m];
  for (int m = 0; m < s.k; ++m) {
    if (claims[m] == 1) continue;
    PartitionViolation v;
    v.kind = PartitionViolation::Kind::coverage_mismatch;
    v.a = m;
    v.text = "message " + std::to_string(m + 1) + " appears in " +
             std::to_string(claims[m]) + " sub-alliances, expected 1";
    out.push_back(v);
  }

  // heard[i]: someone outside hears alliance i; nonempty[i]: it has members
  std::vector<bool> heard(n, false), nonempty(n, false);
  for (int i = 0; i < n; ++i) {
    for (const auto& [partner, list] : s.alliances[i]) {
      if (list.empty()) continue;
      nonempty[i] = true;
      heard[partner] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!nonempty[i]) {
      PartitionViolation v;
      v.kind = PartitionViolation::Kind::empty_alliance;
      v.a = i;
      v.text = "alliance " + std::to_string(i + 1) + " has no members";
      out.push_back(v);
    }
    if (!heard[i]) {
      PartitionViolation v;
      v.kind = PartitionViolation::Kind::no_common_conflict;
      v.a = i;
      v.text = "no message hears alliance " + std::to_string(i + 1);
      out.push_back(v);
    }
  }

  // every alliance pair interferes in at least one direction
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto covered = [&](int x, int y) {
        auto it = s.alliances[x].find(y);
        return it != s.alliances[x].end() && !it->second.empty();
      };
      if (covered(i, j) || covered(j, i)) continue;
      PartitionViolation v;
      v.kind = PartitionViolation::Kind::pair_uncovered;
      v.a = i;
      v.b = j;
      v.text = "alliances " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
               " never interfere";
      out.push_back(v);
    }
  }
  return out;
}

TopologyMatrix derive_topology(const AllianceSpec& s) {
  check_well_formed(s);
  auto mem = s.members();
  int n = s.alliance_count();

  std::vector<std::uint64_t> alliance_mask(n, 0);
  for (int i = 0; i < n; ++i)
    for (int m : mem[i]) alliance_mask[i] |= 1ull << m;

  std::vector<std::uint64_t> rows(s.k, 0);
  for (int m = 0; m < s.k; ++m) rows[m] = 1ull << m;
  for (int i = 0; i < n; ++i)
    for (const auto& [partner, list] : s.alliances[i])
      for (int receiver : list) rows[receiver] |= alliance_mask[partner];
  return TopologyMatrix(s.k, std::move(rows));
}

long long min_messages(int n) {
  if (n <= 0) return 0;
  if (n == 1) return 1;
  if (n == 2) return 2;
  return static_cast<long long>(n) * (n - 1) / 2;
}

int max_alliances(int k) {
  int n = 0;
  while (min_messages(n + 1) <= k) ++n;
  return n;
}

}  // namespace tim
