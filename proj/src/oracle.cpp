#include "tim/oracle.hpp"

#include <algorithm>
#include <map>

#include "tim/matrix_analysis.hpp"
#include "tim/message_graph.hpp"

namespace tim {

namespace {

// Row-major bit packing, usable while k*k <= 64.
std::uint64_t pack_bits(const TopologyMatrix& t) {
  std::uint64_t key = 0;
  for (int r = 0; r < t.users(); ++r)
    for (int c = 0; c < t.users(); ++c)
      key = (key << 1) | (t.link(r, c) ? 1u : 0u);
  return key;
}

std::string one_line(const TopologyMatrix& t) { return t.bitstring(); }

}  // namespace

TopologyEnumerator::TopologyEnumerator(int k) : k_(k) {
  if (k < 1) throw TopologyError("need at least one user");
  if (k > 5) throw TopologyError("exhaustive enumeration capped at 5 users");
  count_ = std::uint64_t{1} << (k * (k - 1));
}

std::optional<TopologyMatrix> TopologyEnumerator::next() {
  if (index_ == count_) return std::nullopt;
  std::vector<std::uint64_t> rows(k_);
  int bit = 0;
  for (int r = 0; r < k_; ++r) {
    rows[r] = std::uint64_t{1} << r;
    for (int c = 0; c < k_; ++c) {
      if (c == r) continue;
      if ((index_ >> bit) & 1u) rows[r] |= std::uint64_t{1} << c;
      ++bit;
    }
  }
  ++index_;
  return TopologyMatrix(k_, std::move(rows));
}

std::uint64_t enumeration_size(int k) {
  if (k < 1) throw TopologyError("need at least one user");
  if (k > 5) throw TopologyError("exhaustive enumeration capped at 5 users");
  return std::uint64_t{1} << (k * (k - 1));
}

TopologyMatrix sample_topology(int k, std::mt19937_64& rng) {
  if (k < 1 || k > TopologyMatrix::max_users)
    throw TopologyError("user count out of range");
  std::uniform_int_distribution<std::uint64_t> dist(
      0, (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
  std::vector<std::uint64_t> rows(k);
  for (int r = 0; r < k; ++r)
    rows[r] = dist(rng) | std::uint64_t{1} << r;
  return TopologyMatrix(k, std::move(rows));
}

TopologyMatrix canonical_label(const TopologyMatrix& t) {
  const int k = t.users();
  if (k > 8) throw TopologyError("canonical labeling capped at 8 users");
  std::vector<int> q(k);  // q[new] = old
  for (int i = 0; i < k; ++i) q[i] = i;
  std::vector<int> best = q;
  std::uint64_t best_key = pack_bits(t);
  while (std::next_permutation(q.begin(), q.end())) {
    std::uint64_t key = 0;
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        key = (key << 1) | (t.link(q[r], q[c]) ? 1u : 0u);
    if (key < best_key) {
      best_key = key;
      best = q;
    }
  }
  std::vector<std::uint64_t> rows(k);
  for (int r = 0; r < k; ++r) {
    rows[r] = 0;
    for (int c = 0; c < k; ++c)
      if (t.link(best[r], best[c])) rows[r] |= std::uint64_t{1} << c;
  }
  return TopologyMatrix(k, std::move(rows));
}

std::vector<CatalogEntry> classify_all(int k) {
  std::vector<CatalogEntry> out;
  out.reserve(enumeration_size(k));
  TopologyEnumerator en(k);
  while (auto t = en.next()) {
    CatalogEntry e{*t, canonical_label(*t), is_dof_half_optimal(*t),
                   false, std::nullopt, 1};
    e.maximal = is_maximal_by_definition(*t).is_maximal;
    if (e.maximal)
      e.alliance_count = static_cast<int>(
          alignment_sets(build_message_graph(*t)).sets.size());
    out.push_back(std::move(e));
  }
  std::map<std::string, int> orbit;
  for (const auto& e : out) ++orbit[e.canonical_form.bitstring()];
  for (auto& e : out) e.orbit_size = orbit[e.canonical_form.bitstring()];
  return out;
}

SpecEnumerator::SpecEnumerator(int k, int n) : k_(k), n_(n) {
  if (k < 1) throw TopologyError("need at least one user");
  if (k > 6) throw TopologyError("spec enumeration capped at 6 users");
  if (n < 1 || n > k) {
    exhausted_ = true;
    return;
  }
  block_of_.assign(k, 0);
  partner_of_.assign(k, -1);
  if (count_blocks() == n_ && (n_ >= 2 || k_ == 1)) {
    reset_partners();
  } else if (!advance_partition()) {
    exhausted_ = true;
  }
}

int SpecEnumerator::count_blocks() const {
  int top = -1;
  for (int b : block_of_) top = std::max(top, b);
  return top + 1;
}

void SpecEnumerator::reset_partners() {
  for (int m = 0; m < k_; ++m)
    partner_of_[m] = n_ < 2 ? -1 : (block_of_[m] == 0 ? 1 : 0);
}

bool SpecEnumerator::advance_partner() {
  if (n_ < 2) return false;  // no foreign block to rotate through
  for (int m = k_ - 1; m >= 0; --m) {
    int p = partner_of_[m] + 1;
    if (p == block_of_[m]) ++p;
    if (p < n_) {
      partner_of_[m] = p;
      for (int r = m + 1; r < k_; ++r)
        partner_of_[r] = block_of_[r] == 0 ? 1 : 0;
      return true;
    }
  }
  return false;
}

bool SpecEnumerator::advance_partition() {
  while (true) {
    int m = k_ - 1;
    for (; m >= 1; --m) {
      int prefix_max = 0;
      for (int i = 0; i < m; ++i) prefix_max = std::max(prefix_max, block_of_[i]);
      if (block_of_[m] <= prefix_max) {
        ++block_of_[m];
        for (int r = m + 1; r < k_; ++r) block_of_[r] = 0;
        break;
      }
    }
    if (m < 1) return false;
    if (count_blocks() == n_ && (n_ >= 2 || k_ == 1)) {
      reset_partners();
      return true;
    }
  }
}

AllianceSpec SpecEnumerator::current_spec() const {
  AllianceSpec s;
  s.k = k_;
  s.alliances.resize(n_);
  for (int m = 0; m < k_; ++m)
    if (partner_of_[m] >= 0)
      s.alliances[block_of_[m]][partner_of_[m]].push_back(m);
  return s;
}

std::optional<AllianceSpec> SpecEnumerator::next() {
  while (!exhausted_) {
    AllianceSpec s = current_spec();
    if (!advance_partner() && !advance_partition()) exhausted_ = true;
    if (validate_spec(s).empty()) return s;
  }
  return std::nullopt;
}

TheoremReport verify_iff_theorems(int k) {
  TheoremReport rep;
  rep.k = k;

  std::vector<std::uint64_t> maximal_keys, mtm_keys, construction_keys;
  std::vector<std::pair<TopologyMatrix, TopologyMatrix>> grown;
  rep.fixpoints_hold = true;

  TopologyEnumerator en(k);
  while (auto t = en.next()) {
    ++rep.n_matrices;
    const bool optimal = is_dof_half_optimal(*t);
    const bool maximal = is_maximal_by_definition(*t).is_maximal;
    const bool mtm = is_mtm(*t).is_maximal;
    if (optimal) ++rep.n_dof_optimal;
    if (maximal) {
      maximal_keys.push_back(pack_bits(*t));
      const auto fix = transform_to_mtm(*t, GrowthStrategy::auto_pick);
      if (fix.matrix != *t) {
        rep.fixpoints_hold = false;
        rep.mismatches.push_back("maximal yet not a transform fixpoint: " +
                                 one_line(*t));
      }
    }
    if (mtm) mtm_keys.push_back(pack_bits(*t));
    if (optimal && !maximal)
      grown.emplace_back(*t, transform_to_mtm(*t, GrowthStrategy::auto_pick).matrix);
  }

  for (int n = 1; n <= k; ++n) {
    SpecEnumerator specs(k, n);
    while (auto s = specs.next())
      construction_keys.push_back(pack_bits(derive_topology(*s)));
  }
  std::sort(construction_keys.begin(), construction_keys.end());
  construction_keys.erase(
      std::unique(construction_keys.begin(), construction_keys.end()),
      construction_keys.end());
  std::sort(maximal_keys.begin(), maximal_keys.end());
  std::sort(mtm_keys.begin(), mtm_keys.end());

  rep.n_maximal = maximal_keys.size();
  rep.n_mtm_positive = mtm_keys.size();
  rep.n_construction = construction_keys.size();

  auto report_difference = [&rep, k](const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b,
                                     const std::string& label) {
    std::vector<std::uint64_t> diff;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(diff));
    for (std::uint64_t key : diff) {
      std::string bits;
      for (int i = k * k - 1; i >= 0; --i) bits += ((key >> i) & 1u) ? '1' : '0';
      rep.mismatches.push_back(label + ": " + bits);
    }
    return diff.empty();
  };

  rep.construction_matches =
      report_difference(maximal_keys, construction_keys,
                        "maximal but never derived from a spec") &
      report_difference(construction_keys, maximal_keys,
                        "derived from a spec but not maximal");
  rep.mtm_matches =
      report_difference(maximal_keys, mtm_keys,
                        "maximal but rejected by the block discriminant") &
      report_difference(mtm_keys, maximal_keys,
                        "accepted by the block discriminant but not maximal");

  rep.transforms_complete = true;
  for (const auto& [from, to] : grown) {
    if (!std::binary_search(maximal_keys.begin(), maximal_keys.end(),
                            pack_bits(to))) {
      rep.transforms_complete = false;
      rep.mismatches.push_back("transform left the maximal set: " +
                               one_line(from) + " -> " + one_line(to));
    }
  }
  return rep;
}

}  // namespace tim
