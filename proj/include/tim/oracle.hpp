#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tim/alliance.hpp"
#include "tim/topology.hpp"

namespace tim {

// One exhaustively classified matrix.  canonical_form is the
// lexicographically least relabeling; orbit_size counts the matrices of the
// same catalog sharing that form.
struct CatalogEntry {
  TopologyMatrix matrix;
  TopologyMatrix canonical_form;
  bool dof_optimal = false;
  bool maximal = false;
  std::optional<int> alliance_count;  // alignment sets, maximal entries only
  int orbit_size = 1;
};

// Streams every unit-diagonal k x k binary matrix exactly once; 2^(k(k-1))
// of them, so k is capped at 5.
class TopologyEnumerator {
 public:
  explicit TopologyEnumerator(int k);
  std::optional<TopologyMatrix> next();

 private:
  int k_ = 0;
  std::uint64_t index_ = 0;
  std::uint64_t count_ = 0;
};

std::uint64_t enumeration_size(int k);

// Uniformly random unit-diagonal matrix, for spot checks past the
// exhaustive ceiling.
TopologyMatrix sample_topology(int k, std::mt19937_64& rng);

// Lexicographic minimum over all k! simultaneous row/column relabelings;
// factorial search, capped at k = 8.
TopologyMatrix canonical_label(const TopologyMatrix& t);

// Brute-force classification of every k-user matrix from first principles.
std::vector<CatalogEntry> classify_all(int k);

// Streams every distinct alliance partition with exactly n alliances on k
// messages, each member assigned one foreign alliance to hear, keeping the
// specs that pass validate_spec.  Alliance order is normalized (partition
// blocks by smallest member), so no spec is reported twice.  k capped at 6.
class SpecEnumerator {
 public:
  SpecEnumerator(int k, int n);
  std::optional<AllianceSpec> next();

 private:
  bool advance_partner();
  bool advance_partition();
  int count_blocks() const;
  void reset_partners();
  AllianceSpec current_spec() const;

  int k_ = 0;
  int n_ = 0;
  bool exhausted_ = false;
  std::vector<int> block_of_;    // restricted growth string
  std::vector<int> partner_of_;  // heard foreign block per message
};

// Cross-validation of the three characterizations of maximality on the full
// k-catalog: (a) flip-test maximality vs the set of spec-derived matrices,
// (b) flip-test maximality vs the block-structure discriminant, (c) every
// maximal matrix is a transform fixpoint, and every conflict-free
// non-maximal matrix transforms into the maximal set.
struct TheoremReport {
  int k = 0;
  std::uint64_t n_matrices = 0;
  std::uint64_t n_dof_optimal = 0;
  std::uint64_t n_maximal = 0;
  std::uint64_t n_construction = 0;  // distinct spec-derived matrices
  std::uint64_t n_mtm_positive = 0;
  bool construction_matches = false;
  bool mtm_matches = false;
  bool fixpoints_hold = false;
  bool transforms_complete = false;
  std::vector<std::string> mismatches;  // one-line matrices with a side label

  bool all_hold() const {
    return construction_matches && mtm_matches && fixpoints_hold &&
           transforms_complete;
  }
};

TheoremReport verify_iff_theorems(int k);

}  // namespace tim
