#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tim/alliance.hpp"
#include "tim/fraction.hpp"
#include "tim/topology.hpp"
#include "tim/verdict.hpp"

namespace tim {

// A set of messages interfered with by every member of several foreign
// alliances at once; |interferers| per sub-alliance drives the achievable
// rate 1/(E_M+1).
struct GeneralizedSubAlliance {
  std::vector<int> messages;     // 0-based message indices
  std::vector<int> interferers;  // 0-based alliance indices, never the owner
};

struct GeneralizedAllianceSpec {
  int k = 0;
  std::vector<std::vector<GeneralizedSubAlliance>> alliances;

  int alliance_count() const { return static_cast<int>(alliances.size()); }
  std::vector<std::vector<int>> members() const;  // per alliance, sorted
};

// Every single-partner spec embeds by wrapping each partner into a
// one-element interferer set.
GeneralizedAllianceSpec lift(const AllianceSpec& s);

// Inverse of lift; empty when some interferer set has more than one entry.
std::optional<AllianceSpec> lower(const GeneralizedAllianceSpec& s);

struct GeneralizedViolation {
  enum class Kind {
    empty_alliance,      // alliance has no sub-alliances
    coverage_mismatch,   // message claimed by zero or several sub-alliances
    pair_not_hostile,    // neither alliance of a pair ever interferes the other
    subset_interferers,  // one sibling's interferer set contains another's
    disjoint_siblings,   // strict mode: two siblings share no interferer
  };
  Kind kind;
  int a = -1;
  int b = -1;
  std::string text;
};

// Empty result == the spec describes a sound multi-interferer construction.
// strict_overlap additionally demands every two sibling interferer sets
// intersect (off by default: it would outlaw all single-partner specs).
// Malformed input throws SpecError.
std::vector<GeneralizedViolation> validate_generalized_spec(
    const GeneralizedAllianceSpec& s, bool strict_overlap = false);

// Receiver n hears transmitter m != n iff m's alliance is listed in the
// interferer set of n's sub-alliance.
TopologyMatrix derive_generalized_topology(const GeneralizedAllianceSpec& s);

// Largest interferer-set cardinality in the spec.
int compute_e_max(const GeneralizedAllianceSpec& s);

// True iff every interferer set has the maximal cardinality: only then is
// the derived topology maximal for rate 1/(E_M+1).
bool is_maximal_for_dof(const GeneralizedAllianceSpec& s);

// Column equivalence classes, each sorted, ordered by smallest member:
// x ~ y iff neither hears the other and their columns agree on every other
// row.  A class is always heard entirely or not at all.
std::vector<std::vector<int>> column_classes(const TopologyMatrix& t);

// Maximality against target rate 1/(e_m+1).  e_m = 1 uses the alignment-set
// discriminant (equivalence classes alone cannot see addable links there);
// e_m >= 2 demands every receiver hear exactly e_m whole classes and every
// class pair interfere at least one way.
MaximalityVerdict is_mtm_for_dof(const TopologyMatrix& t, int e_m);

// Edge (p, q) iff receiver p does NOT hear transmitter q.
struct DemandGraph {
  int k = 0;
  std::vector<std::pair<int, int>> edges;
};

DemandGraph build_demand_graph(const TopologyMatrix& t);

// Size of the largest vertex subset inducing no directed cycle.  Exhaustive;
// refuses k > 20 rather than approximate.
int max_acyclic_subset(const DemandGraph& d);

struct DofReport {
  int e_max = 0;
  Fraction dof_achievable;  // 1/(e_max+1)
  int psi = 1;
  Fraction dof_upper;  // 1/psi
  bool tight = false;  // dof_achievable == dof_upper
};

// Report for a topology together with the spec that generates it; throws if
// the spec does not derive t.
DofReport dof_report(const TopologyMatrix& t, const GeneralizedAllianceSpec& s);

// Explanation-free report: every row decomposes into whole column classes,
// so the class count per receiver bounds its interference dimension and
// 1/(max+1) is achievable by per-class beams.
DofReport infer_dof_report(const TopologyMatrix& t);

}  // namespace tim
