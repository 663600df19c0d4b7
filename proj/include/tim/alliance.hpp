#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tim/topology.hpp"

namespace tim {

struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Partition of the K messages into alliances, each alliance split into
// sub-alliances keyed by the single foreign alliance that interferes with
// them: alliances[i][j] holds the members of alliance i that hear all of
// alliance j.  Indices are 0-based throughout.
struct AllianceSpec {
  int k = 0;
  std::vector<std::map<int, std::vector<int>>> alliances;

  int alliance_count() const { return static_cast<int>(alliances.size()); }

  // Per-alliance member lists (union over its sub-alliances), sorted.
  std::vector<std::vector<int>> members() const;
};

struct PartitionViolation {
  enum class Kind {
    no_common_conflict,  // nobody hears this alliance
    empty_alliance,      // alliance has no members
    pair_uncovered,      // two alliances never interfere in either direction
    coverage_mismatch,   // a message is claimed by zero or several sub-alliances
  };
  Kind kind;
  int a = -1;  // alliance index, or the message for coverage_mismatch
  int b = -1;  // partner alliance for pair_uncovered
  std::string text;
};

// Checks the conditions under which the derived topology is maximal; an empty
// result means all hold.  Malformed input (indices out of range, an alliance
// hostile to itself, duplicate members in one list) throws SpecError instead.
// The one-user spec with a single partnerless alliance is accepted as a
// degenerate valid case.
std::vector<PartitionViolation> validate_spec(const AllianceSpec& s);

// Interference pattern generated by the spec: receiver n hears transmitter
// m != n iff n sits in the sub-alliance hostile to m's alliance.
TopologyMatrix derive_topology(const AllianceSpec& s);

// Fewest messages that can host n alliances: each unordered alliance pair
// needs a member on at least one side, and every alliance needs a member and
// a listener.
long long min_messages(int n);

// Largest alliance count supportable by k messages.
int max_alliances(int k);

}  // namespace tim
