#pragma once

#include <optional>
#include <string>

namespace tim {

// Structured reason attached to a negative (or degenerate) verdict.
// Indices are 0-based internally; `detail` renders them 1-based for humans.
struct VerdictWitness {
  enum class Kind {
    internal_conflict,  // messages a, b share an alignment set and a conflict edge
    addable_link,       // link (receiver a, transmitter b) can be added conflict-free
    block_defect,       // a block-structure clause failed; see detail
    degenerate,         // K == 1: trivially maximal, no interference exists
  };

  Kind kind;
  int a = -1;
  int b = -1;
  std::string detail;
};

struct MaximalityVerdict {
  // For the symmetric-DoF-1/2 path these mean "no internal conflict" and
  // "no link can be added without creating one".  Generalized verdicts
  // (target DoF 1/n) reinterpret both against the 1/n discriminant.
  // Invariant: is_maximal implies is_dof_optimal.
  bool is_dof_optimal = false;
  bool is_maximal = false;
  std::optional<VerdictWitness> witness;
};

}  // namespace tim
