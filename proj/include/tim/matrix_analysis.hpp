#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tim/topology.hpp"
#include "tim/verdict.hpp"

namespace tim {

// Simultaneous row/column relabeling: to_new[old] = new index.
struct Permutation {
  std::vector<int> to_new;

  int size() const { return static_cast<int>(to_new.size()); }
  bool is_identity() const;
  Permutation inverse() const;
  static Permutation identity_perm(int k);
};

// out[to_new[i]][to_new[j]] = in[i][j]; throws on a non-bijective mapping.
TopologyMatrix apply_permutation(const TopologyMatrix& t, const Permutation& p);

// Reorder so each alignment set occupies consecutive indices: sets by
// smallest original member, members ascending.  Idempotent; the permutation
// realizes input -> output.
std::pair<TopologyMatrix, Permutation> canonicalize(const TopologyMatrix& t);

// A full row segment: receiver hears every column of the source block.
struct InterferenceBlock {
  int source_block;
  int receiver;
  int begin, end;  // column range [begin, end) of the source block
};

struct BlockViolation {
  enum class Kind {
    non_identity_principal,         // a receiver hears a member of its own block
    incomplete_interference_block,  // a row covers only part of a block
    wrong_block_count,              // a row hears b full blocks instead of one
    uncovered_pair,                 // two blocks with no segment either way
  };
  Kind kind;
  int a = -1;  // receiver, or first block for uncovered_pair / non_identity_principal
  int b = -1;  // source block, count, receiver, or second block (kind-dependent)
  std::string text;
};

struct BlockDecomposition {
  Permutation permutation;  // input frame -> reported frame
  std::vector<std::pair<int, int>> blocks;  // [begin, end) per alignment set
  std::vector<InterferenceBlock> interference_blocks;
  std::vector<BlockViolation> violations;
};

// Classify the block structure of a matrix already in canonical order
// (throws otherwise).  Empty violations == maximal.  A 1-user matrix is
// degenerate: one block, nothing to check.
BlockDecomposition find_blocks(const TopologyMatrix& t);

// canonicalize, then find_blocks; the stored permutation maps the caller's
// indices to the reported ones.
BlockDecomposition analyze_blocks(const TopologyMatrix& t);

// Maximality decided purely from block structure; agrees with
// is_maximal_by_definition on every matrix (exhaustively checked for small K).
MaximalityVerdict is_mtm(const TopologyMatrix& t);

enum class GrowthStrategy { merge, add_links, auto_pick };

struct TransformResult {
  TopologyMatrix matrix;
  std::vector<std::pair<int, int>> added_links;  // (receiver, transmitter), in order
};

// Grow a conflict-free topology into a maximal one by only flipping zeros:
// fill partial rows, then connect uncovered block pairs (merge joins two
// sets through their existing listeners; add_links makes an uninterfered
// member of one set hear the other; each falls back to its sibling when
// inapplicable, auto_pick prefers add_links), then give every deaf receiver
// an interference block.  Deterministic; idempotent on maximal input.
// Throws if the input has an internal conflict, naming a conflicting pair.
TransformResult transform_to_mtm(const TopologyMatrix& t, GrowthStrategy strategy);

}  // namespace tim
