#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tim/topology.hpp"
#include "tim/verdict.hpp"

namespace tim {

// The two relations induced on messages by a topology.
//
// alignment_adj: undirected. {a, b} are adjacent iff some third receiver hears
// both transmitters a and b, so their signals must occupy the same subspace at
// that receiver.
// conflict_from[i]: directed, off-diagonal. Bit j set iff receiver i hears
// transmitter j (j != i), i.e. message i is conflicted by source j.
struct MessageGraph {
  int k = 0;
  std::vector<std::uint64_t> alignment_adj;
  std::vector<std::uint64_t> conflict_from;
};

MessageGraph build_message_graph(const TopologyMatrix& t);

// Connected components of the alignment graph, each sorted ascending, ordered
// by smallest member. set_of[m] is the index of m's component.
struct AlignmentPartition {
  std::vector<std::vector<int>> sets;
  std::vector<int> set_of;
};

AlignmentPartition alignment_sets(const MessageGraph& g);

// A conflict edge joining two messages of the same alignment set: the victim's
// desired signal and the interference land in one subspace, so neither
// message can reach rate 1/2.
struct InternalConflict {
  int set_index;
  int victim;  // receiver
  int source;  // transmitter
};

std::vector<InternalConflict> internal_conflicts(const MessageGraph& g,
                                                 const AlignmentPartition& p);

bool is_dof_half_optimal(const TopologyMatrix& t);

// Optimal, and flipping any absent off-diagonal link breaks optimality.
MaximalityVerdict is_maximal_by_definition(const TopologyMatrix& t);

// GraphViz rendering: alignment edges solid/undirected, conflicts dashed
// red arrows source -> victim.
std::string write_dot(const TopologyMatrix& t);

}  // namespace tim
