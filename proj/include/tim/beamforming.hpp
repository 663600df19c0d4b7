#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tim/fraction.hpp"
#include "tim/generalized.hpp"
#include "tim/topology.hpp"

namespace tim {

// Linear scheme over `extension` time slots: every alliance owns one vector,
// every message is sent along its alliance's vector, channels are nonzero
// exactly on topology links.
struct BeamformingPlan {
  int n_alliances = 0;
  int extension = 0;                          // slots L; rate target 1/L
  std::vector<std::vector<double>> vectors;   // n_alliances x extension
  std::vector<std::vector<double>> channel;   // K x K, 0 off-link
};

// Moment-curve vectors (1, m, m^2, ..., m^{l-1}) for m = 1..n: any min(n, l)
// of them are linearly independent (Vandermonde).
std::vector<std::vector<double>> build_vectors(int n, int l);

// Magnitude uniform in [0.5, 2.0], random sign, one draw per link; zero off
// link.  The magnitude floor keeps decode margins away from the tolerance.
std::vector<std::vector<double>> sample_channels(const TopologyMatrix& t,
                                                 std::mt19937_64& rng);

// What one receiver observes: its own message's direction and one direction
// per heard foreign transmitter (aligned transmitters land in parallel).
struct ReceivedSpace {
  std::vector<double> desired;
  std::vector<std::vector<double>> interference;
};

// assignment[m] = alliance owning message m.  Throws when the plan's channel
// support disagrees with the topology row or the assignment is unusable.
ReceivedSpace simulate_receive(const TopologyMatrix& t,
                               const std::vector<int>& assignment,
                               const BeamformingPlan& plan, int receiver);

struct ReceiverDecode {
  bool separable = false;
  // Norm of the desired direction's component orthogonal to the interference
  // span; scales with the channel, while the pass verdict compares the
  // unit-normalized residual against the tolerance and does not.
  double margin = 0.0;
};

struct DecodeReport {
  int extension = 0;
  bool all_separable = false;
  Fraction dof;  // 1/extension when every receiver separates, else 0
  double worst_margin = 0.0;
  std::vector<ReceiverDecode> receivers;
};

// Decodability of one fixed plan.
DecodeReport decode_with_plan(const TopologyMatrix& t,
                              const std::vector<int>& assignment,
                              const BeamformingPlan& plan, double tol = 1e-9);

// Runs `trials` independently sampled channel draws against the scheme the
// spec prescribes (one vector per alliance, extension e_max + 1); a receiver
// must separate in every trial and keeps its worst margin.  Throws when the
// spec does not derive t or trials < 1.
DecodeReport verify_decodability(const TopologyMatrix& t,
                                 const GeneralizedAllianceSpec& s, int trials,
                                 uint64_t seed, double tol = 1e-9);

// Spec-free variant: messages are assigned to their alignment sets and the
// scheme runs over two slots, the rate-1/2 case.  Topologies with internal
// conflicts fail here naturally (a conflicting co-member interferes in
// parallel with the desired direction).
DecodeReport verify_decodability(const TopologyMatrix& t, int trials,
                                 uint64_t seed, double tol = 1e-9);

}  // namespace tim
