#include "tim/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tim/message_graph.hpp"

namespace tim {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Subtracts the span of `basis` (orthonormal rows) from v, twice for
// numerical stability.
void project_out(const std::vector<std::vector<double>>& basis,
                 std::vector<double>& v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
}

std::vector<std::vector<double>> orthonormal_basis(
    const std::vector<std::vector<double>>& vectors) {
  std::vector<std::vector<double>> basis;
  for (auto v : vectors) {
    const double scale = norm(v);
    project_out(basis, v);
    const double rest = norm(v);
    if (rest > 1e-12 * std::max(1.0, scale)) {
      for (double& x : v) x /= rest;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

void check_assignment(const TopologyMatrix& t, const std::vector<int>& assignment,
                      const BeamformingPlan& plan) {
  if (static_cast<int>(assignment.size()) != t.users())
    throw TopologyError("assignment must name an alliance per message");
  for (int m = 0; m < t.users(); ++m)
    if (assignment[m] < 0 || assignment[m] >= plan.n_alliances)
      throw TopologyError("message " + std::to_string(m + 1) +
                          " assigned to an unknown alliance");
}

}  // namespace

std::vector<std::vector<double>> build_vectors(int n, int l) {
  if (n < 1 || l < 1)
    throw TopologyError("need at least one vector and one slot");
  std::vector<std::vector<double>> out(n, std::vector<double>(l));
  for (int m = 0; m < n; ++m) {
    double p = 1.0;
    for (int j = 0; j < l; ++j) {
      out[m][j] = p;
      p *= static_cast<double>(m + 1);
    }
  }
  return out;
}

std::vector<std::vector<double>> sample_channels(const TopologyMatrix& t,
                                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(0.5, 2.0);
  std::uniform_int_distribution<int> sign(0, 1);
  const int k = t.users();
  std::vector<std::vector<double>> ch(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (!t.link(i, j)) continue;
      double h = 0.0;
      for (int tries = 0; std::abs(h) < 1e-6; ++tries) {
        if (tries >= 100) throw TopologyError("channel sampling degenerated");
        h = magnitude(rng) * (sign(rng) ? 1.0 : -1.0);
      }
      ch[i][j] = h;
    }
  return ch;
}

ReceivedSpace simulate_receive(const TopologyMatrix& t,
                               const std::vector<int>& assignment,
                               const BeamformingPlan& plan, int receiver) {
  check_assignment(t, assignment, plan);
  if (receiver < 0 || receiver >= t.users())
    throw TopologyError("receiver index out of range");

  ReceivedSpace rs;
  for (int m = 0; m < t.users(); ++m) {
    const double h = plan.channel.at(receiver).at(m);
    if (t.link(receiver, m) == (h == 0.0))
      throw TopologyError("channel entry (" + std::to_string(receiver + 1) +
                          ", " + std::to_string(m + 1) +
                          ") disagrees with the topology");
    if (!t.link(receiver, m)) continue;
    std::vector<double> dir = plan.vectors.at(assignment[m]);
    for (double& x : dir) x *= h;
    if (m == receiver)
      rs.desired = std::move(dir);
    else
      rs.interference.push_back(std::move(dir));
  }
  return rs;
}

DecodeReport decode_with_plan(const TopologyMatrix& t,
                              const std::vector<int>& assignment,
                              const BeamformingPlan& plan, double tol) {
  DecodeReport rep;
  rep.extension = plan.extension;
  rep.all_separable = true;
  for (int i = 0; i < t.users(); ++i) {
    const ReceivedSpace rs = simulate_receive(t, assignment, plan, i);
    const auto basis = orthonormal_basis(rs.interference);
    std::vector<double> residual = rs.desired;
    project_out(basis, residual);
    ReceiverDecode rd;
    rd.margin = norm(residual);
    rd.separable = rd.margin / norm(rs.desired) > tol;
    rep.all_separable = rep.all_separable && rd.separable;
    rep.receivers.push_back(rd);
  }
  rep.worst_margin = rep.receivers.empty() ? 0.0 : rep.receivers[0].margin;
  for (const auto& rd : rep.receivers)
    rep.worst_margin = std::min(rep.worst_margin, rd.margin);
  rep.dof = rep.all_separable ? Fraction(1, plan.extension) : Fraction(0, 1);
  return rep;
}

namespace {

DecodeReport run_trials(const TopologyMatrix& t,
                        const std::vector<int>& assignment, int n_alliances,
                        int extension, int trials, uint64_t seed, double tol) {
  if (trials < 1) throw TopologyError("need at least one trial");
  std::mt19937_64 rng(seed);
  BeamformingPlan plan;
  plan.n_alliances = n_alliances;
  plan.extension = extension;
  plan.vectors = build_vectors(n_alliances, extension);

  DecodeReport merged;
  for (int trial = 0; trial < trials; ++trial) {
    plan.channel = sample_channels(t, rng);
    DecodeReport rep = decode_with_plan(t, assignment, plan, tol);
    if (trial == 0) {
      merged = std::move(rep);
      continue;
    }
    merged.all_separable = merged.all_separable && rep.all_separable;
    for (size_t i = 0; i < merged.receivers.size(); ++i) {
      merged.receivers[i].separable =
          merged.receivers[i].separable && rep.receivers[i].separable;
      merged.receivers[i].margin =
          std::min(merged.receivers[i].margin, rep.receivers[i].margin);
    }
    merged.worst_margin = std::min(merged.worst_margin, rep.worst_margin);
  }
  merged.dof = merged.all_separable ? Fraction(1, extension) : Fraction(0, 1);
  return merged;
}

}  // namespace

DecodeReport verify_decodability(const TopologyMatrix& t,
                                 const GeneralizedAllianceSpec& s, int trials,
                                 uint64_t seed, double tol) {
  if (derive_generalized_topology(s) != t)
    throw TopologyError("spec does not derive the given topology");
  std::vector<int> assignment(t.users(), -1);
  const auto mem = s.members();
  for (size_t i = 0; i < mem.size(); ++i)
    for (int m : mem[i]) assignment[m] = static_cast<int>(i);
  return run_trials(t, assignment, s.alliance_count(), compute_e_max(s) + 1,
                    trials, seed, tol);
}

DecodeReport verify_decodability(const TopologyMatrix& t, int trials,
                                 uint64_t seed, double tol) {
  const auto part = alignment_sets(build_message_graph(t));
  return run_trials(t, part.set_of, static_cast<int>(part.sets.size()), 2,
                    trials, seed, tol);
}

}  // namespace tim
