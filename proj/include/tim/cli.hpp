#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tim {

// Exit-code trichotomy: 0 the predicate held or the artifact was produced,
// 1 a negative verdict, 2 usage or input errors — so shell pipelines can
// branch on verdicts without parsing output.
struct CommandResult {
  int exit_code = 0;
  std::string human_text;  // what a terminal user reads
  std::optional<nlohmann::json> payload;  // machine document, deterministic
};

// Verdict + decomposition + witness for a topology file; target rate
// defaults to 1/2, "--dof 1/3" style strings pick deeper targets.
CommandResult cmd_analyze(const std::string& path, const std::string& dof = "1/2",
                          const std::string& dot_out = "");

// Derives a topology from a spec JSON file.  Single-partner specs get the
// full partition-condition validation, multi-interferer specs the
// generalized one; violations exit 2 with clause names.
CommandResult cmd_construct(const std::string& spec_path,
                            const std::string& out_path = "");

// Grows a conflict-free topology to a maximal one; strategy is "merge",
// "add-links", or "auto".  Internal conflicts exit 1 naming the pair.
CommandResult cmd_transform(const std::string& path,
                            const std::string& strategy = "auto");

// Classifies the full k-catalog; optional CSV dump with columns
// matrix,dof_optimal,maximal,alliance_count,canonical (canonical only
// filled when requested — it is the expensive column).
CommandResult cmd_enumerate(int k, bool canonical = false,
                            const std::string& csv_path = "");

// Cross-checks all maximality characterizations on the k-catalog.
CommandResult cmd_verify_theorems(int k);

// Numerical decodability of the beamforming scheme; spec-free runs verify
// the two-slot rate-1/2 scheme over alignment sets.
CommandResult cmd_verify_dof(const std::string& path,
                             const std::string& spec_path = "", int trials = 10,
                             std::uint64_t seed = 12345, double tol = 1e-9);

// Achievable rate vs the acyclic-subset upper bound.
CommandResult cmd_bound(const std::string& path,
                        const std::string& spec_path = "");

// Alignment/conflict graph as DOT.
CommandResult cmd_export_dot(const std::string& path,
                             const std::string& out_path = "");

// Full argument-vector entry point (program name excluded).  Applies the
// global flags: --json replaces the human text with the machine document,
// --quiet drops it, --seed feeds the sampling commands.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace tim
