#include "tim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tim/alliance.hpp"
#include "tim/beamforming.hpp"
#include "tim/generalized.hpp"
#include "tim/matrix_analysis.hpp"
#include "tim/message_graph.hpp"
#include "tim/oracle.hpp"
#include "tim/spec_json.hpp"
#include "tim/topology.hpp"

namespace tim {

namespace {

CommandResult input_error(const std::string& message) {
  CommandResult r;
  r.exit_code = 2;
  r.human_text = "error: " + message + "\n";
  return r;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return bool(out);
}

std::optional<TopologyMatrix> load_matrix(const std::string& path,
                                          CommandResult& err) {
  auto text = read_file(path);
  if (!text) {
    err = input_error("cannot read " + path);
    return std::nullopt;
  }
  try {
    return TopologyMatrix::parse(*text);
  } catch (const TopologyError& e) {
    err = input_error(path + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<GeneralizedAllianceSpec> load_spec(const std::string& path,
                                                 CommandResult& err) {
  auto text = read_file(path);
  if (!text) {
    err = input_error("cannot read " + path);
    return std::nullopt;
  }
  try {
    return parse_spec_json(*text);
  } catch (const SpecError& e) {
    err = input_error(path + ": " + e.what());
    return std::nullopt;
  }
}

// Denominator string for a symmetric per-message rate: "1/2", "1/3", or a
// bare integer d meaning 1/d.  Returns the interference depth d-1, or -1.
int parse_target_depth(const std::string& s) {
  std::string digits = s;
  if (digits.rfind("1/", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 2 ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    return -1;
  }
  const int d = std::stoi(digits);
  if (d < 2 || d > TopologyMatrix::max_users) return -1;
  return d - 1;
}

std::string kind_name(VerdictWitness::Kind k) {
  switch (k) {
    case VerdictWitness::Kind::internal_conflict: return "internal_conflict";
    case VerdictWitness::Kind::addable_link: return "addable_link";
    case VerdictWitness::Kind::block_defect: return "block_defect";
    case VerdictWitness::Kind::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string kind_name(PartitionViolation::Kind k) {
  switch (k) {
    case PartitionViolation::Kind::no_common_conflict: return "no_common_conflict";
    case PartitionViolation::Kind::empty_alliance: return "empty_alliance";
    case PartitionViolation::Kind::pair_uncovered: return "pair_uncovered";
    case PartitionViolation::Kind::coverage_mismatch: return "coverage_mismatch";
  }
  return "unknown";
}

std::string kind_name(GeneralizedViolation::Kind k) {
  switch (k) {
    case GeneralizedViolation::Kind::empty_alliance: return "empty_alliance";
    case GeneralizedViolation::Kind::coverage_mismatch: return "coverage_mismatch";
    case GeneralizedViolation::Kind::pair_not_hostile: return "pair_not_hostile";
    case GeneralizedViolation::Kind::subset_interferers: return "subset_interferers";
    case GeneralizedViolation::Kind::disjoint_siblings: return "disjoint_siblings";
  }
  return "unknown";
}

std::string format_sets(const std::vector<std::vector<int>>& sets) {
  std::ostringstream out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (s) out << ' ';
    out << '{';
    for (std::size_t i = 0; i < sets[s].size(); ++i) {
      if (i) out << ", ";
      out << sets[s][i] + 1;
    }
    out << '}';
  }
  return out.str();
}

nlohmann::json sets_to_json(const std::vector<std::vector<int>>& sets) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : sets) {
    nlohmann::json one = nlohmann::json::array();
    for (int m : s) one.push_back(m + 1);
    arr.push_back(one);
  }
  return arr;
}

nlohmann::json matrix_rows(const TopologyMatrix& t) {
  nlohmann::json rows = nlohmann::json::array();
  const std::string bits = t.bitstring();
  for (int i = 0; i < t.users(); ++i) {
    rows.push_back(bits.substr(static_cast<std::size_t>(i) * t.users(),
                               t.users()));
  }
  return rows;
}

std::string format_margin(double m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", m);
  return buf;
}

}  // namespace

CommandResult cmd_analyze(const std::string& path, const std::string& dof,
                          const std::string& dot_out) {
  CommandResult r;
  auto t = load_matrix(path, r);
  if (!t) return r;
  const int depth = parse_target_depth(dof);
  if (depth < 0) {
    return input_error("target rate must be \"1/d\" with d >= 2 (got \"" +
                       dof + "\")");
  }
  const MaximalityVerdict v = is_mtm_for_dof(*t, depth);
  const auto sets =
      depth == 1 ? alignment_sets(build_message_graph(*t)).sets
                 : column_classes(*t);
  const Fraction rate{1, depth + 1};

  std::ostringstream out;
  out << "k = " << t->users() << ", target rate " << rate.str() << "\n";
  out << (depth == 1 ? "alignment sets: " : "interference classes: ")
      << format_sets(sets) << "\n";
  if (v.is_maximal) {
    out << "verdict: maximal\n";
  } else if (v.is_dof_optimal) {
    out << "verdict: rate-optimal but not maximal\n";
  } else {
    out << "verdict: not rate-optimal\n";
  }
  if (v.witness && !v.is_maximal) {
    out << "witness: " << v.witness->detail << "\n";
  }

  nlohmann::json payload;
  payload["k"] = t->users();
  payload["target_rate"] = rate.str();
  payload["dof_optimal"] = v.is_dof_optimal;
  payload["maximal"] = v.is_maximal;
  payload["sets"] = sets_to_json(sets);
  if (v.witness) {
    payload["witness"] = {{"kind", kind_name(v.witness->kind)},
                          {"detail", v.witness->detail}};
  } else {
    payload["witness"] = nullptr;
  }

  if (!dot_out.empty()) {
    if (!write_file(dot_out, write_dot(*t))) {
      return input_error("cannot write " + dot_out);
    }
    out << "wrote " << dot_out << "\n";
  }

  r.exit_code = v.is_maximal ? 0 : 1;
  r.human_text = out.str();
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_construct(const std::string& spec_path,
                            const std::string& out_path) {
  CommandResult r;
  auto spec = load_spec(spec_path, r);
  if (!spec) return r;

  const auto plain = lower(*spec);
  std::vector<std::string> problems;
  try {
    if (plain) {
      // Single-partner specs get the stricter partition conditions (these
      // include no_common_conflict, which the generalized form replaces).
      for (const auto& v : validate_spec(*plain)) {
        problems.push_back(kind_name(v.kind) + ": " + v.text);
      }
    } else {
      for (const auto& v : validate_generalized_spec(*spec)) {
        problems.push_back(kind_name(v.kind) + ": " + v.text);
      }
    }
  } catch (const SpecError& e) {
    return input_error(spec_path + ": " + e.what());
  }
  if (!problems.empty()) {
    std::ostringstream out;
    out << "error: spec rejected\n";
    for (const auto& p : problems) out << "  - " << p << "\n";
    r.exit_code = 2;
    r.human_text = out.str();
    return r;
  }

  const TopologyMatrix t =
      plain ? derive_topology(*plain) : derive_generalized_topology(*spec);
  const int e_max = compute_e_max(*spec);
  const Fraction rate{1, e_max + 1};

  std::ostringstream out;
  out << "spec valid: " << spec->alliance_count() << " alliance"
      << (spec->alliance_count() == 1 ? "" : "s") << ", interference depth "
      << e_max << ", rate " << rate.str() << "\n";
  if (spec->k == 1) out << "degenerate single-user topology\n";

  nlohmann::json payload;
  payload["k"] = spec->k;
  payload["alliances"] = sets_to_json(spec->members());
  payload["e_max"] = e_max;
  payload["rate"] = rate.str();
  payload["matrix"] = matrix_rows(t);
  payload["degenerate"] = spec->k == 1;

  if (!out_path.empty()) {
    if (!write_file(out_path, t.serialize())) {
      return input_error("cannot write " + out_path);
    }
    out << "wrote " << out_path << "\n";
  } else {
    out << t.serialize();
  }

  r.exit_code = 0;
  r.human_text = out.str();
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_transform(const std::string& path,
                            const std::string& strategy) {
  CommandResult r;
  auto t = load_matrix(path, r);
  if (!t) return r;

  GrowthStrategy strat;
  if (strategy == "merge") {
    strat = GrowthStrategy::merge;
  } else if (strategy == "add-links") {
    strat = GrowthStrategy::add_links;
  } else if (strategy == "auto") {
    strat = GrowthStrategy::auto_pick;
  } else {
    return input_error("strategy must be merge, add-links, or auto (got \"" +
                       strategy + "\")");
  }

  const MessageGraph g = build_message_graph(*t);
  const AlignmentPartition part = alignment_sets(g);
  const auto conflicts = internal_conflicts(g, part);
  if (!conflicts.empty()) {
    const int a = std::min(conflicts[0].victim, conflicts[0].source) + 1;
    const int b = std::max(conflicts[0].victim, conflicts[0].source) + 1;
    r.exit_code = 1;
    std::ostringstream out;
    out << "internal conflict between messages " << a << " and " << b
        << "; only rate-optimal topologies can be grown\n";
    r.human_text = out.str();
    nlohmann::json payload;
    payload["conflict"] = {a, b};
    r.payload = std::move(payload);
    return r;
  }

  const TransformResult res = transform_to_mtm(*t, strat);

  std::ostringstream out;
  out << res.matrix.serialize();
  if (res.added_links.empty()) {
    out << "no links added (already maximal)\n";
  } else {
    out << "added links (receiver, transmitter):";
    for (const auto& [row, col] : res.added_links) {
      out << " (" << row + 1 << ", " << col + 1 << ")";
    }
    out << "\n";
  }

  nlohmann::json payload;
  payload["matrix"] = matrix_rows(res.matrix);
  nlohmann::json links = nlohmann::json::array();
  for (const auto& [row, col] : res.added_links) {
    links.push_back({row + 1, col + 1});
  }
  payload["added_links"] = std::move(links);
  payload["strategy"] = strategy;

  r.exit_code = 0;
  r.human_text = out.str();
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_enumerate(int k, bool canonical,
                            const std::string& csv_path) {
  if (k < 1 || k > 5) {
    return input_error("exhaustive enumeration handles 1 to 5 users");
  }
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::binary);
    if (!csv) return input_error("cannot write " + csv_path);
    csv << "matrix,dof_optimal,maximal,alliance_count,canonical\n";
  }

  std::uint64_t total = 0, optimal = 0, maximal = 0;
  TopologyEnumerator stream(k);
  while (auto t = stream.next()) {
    const MaximalityVerdict v = is_mtm(*t);
    ++total;
    if (v.is_dof_optimal) ++optimal;
    if (v.is_maximal) ++maximal;
    if (csv.is_open()) {
      csv << t->bitstring() << ',' << (v.is_dof_optimal ? '1' : '0') << ','
          << (v.is_maximal ? '1' : '0') << ',';
      if (v.is_maximal) {
        csv << alignment_sets(build_message_graph(*t)).sets.size();
      }
      csv << ',';
      if (canonical) csv << canonical_label(*t).bitstring();
      csv << '\n';
    }
  }
  if (csv.is_open() && !csv) return input_error("cannot write " + csv_path);

  CommandResult r;
  std::ostringstream out;
  out << "K = " << k << ": " << total << " topologies, " << optimal
      << " rate-optimal, " << maximal << " maximal\n";
  if (!csv_path.empty()) out << "wrote " << csv_path << "\n";
  r.human_text = out.str();

  nlohmann::json payload;
  payload["k"] = k;
  payload["total"] = total;
  payload["dof_optimal"] = optimal;
  payload["maximal"] = maximal;
  if (!csv_path.empty()) payload["csv"] = csv_path;
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_verify_theorems(int k) {
  if (k < 1 || k > 5) {
    return input_error("exhaustive verification handles 1 to 5 users");
  }
  const TheoremReport rep = verify_iff_theorems(k);

  auto yes = [](bool b) { return b ? "yes" : "NO"; };
  std::ostringstream out;
  out << "K = " << rep.k << ": " << rep.n_matrices << " topologies, "
      << rep.n_dof_optimal << " rate-optimal, " << rep.n_maximal
      << " maximal\n";
  out << "spec construction yields exactly the maximal set: "
      << yes(rep.construction_matches) << " (" << rep.n_construction
      << " derived)\n";
  out << "block discriminant agrees with the definition: "
      << yes(rep.mtm_matches) << " (" << rep.n_mtm_positive << " accepted)\n";
  out << "maximal topologies are growth fixpoints: " << yes(rep.fixpoints_hold)
      << "\n";
  out << "growth reaches a maximal topology from every rate-optimal start: "
      << yes(rep.transforms_complete) << "\n";
  for (const auto& m : rep.mismatches) out << "  mismatch: " << m << "\n";

  CommandResult r;
  r.exit_code = rep.all_hold() ? 0 : 1;
  r.human_text = out.str();
  nlohmann::json payload;
  payload["k"] = rep.k;
  payload["total"] = rep.n_matrices;
  payload["dof_optimal"] = rep.n_dof_optimal;
  payload["maximal"] = rep.n_maximal;
  payload["construction"] = rep.n_construction;
  payload["mtm_positive"] = rep.n_mtm_positive;
  payload["construction_matches"] = rep.construction_matches;
  payload["mtm_matches"] = rep.mtm_matches;
  payload["fixpoints_hold"] = rep.fixpoints_hold;
  payload["transforms_complete"] = rep.transforms_complete;
  payload["mismatches"] = rep.mismatches;
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_verify_dof(const std::string& path,
                             const std::string& spec_path, int trials,
                             std::uint64_t seed, double tol) {
  CommandResult r;
  auto t = load_matrix(path, r);
  if (!t) return r;

  DecodeReport rep;
  try {
    if (!spec_path.empty()) {
      auto spec = load_spec(spec_path, r);
      if (!spec) return r;
      rep = verify_decodability(*t, *spec, trials, seed, tol);
    } else {
      rep = verify_decodability(*t, trials, seed, tol);
    }
  } catch (const SpecError& e) {
    return input_error(e.what());
  } catch (const TopologyError& e) {
    return input_error(e.what());
  }

  std::ostringstream out;
  out << "extension L = " << rep.extension << ", trials " << trials
      << ", seed " << seed << "\n";
  int failures = 0;
  for (std::size_t i = 0; i < rep.receivers.size(); ++i) {
    const auto& rec = rep.receivers[i];
    out << "receiver " << i + 1 << ": ";
    if (rec.separable) {
      out << "margin " << format_margin(rec.margin) << "\n";
    } else {
      out << "FAILS (margin " << format_margin(rec.margin) << ")\n";
      ++failures;
    }
  }
  if (rep.all_separable) {
    out << "all receivers decode: DoF " << rep.dof.str() << "\n";
  } else {
    out << failures << (failures == 1 ? " receiver fails" : " receivers fail")
        << ": DoF " << rep.dof.str() << "\n";
  }

  nlohmann::json payload;
  payload["extension"] = rep.extension;
  payload["trials"] = trials;
  payload["seed"] = seed;
  payload["all_separable"] = rep.all_separable;
  payload["dof"] = rep.dof.str();
  payload["worst_margin"] = rep.worst_margin;
  nlohmann::json recs = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.receivers.size(); ++i) {
    recs.push_back({{"receiver", i + 1},
                    {"separable", rep.receivers[i].separable},
                    {"margin", rep.receivers[i].margin}});
  }
  payload["receivers"] = std::move(recs);

  r.exit_code = rep.all_separable ? 0 : 1;
  r.human_text = out.str();
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_bound(const std::string& path, const std::string& spec_path) {
  CommandResult r;
  auto t = load_matrix(path, r);
  if (!t) return r;

  DofReport rep;
  try {
    if (!spec_path.empty()) {
      auto spec = load_spec(spec_path, r);
      if (!spec) return r;
      rep = dof_report(*t, *spec);
    } else {
      rep = infer_dof_report(*t);
    }
  } catch (const SpecError& e) {
    return input_error(e.what());
  } catch (const TopologyError& e) {
    return input_error(e.what());
  }

  std::ostringstream out;
  out << "achievable " << rep.dof_achievable.str() << " (interference depth "
      << rep.e_max << "), upper bound " << rep.dof_upper.str()
      << " (acyclic demand subset " << rep.psi << "), "
      << (rep.tight ? "tight" : "not tight") << "\n";

  nlohmann::json payload;
  payload["e_max"] = rep.e_max;
  payload["achievable"] = rep.dof_achievable.str();
  payload["psi"] = rep.psi;
  payload["upper"] = rep.dof_upper.str();
  payload["tight"] = rep.tight;

  r.exit_code = 0;
  r.human_text = out.str();
  r.payload = std::move(payload);
  return r;
}

CommandResult cmd_export_dot(const std::string& path,
                             const std::string& out_path) {
  CommandResult r;
  auto t = load_matrix(path, r);
  if (!t) return r;
  const std::string dot = write_dot(*t);
  if (!out_path.empty()) {
    if (!write_file(out_path, dot)) return input_error("cannot write " + out_path);
    r.human_text = "wrote " + out_path + "\n";
  } else {
    r.human_text = dot;
  }
  nlohmann::json payload;
  payload["dot"] = dot;
  r.payload = std::move(payload);
  return r;
}

CommandResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"workbench for interference-alignment network topologies"};
  app.name("timbench");
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false, quiet = false;
  std::uint64_t seed = 12345;
  app.add_flag("--json", json, "emit the machine-readable document");
  app.add_flag("--quiet", quiet, "suppress output, exit code only");
  app.add_option("--seed", seed, "RNG seed for sampling commands");

  std::string analyze_file, analyze_dof = "1/2", analyze_dot;
  auto* analyze = app.add_subcommand("analyze", "verdict for a topology file");
  analyze->add_option("file", analyze_file, "topology matrix file")->required();
  analyze->add_option("--dof", analyze_dof, "target rate, \"1/d\" or d");
  analyze->add_option("--dot", analyze_dot, "also write a DOT rendering");

  std::string construct_file, construct_out;
  auto* construct =
      app.add_subcommand("construct", "derive a topology from a spec");
  construct->add_option("spec", construct_file, "spec JSON file")->required();
  construct->add_option("--out", construct_out, "write the matrix here");

  std::string transform_file, transform_strategy = "auto";
  auto* transform =
      app.add_subcommand("transform", "grow a topology to a maximal one");
  transform->add_option("file", transform_file, "topology matrix file")
      ->required();
  transform->add_option("--strategy", transform_strategy,
                        "merge, add-links, or auto");

  int enum_k = 0;
  bool enum_canonical = false;
  std::string enum_csv;
  auto* enumerate =
      app.add_subcommand("enumerate", "classify every k-user topology");
  enumerate->add_option("--k", enum_k, "number of users")->required();
  enumerate->add_flag("--canonical", enum_canonical,
                      "fill the canonical-label column");
  enumerate->add_option("--csv", enum_csv, "write per-matrix rows here");

  int verify_k = 0;
  auto* verify_theorems = app.add_subcommand(
      "verify-theorems", "cross-check the maximality characterizations");
  verify_theorems->add_option("--k", verify_k, "number of users")->required();

  std::string dof_file, dof_spec;
  int dof_trials = 10;
  double dof_tol = 1e-9;
  auto* verify_dof =
      app.add_subcommand("verify-dof", "numerical decodability check");
  verify_dof->add_option("file", dof_file, "topology matrix file")->required();
  verify_dof->add_option("--spec", dof_spec, "spec JSON the matrix derives from");
  verify_dof->add_option("--trials", dof_trials, "independent channel draws");
  verify_dof->add_option("--tol", dof_tol, "separability tolerance");

  std::string bound_file, bound_spec;
  auto* bound = app.add_subcommand("bound", "achievable rate vs upper bound");
  bound->add_option("file", bound_file, "topology matrix file")->required();
  bound->add_option("--spec", bound_spec, "spec JSON the matrix derives from");

  std::string dot_file, dot_out;
  auto* export_dot =
      app.add_subcommand("export-dot", "render the message graph as DOT");
  export_dot->add_option("file", dot_file, "topology matrix file")->required();
  export_dot->add_option("--out", dot_out, "write the DOT text here");

  std::vector<const char*> argv;
  argv.push_back("timbench");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    CommandResult r;
    if (e.get_exit_code() == 0) {  // --help
      r.exit_code = 0;
      r.human_text = app.help();
    } else {
      r.exit_code = 2;
      r.human_text = std::string("error: ") + e.what() + "\n";
    }
    return r;
  }

  CommandResult r;
  if (*analyze) {
    r = cmd_analyze(analyze_file, analyze_dof, analyze_dot);
  } else if (*construct) {
    r = cmd_construct(construct_file, construct_out);
  } else if (*transform) {
    r = cmd_transform(transform_file, transform_strategy);
  } else if (*enumerate) {
    r = cmd_enumerate(enum_k, enum_canonical, enum_csv);
  } else if (*verify_theorems) {
    r = cmd_verify_theorems(verify_k);
  } else if (*verify_dof) {
    r = cmd_verify_dof(dof_file, dof_spec, dof_trials, seed, dof_tol);
  } else if (*bound) {
    r = cmd_bound(bound_file, bound_spec);
  } else if (*export_dot) {
    r = cmd_export_dot(dot_file, dot_out);
  }

  if (json) {
    r.human_text = r.payload ? r.payload->dump(2) + "\n" : "{}\n";
  }
  if (quiet) r.human_text.clear();
  return r;
}

}  // namespace tim
