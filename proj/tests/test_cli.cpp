#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "tim/cli.hpp"
#include "tim/spec_json.hpp"
#include "tim/topology.hpp"

using namespace tim;
using namespace fixtures;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("timbench_cli_" + name))
      .string();
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const std::string path = tmp_path(name);
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

nlohmann::json rows_json(const std::string& fixture) {
  nlohmann::json arr = nlohmann::json::array();
  std::istringstream in(fixture);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) arr.push_back(line);
  }
  return arr;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

const char* six_user_spec =
    R"({"k": 6, "alliances": [
  {"suballiances": [{"messages": [1], "interferers": [2]},
                    {"messages": [2], "interferers": [3]}]},
  {"suballiances": [{"messages": [3], "interferers": [1]},
                    {"messages": [4], "interferers": [3]}]},
  {"suballiances": [{"messages": [5], "interferers": [1]},
                    {"messages": [6], "interferers": [2]}]}]})";

const char* depth_two_spec =
    R"({"k": 7, "alliances": [
  {"suballiances": [{"messages": [1], "interferers": [2, 3]},
                    {"messages": [2], "interferers": [2, 4]}]},
  {"suballiances": [{"messages": [3], "interferers": [1, 3]},
                    {"messages": [4], "interferers": [1, 4]}]},
  {"suballiances": [{"messages": [5], "interferers": [2, 4]},
                    {"messages": [6], "interferers": [1, 4]}]},
  {"suballiances": [{"messages": [7], "interferers": [2, 3]}]}]})";

}  // namespace

TEST_CASE("spec JSON round-trips through its writer") {
  const GeneralizedAllianceSpec s = parse_spec_json(depth_two_spec);
  CHECK(s.k == 7);
  CHECK(s.alliance_count() == 4);
  CHECK(derive_generalized_topology(s) == TopologyMatrix::parse(k7_depth2));
  const std::string text = write_spec_json(s);
  CHECK(write_spec_json(parse_spec_json(text)) == text);

  // Indices are 1-based on disk, 0-based in memory.
  CHECK(s.alliances[0][0].messages == std::vector<int>{0});
  CHECK(s.alliances[0][0].interferers == std::vector<int>{1, 2});
}

TEST_CASE("spec JSON parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_spec_json("{"), SpecError);
  CHECK_THROWS_AS(parse_spec_json("[]"), SpecError);
  CHECK_THROWS_AS(parse_spec_json(R"({"alliances": []})"), SpecError);
  CHECK_THROWS_AS(parse_spec_json(R"({"k": "two", "alliances": []})"),
                  SpecError);
  CHECK_THROWS_AS(parse_spec_json(R"({"k": 2, "alliances": [{}]})"),
                  SpecError);
  CHECK_THROWS_AS(
      parse_spec_json(
          R"({"k": 2, "alliances": [{"suballiances": [{"messages": 1, "interferers": [2]}]}]})"),
      SpecError);
}

TEST_CASE("analyze reports verdicts with the exit trichotomy") {
  const auto good = write_tmp("k4.txt", k4_two_pairs);
  const auto r0 = cmd_analyze(good);
  CHECK(r0.exit_code == 0);
  CHECK(r0.human_text.find("verdict: maximal") != std::string::npos);
  CHECK(r0.human_text.find("{1, 2} {3, 4}") != std::string::npos);
  REQUIRE(r0.payload.has_value());
  CHECK((*r0.payload)["maximal"] == true);
  CHECK((*r0.payload)["witness"].is_null());

  const auto sparse = write_tmp("id4.txt", TopologyMatrix::identity(4).serialize());
  const auto r1 = cmd_analyze(sparse);
  CHECK(r1.exit_code == 1);
  CHECK((*r1.payload)["dof_optimal"] == true);
  CHECK_FALSE((*r1.payload)["witness"].is_null());

  CHECK(cmd_analyze("no_such_file.txt").exit_code == 2);
  CHECK(cmd_analyze(good, "1/1").exit_code == 2);
  CHECK(cmd_analyze(good, "half").exit_code == 2);
}

TEST_CASE("analyze handles deeper rate targets") {
  const auto deep = write_tmp("k7.txt", k7_depth2);
  const auto r = cmd_analyze(deep, "1/3");
  CHECK(r.exit_code == 0);
  CHECK(r.human_text.find("target rate 1/3") != std::string::npos);
  CHECK(r.human_text.find("interference classes:") != std::string::npos);

  const auto broken = write_tmp("k7b.txt", k7_depth2_broken);
  CHECK(cmd_analyze(broken, "1/3").exit_code == 1);
  CHECK(cmd_analyze(broken, "3").exit_code == 1);  // bare denominator form
}

TEST_CASE("analyze can emit a DOT rendering") {
  const auto path = write_tmp("k4_dot.txt", k4_two_pairs);
  const auto r = cmd_analyze(path, "1/2", tmp_path("graph.dot"));
  CHECK(r.exit_code == 0);
  CHECK(slurp(tmp_path("graph.dot")).find("digraph") != std::string::npos);
}

TEST_CASE("construct derives the matrix a spec describes") {
  const auto spec = write_tmp("spec6.json", six_user_spec);
  const auto r = cmd_construct(spec);
  CHECK(r.exit_code == 0);
  CHECK(r.human_text.find("spec valid: 3 alliances") != std::string::npos);
  CHECK(r.human_text.find(k6_three_pairs) != std::string::npos);

  const auto out = cmd_construct(spec, tmp_path("derived.txt"));
  CHECK(out.exit_code == 0);
  CHECK(TopologyMatrix::parse(slurp(tmp_path("derived.txt"))) ==
        TopologyMatrix::parse(k6_three_pairs));

  // Composition: a constructed topology analyzes as maximal.
  CHECK(cmd_analyze(tmp_path("derived.txt")).exit_code == 0);
}

TEST_CASE("construct rejects specs that violate the partition conditions") {
  // Alliances 2 and 3 never interfere in either direction.
  const auto bad = write_tmp("bad_spec.json", R"({"k": 6, "alliances": [
    {"suballiances": [{"messages": [1], "interferers": [2]},
                      {"messages": [2], "interferers": [3]}]},
    {"suballiances": [{"messages": [3], "interferers": [1]},
                      {"messages": [4], "interferers": [1]}]},
    {"suballiances": [{"messages": [5], "interferers": [1]},
                      {"messages": [6], "interferers": [1]}]}]})");
  const auto r = cmd_construct(bad);
  CHECK(r.exit_code == 2);
  CHECK(r.human_text.find("pair_uncovered") != std::string::npos);

  CHECK(cmd_construct("no_such_spec.json").exit_code == 2);
  const auto garbled = write_tmp("garbled.json", "not json at all");
  CHECK(cmd_construct(garbled).exit_code == 2);
}

TEST_CASE("construct accepts the one-user degenerate spec") {
  const auto one = write_tmp(
      "one.json",
      R"({"k": 1, "alliances": [{"suballiances": [{"messages": [1], "interferers": []}]}]})");
  const auto r = cmd_construct(one);
  CHECK(r.exit_code == 0);
  CHECK(r.human_text.find("degenerate") != std::string::npos);
  CHECK((*r.payload)["matrix"] == nlohmann::json::array({"1"}));
}

TEST_CASE("construct handles multi-partner specs") {
  const auto spec = write_tmp("depth2.json", depth_two_spec);
  const auto r = cmd_construct(spec, tmp_path("out_depth2.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.human_text.find("interference depth 2, rate 1/3") !=
        std::string::npos);
  CHECK(TopologyMatrix::parse(slurp(tmp_path("out_depth2.txt"))) ==
        TopologyMatrix::parse(k7_depth2));
}

TEST_CASE("transform refuses conflicted input and names the pair") {
  const auto path = write_tmp("k6c.txt", k6_conflicted);
  const auto r = cmd_transform(path);
  CHECK(r.exit_code == 1);
  CHECK(r.human_text.find("messages 4 and 5") != std::string::npos);
}

TEST_CASE("transform grows an expandable topology") {
  const auto path = write_tmp("k8.txt", k8_expandable);
  const auto merged = cmd_transform(path, "merge");
  CHECK(merged.exit_code == 0);
  CHECK((*merged.payload)["matrix"] ==
        rows_json(k8_expanded_merge));
  CHECK((*merged.payload)["added_links"][0] == nlohmann::json::array({8, 7}));

  const auto linked = cmd_transform(path, "add-links");
  CHECK(linked.exit_code == 0);
  CHECK((*linked.payload)["matrix"] == rows_json(k8_expanded_links));

  const auto already = write_tmp("k4_t.txt", k4_two_pairs);
  const auto noop = cmd_transform(already, "auto");
  CHECK(noop.exit_code == 0);
  CHECK(noop.human_text.find("no links added") != std::string::npos);

  CHECK(cmd_transform(path, "sideways").exit_code == 2);
}

TEST_CASE("enumerate streams the catalog to CSV") {
  const auto r = cmd_enumerate(3, true, tmp_path("cat3.csv"));
  CHECK(r.exit_code == 0);
  CHECK((*r.payload)["total"] == 64);
  CHECK((*r.payload)["maximal"] == 5);
  const std::string csv = slurp(tmp_path("cat3.csv"));
  CHECK(csv.rfind("matrix,dof_optimal,maximal,alliance_count,canonical\n", 0) ==
        0);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 65);

  CHECK(cmd_enumerate(6).exit_code == 2);
  CHECK(cmd_enumerate(0).exit_code == 2);
}

TEST_CASE("verify-theorems cross-checks the catalog") {
  const auto r = cmd_verify_theorems(2);
  CHECK(r.exit_code == 0);
  CHECK((*r.payload)["total"] == 4);
  CHECK((*r.payload)["maximal"] == 1);
  CHECK((*r.payload)["construction_matches"] == true);
  CHECK(cmd_verify_theorems(7).exit_code == 2);
}

TEST_CASE("verify-dof separates good and conflicted topologies") {
  const auto good = write_tmp("k4_dof.txt", k4_two_pairs);
  const auto r0 = cmd_verify_dof(good, "", 5, 7);
  CHECK(r0.exit_code == 0);
  CHECK((*r0.payload)["dof"] == "1/2");
  CHECK((*r0.payload)["extension"] == 2);

  const auto bad = write_tmp("k6c_dof.txt", k6_conflicted);
  const auto r1 = cmd_verify_dof(bad, "", 5, 7);
  CHECK(r1.exit_code == 1);
  CHECK(r1.human_text.find("FAILS") != std::string::npos);
  CHECK((*r1.payload)["dof"] == "0");

  CHECK(cmd_verify_dof(good, "", 0, 7).exit_code == 2);
}

TEST_CASE("verify-dof uses the spec's extension when given one") {
  const auto deep = write_tmp("k7_dof.txt", k7_depth2);
  const auto spec = write_tmp("depth2_dof.json", depth_two_spec);
  const auto r = cmd_verify_dof(deep, spec, 5, 3);
  CHECK(r.exit_code == 0);
  CHECK((*r.payload)["extension"] == 3);
  CHECK((*r.payload)["dof"] == "1/3");

  // The bare two-slot scheme cannot serve a depth-two topology.
  CHECK(cmd_verify_dof(deep, "", 5, 3).exit_code == 1);

  // Spec that does not derive the given matrix.
  const auto other = write_tmp("spec6_dof.json", six_user_spec);
  CHECK(cmd_verify_dof(deep, other, 5, 3).exit_code == 2);
}

TEST_CASE("bound reports achievable vs upper rate") {
  const auto path = write_tmp("k7_bound.txt", k7_depth2);
  const auto r = cmd_bound(path);
  CHECK(r.exit_code == 0);
  CHECK((*r.payload)["achievable"] == "1/3");
  CHECK((*r.payload)["upper"] == "1/3");
  CHECK((*r.payload)["tight"] == true);
  CHECK(r.human_text.find("tight") != std::string::npos);

  const auto big =
      write_tmp("k21.txt", TopologyMatrix::identity(21).serialize());
  CHECK(cmd_bound(big).exit_code == 2);
}

TEST_CASE("export-dot renders the message graph") {
  const auto path = write_tmp("k4_exp.txt", k4_two_pairs);
  const auto r = cmd_export_dot(path, tmp_path("exp.dot"));
  CHECK(r.exit_code == 0);
  const std::string dot = slurp(tmp_path("exp.dot"));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(cmd_export_dot(path).human_text == dot);
}

TEST_CASE("run_cli parses argument vectors") {
  const auto path = write_tmp("k4_cli.txt", k4_two_pairs);
  CHECK(run_cli({"analyze", path}).exit_code == 0);
  CHECK(run_cli({"analyze", "missing.txt"}).exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"--help"}).exit_code == 0);
  CHECK(run_cli({"analyze"}).exit_code == 2);  // missing positional

  const auto quiet = run_cli({"--quiet", "analyze", path});
  CHECK(quiet.exit_code == 0);
  CHECK(quiet.human_text.empty());
}

TEST_CASE("run_cli json output is the payload, byte for byte") {
  const auto path = write_tmp("k4_json.txt", k4_two_pairs);
  const auto a = run_cli({"--json", "analyze", path});
  const auto b = run_cli({"analyze", path, "--json"});  // flag after the verb
  CHECK(a.human_text == b.human_text);
  CHECK(nlohmann::json::parse(a.human_text) == *a.payload);

  // Deterministic across runs, including the sampling command.
  const auto d1 = run_cli({"--json", "verify-dof", path, "--trials", "3"});
  const auto d2 = run_cli({"--json", "verify-dof", path, "--trials", "3"});
  CHECK(d1.human_text == d2.human_text);

  // A different seed produces different margins.
  const auto d3 = run_cli(
      {"--json", "verify-dof", path, "--trials", "3", "--seed", "99"});
  CHECK(d3.exit_code == 0);
  CHECK(d3.human_text != d1.human_text);
}
