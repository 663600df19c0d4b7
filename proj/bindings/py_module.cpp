#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tim/alliance.hpp"
#include "tim/beamforming.hpp"
#include "tim/generalized.hpp"
#include "tim/matrix_analysis.hpp"
#include "tim/message_graph.hpp"
#include "tim/oracle.hpp"
#include "tim/spec_json.hpp"
#include "tim/topology.hpp"

namespace py = pybind11;
using namespace tim;

namespace {

py::object verdict_to_py(const MaximalityVerdict& v) {
  py::dict d;
  d["dof_optimal"] = v.is_dof_optimal;
  d["maximal"] = v.is_maximal;
  if (v.witness) {
    const char* kind = "unknown";
    switch (v.witness->kind) {
      case VerdictWitness::Kind::internal_conflict: kind = "internal_conflict"; break;
      case VerdictWitness::Kind::addable_link: kind = "addable_link"; break;
      case VerdictWitness::Kind::block_defect: kind = "block_defect"; break;
      case VerdictWitness::Kind::degenerate: kind = "degenerate"; break;
    }
    py::dict w;
    w["kind"] = kind;
    w["detail"] = v.witness->detail;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict dof_report_to_py(const DofReport& r) {
  py::dict d;
  d["e_max"] = r.e_max;
  d["achievable"] = r.dof_achievable.str();
  d["psi"] = r.psi;
  d["upper"] = r.dof_upper.str();
  d["tight"] = r.tight;
  return d;
}

py::dict decode_report_to_py(const DecodeReport& r) {
  py::dict d;
  d["extension"] = r.extension;
  d["all_separable"] = r.all_separable;
  d["dof"] = r.dof.str();
  d["worst_margin"] = r.worst_margin;
  py::list recs;
  for (const auto& rec : r.receivers) {
    py::dict one;
    one["separable"] = rec.separable;
    one["margin"] = rec.margin;
    recs.append(one);
  }
  d["receivers"] = recs;
  return d;
}

GrowthStrategy strategy_from(const std::string& name) {
  if (name == "merge") return GrowthStrategy::merge;
  if (name == "add-links") return GrowthStrategy::add_links;
  if (name == "auto") return GrowthStrategy::auto_pick;
  throw SpecError("strategy must be merge, add-links, or auto");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "interference-alignment topology workbench core";

  py::register_exception<TopologyError>(m, "TopologyError");
  py::register_exception<SpecError>(m, "SpecError");

  py::class_<TopologyMatrix>(m, "TopologyMatrix")
      .def_static("parse", &TopologyMatrix::parse, py::arg("text"))
      .def_static("identity", &TopologyMatrix::identity, py::arg("k"))
      .def_static("all_ones", &TopologyMatrix::all_ones, py::arg("k"))
      .def_property_readonly("k", &TopologyMatrix::users)
      .def("link", &TopologyMatrix::link, py::arg("receiver"),
           py::arg("transmitter"))
      .def("with_link", &TopologyMatrix::with_link, py::arg("receiver"),
           py::arg("transmitter"))
      .def("serialize", &TopologyMatrix::serialize)
      .def("bitstring", &TopologyMatrix::bitstring)
      .def("__eq__",
           [](const TopologyMatrix& a, const TopologyMatrix& b) { return a == b; })
      .def("__hash__",
           [](const TopologyMatrix& t) {
             return py::hash(py::str(t.bitstring()));
           })
      .def("__repr__", [](const TopologyMatrix& t) {
        return "TopologyMatrix.parse(\"\"\"" + t.serialize() + "\"\"\")";
      });

  m.def("is_dof_half_optimal", &is_dof_half_optimal, py::arg("t"),
        "no alignment set contains a conflict edge");
  m.def(
      "is_maximal_by_definition",
      [](const TopologyMatrix& t) { return verdict_to_py(is_maximal_by_definition(t)); },
      py::arg("t"), "optimal, and every absent link would break optimality");
  m.def(
      "is_mtm", [](const TopologyMatrix& t) { return verdict_to_py(is_mtm(t)); },
      py::arg("t"), "maximality decided from the block structure");
  m.def(
      "is_mtm_for_dof",
      [](const TopologyMatrix& t, int depth) {
        return verdict_to_py(is_mtm_for_dof(t, depth));
      },
      py::arg("t"), py::arg("depth"),
      "maximality for symmetric rate 1/(depth+1)");

  m.def(
      "alignment_sets",
      [](const TopologyMatrix& t) {
        return alignment_sets(build_message_graph(t)).sets;
      },
      py::arg("t"), "connected components of the alignment relation, 0-based");
  m.def("column_classes", &column_classes, py::arg("t"),
        "transmitters indistinguishable to every other receiver, 0-based");

  m.def(
      "transform_to_mtm",
      [](const TopologyMatrix& t, const std::string& strategy) {
        const TransformResult r = transform_to_mtm(t, strategy_from(strategy));
        return py::make_tuple(r.matrix, r.added_links);
      },
      py::arg("t"), py::arg("strategy") = "auto",
      "grow to a maximal topology; returns (matrix, added (receiver, "
      "transmitter) pairs, 0-based)");

  m.def("parse_spec", &parse_spec_json, py::arg("text"),
        "spec JSON text -> opaque spec object");
  m.def("write_spec", &write_spec_json, py::arg("spec"));
  py::class_<GeneralizedAllianceSpec>(m, "AllianceSpec")
      .def_property_readonly("k",
                             [](const GeneralizedAllianceSpec& s) { return s.k; })
      .def_property_readonly("alliance_count",
                             &GeneralizedAllianceSpec::alliance_count)
      .def("members", &GeneralizedAllianceSpec::members);

  m.def(
      "validate_spec",
      [](const GeneralizedAllianceSpec& s) {
        std::vector<std::string> out;
        const auto plain = lower(s);
        if (plain) {
          for (const auto& v : validate_spec(*plain)) out.push_back(v.text);
        } else {
          for (const auto& v : validate_generalized_spec(s)) out.push_back(v.text);
        }
        return out;
      },
      py::arg("spec"),
      "violation texts; empty means the derived topology is maximal");
  m.def(
      "derive_topology",
      [](const GeneralizedAllianceSpec& s) { return derive_generalized_topology(s); },
      py::arg("spec"));
  m.def("e_max_of", &compute_e_max, py::arg("spec"),
        "largest sub-alliance interferer count");

  m.def(
      "dof_report",
      [](const TopologyMatrix& t) { return dof_report_to_py(infer_dof_report(t)); },
      py::arg("t"), "achievable rate vs acyclic-subset upper bound");
  m.def(
      "dof_report_for_spec",
      [](const TopologyMatrix& t, const GeneralizedAllianceSpec& s) {
        return dof_report_to_py(dof_report(t, s));
      },
      py::arg("t"), py::arg("spec"));

  m.def(
      "verify_decodability",
      [](const TopologyMatrix& t, int trials, std::uint64_t seed, double tol) {
        return decode_report_to_py(verify_decodability(t, trials, seed, tol));
      },
      py::arg("t"), py::arg("trials") = 10, py::arg("seed") = 12345,
      py::arg("tol") = 1e-9, "two-slot scheme over the alignment sets");
  m.def(
      "verify_decodability_for_spec",
      [](const TopologyMatrix& t, const GeneralizedAllianceSpec& s, int trials,
         std::uint64_t seed, double tol) {
        return decode_report_to_py(verify_decodability(t, s, trials, seed, tol));
      },
      py::arg("t"), py::arg("spec"), py::arg("trials") = 10,
      py::arg("seed") = 12345, py::arg("tol") = 1e-9);

  m.def("canonical_label", &canonical_label, py::arg("t"),
        "lexicographic minimum over simultaneous relabelings");
  m.def(
      "verify_theorems",
      [](int k) {
        const TheoremReport r = verify_iff_theorems(k);
        py::dict d;
        d["k"] = r.k;
        d["total"] = r.n_matrices;
        d["dof_optimal"] = r.n_dof_optimal;
        d["maximal"] = r.n_maximal;
        d["construction"] = r.n_construction;
        d["mtm_positive"] = r.n_mtm_positive;
        d["all_hold"] = r.all_hold();
        d["mismatches"] = r.mismatches;
        return d;
      },
      py::arg("k"), "cross-check every maximality characterization at size k");
}
