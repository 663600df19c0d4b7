#include "tim/spec_json.hpp"

#include <json.hpp>

namespace tim {

namespace {

using nlohmann::json;

std::vector<int> read_index_list(const json& node, const std::string& where) {
  if (!node.is_array()) throw SpecError(where + " must be an array");
  std::vector<int> out;
  for (const auto& v : node) {
    if (!v.is_number_integer())
      throw SpecError(where + " must hold integers");
    out.push_back(v.get<int>() - 1);  // file is 1-based
  }
  return out;
}

}  // namespace

GeneralizedAllianceSpec parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec JSON malformed: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("alliances"))
    throw SpecError("spec JSON needs top-level \"k\" and \"alliances\"");
  if (!doc["k"].is_number_integer())
    throw SpecError("\"k\" must be an integer");
  if (!doc["alliances"].is_array())
    throw SpecError("\"alliances\" must be an array");

  GeneralizedAllianceSpec s;
  s.k = doc["k"].get<int>();
  int i = 0;
  for (const auto& alliance : doc["alliances"]) {
    const std::string here = "alliance " + std::to_string(i + 1);
    if (!alliance.is_object() || !alliance.contains("suballiances"))
      throw SpecError(here + " needs a \"suballiances\" array");
    if (!alliance["suballiances"].is_array())
      throw SpecError(here + ": \"suballiances\" must be an array");
    std::vector<GeneralizedSubAlliance> subs;
    for (const auto& sub : alliance["suballiances"]) {
      if (!sub.is_object() || !sub.contains("messages") ||
          !sub.contains("interferers"))
        throw SpecError(here +
                        ": every sub-alliance needs \"messages\" and "
                        "\"interferers\"");
      subs.push_back({read_index_list(sub["messages"], here + " messages"),
                      read_index_list(sub["interferers"], here + " interferers")});
    }
    s.alliances.push_back(std::move(subs));
    ++i;
  }
  return s;
}

std::string write_spec_json(const GeneralizedAllianceSpec& s) {
  json doc;
  doc["k"] = s.k;
  doc["alliances"] = json::array();
  for (const auto& alliance : s.alliances) {
    json subs = json::array();
    for (const auto& sub : alliance) {
      json messages = json::array();
      for (int m : sub.messages) messages.push_back(m + 1);
      json interferers = json::array();
      for (int a : sub.interferers) interferers.push_back(a + 1);
      subs.push_back({{"messages", messages}, {"interferers", interferers}});
    }
    doc["alliances"].push_back({{"suballiances", subs}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace tim
