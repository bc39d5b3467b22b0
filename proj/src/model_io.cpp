#include "ictl/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ictl/formula.hpp"

namespace ictl {

namespace {

using nlohmann::json;

std::vector<Edge> read_edges(const json& doc, const char* key,
                             const std::map<std::string, WorldIndex>& index,
                             bool required) {
  std::vector<Edge> edges;
  if (!doc.contains(key)) {
    if (required)
      throw ModelFormatError(std::string("missing field '") + key + "'");
    return edges;
  }
  const json& arr = doc.at(key);
  if (!arr.is_array())
    throw ModelFormatError(std::string("'") + key + "' must be an array");
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string())
      throw ModelFormatError(std::string("'") + key +
                             "' entries must be [from, to] name pairs");
    auto lookup = [&](const json& name) {
      auto it = index.find(name.get<std::string>());
      if (it == index.end())
        throw ModelFormatError(std::string("unknown world '") +
                               name.get<std::string>() + "' in '" + key + "'");
      return it->second;
    };
    edges.emplace_back(lookup(e[0]), lookup(e[1]));
  }
  return edges;
}

}  // namespace

RawModel parse_model_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelFormatError("model must be a JSON object");
  if (!doc.contains("worlds") || !doc["worlds"].is_array() ||
      doc["worlds"].empty())
    throw ModelFormatError("'worlds' must be a non-empty array of names");

  RawModel raw;
  std::map<std::string, WorldIndex> index;
  for (const json& w : doc["worlds"]) {
    if (!w.is_string() || w.get<std::string>().empty())
      throw ModelFormatError("world names must be non-empty strings");
    auto name = w.get<std::string>();
    if (!index.emplace(name, raw.worlds.size()).second)
      throw ModelFormatError("duplicate world '" + name + "'");
    raw.worlds.push_back(name);
  }
  raw.preorder = read_edges(doc, "preorder", index, false);
  raw.transitions = read_edges(doc, "transitions", index, true);
  raw.valuation.resize(raw.worlds.size());
  if (doc.contains("valuation")) {
    const json& val = doc["valuation"];
    if (!val.is_object())
      throw ModelFormatError("'valuation' must be an object");
    for (const auto& [name, atoms] : val.items()) {
      auto it = index.find(name);
      if (it == index.end())
        throw ModelFormatError("unknown world '" + name + "' in 'valuation'");
      if (!atoms.is_array())
        throw ModelFormatError("valuation of '" + name +
                               "' must be an array of atoms");
      for (const json& a : atoms) {
        if (!a.is_string() || !is_valid_atom_name(a.get<std::string>()))
          throw ModelFormatError("invalid atom in valuation of '" + name +
                                 "'");
        raw.valuation[it->second].insert(a.get<std::string>());
      }
    }
  }
  return raw;
}

RawModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_document(buf.str());
}

std::string model_to_json(const BirelationalModel& m, int indent) {
  using ordered = nlohmann::ordered_json;
  ordered doc;
  doc["worlds"] = m.names();
  ordered pre = ordered::array();
  ordered tr = ordered::array();
  for (WorldIndex a = 0; a < m.size(); ++a) {
    for (WorldIndex b : m.up(a).members())
      if (a != b) pre.push_back({m.name(a), m.name(b)});
    for (WorldIndex b : m.successors(a).members())
      tr.push_back({m.name(a), m.name(b)});
  }
  doc["preorder"] = pre;
  doc["transitions"] = tr;
  ordered val = ordered::object();
  for (WorldIndex w = 0; w < m.size(); ++w) {
    ordered atoms = ordered::array();
    for (const auto& a : m.atoms_at(w)) atoms.push_back(a);
    val[m.name(w)] = atoms;
  }
  doc["valuation"] = val;
  return doc.dump(indent);
}

}  // namespace ictl
