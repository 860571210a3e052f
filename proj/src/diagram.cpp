#include "titscone/diagram.hpp"

#include <json.hpp>

#include <numeric>
#include <set>
#include <sstream>

namespace titscone {

CoxeterDiagram::CoxeterDiagram(std::vector<std::string> node_names,
                               std::vector<std::vector<unsigned>> bonds)
    : names_(std::move(node_names)), bonds_(std::move(bonds)) {
  unsigned n = rank();
  if (n == 0) throw ValidationError("diagram has no nodes");
  if (n > 64) throw ValidationError("diagram rank exceeds 64");
  if (bonds_.size() != n) throw InternalError("bond matrix size mismatch");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ValidationError("empty node identifier");
    if (!seen.insert(name).second) throw ValidationError("duplicate node identifier: " + name);
  }
  unsigned long l = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (bonds_[i].size() != n) throw InternalError("bond matrix row size mismatch");
    if (bonds_[i][i] != 1) throw ValidationError("diagonal bond must be 1");
    for (unsigned j = i + 1; j < n; ++j) {
      if (bonds_[i][j] != bonds_[j][i]) throw ValidationError("bond matrix not symmetric");
      unsigned m = bonds_[i][j];
      if (m != kInfiniteBond && m < 2) throw ValidationError("bond label must be >= 2");
      if (m != kInfiniteBond && m >= 3) l = std::lcm(l, static_cast<unsigned long>(m));
    }
  }
  if (l > 1000000) throw ValidationError("bond label lcm too large");
  field_order_ = l == 1 ? 2 : static_cast<unsigned>(l);
}

CoxeterDiagram CoxeterDiagram::parse(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed diagram JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw ValidationError("diagram JSON must contain a \"nodes\" array");

  std::vector<std::string> names;
  for (const auto& node : j["nodes"]) {
    if (!node.is_string()) throw ValidationError("node identifiers must be strings");
    names.push_back(node.get<std::string>());
  }
  unsigned n = static_cast<unsigned>(names.size());
  std::vector<std::vector<unsigned>> bonds(n, std::vector<unsigned>(n, 2));
  for (unsigned i = 0; i < n; ++i) bonds[i][i] = 1;

  auto index_of = [&names](const std::string& s) -> unsigned {
    for (unsigned i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw ValidationError("edge references unknown node: " + s);
  };

  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ValidationError("\"edges\" must be an array");
    std::vector<std::vector<bool>> assigned(n, std::vector<bool>(n, false));
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) throw ValidationError("edge entries must be [node, node, label]");
      if (!e[0].is_string() || !e[1].is_string())
        throw ValidationError("edge endpoints must be node identifiers");
      unsigned a = index_of(e[0].get<std::string>());
      unsigned b = index_of(e[1].get<std::string>());
      if (a == b) throw ValidationError("edge endpoints must be distinct");
      unsigned m;
      if (e[2].is_string()) {
        if (e[2].get<std::string>() != "inf") throw ValidationError("edge label must be an integer >= 2 or \"inf\"");
        m = kInfiniteBond;
      } else if (e[2].is_number_integer()) {
        long v = e[2].get<long>();
        if (v < 2) throw ValidationError("edge label must be >= 2");
        if (v > 1000000) throw ValidationError("edge label too large");
        m = static_cast<unsigned>(v);
      } else {
        throw ValidationError("edge label must be an integer >= 2 or \"inf\"");
      }
      if (assigned[a][b] && bonds[a][b] != m)
        throw ValidationError("conflicting labels for edge " + names[a] + "--" + names[b]);
      assigned[a][b] = assigned[b][a] = true;
      bonds[a][b] = bonds[b][a] = m;
    }
  }
  return CoxeterDiagram(std::move(names), std::move(bonds));
}

unsigned CoxeterDiagram::index_of(const std::string& name) const {
  for (unsigned i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw ValidationError("unknown node: " + name);
}

NodeSet CoxeterDiagram::component(NodeSet members, unsigned seed) const {
  if (!members.contains(seed)) throw InternalError("component: seed not in member set");
  NodeSet comp = NodeSet::of({seed});
  NodeSet frontier = comp;
  while (!frontier.empty()) {
    NodeSet next;
    for (unsigned i : frontier) {
      for (unsigned j : members - comp) {
        if (bonds_[i][j] != 2) next = next.with(j);
      }
    }
    comp = comp | next;
    frontier = next;
  }
  return comp;
}

NodeSet CoxeterDiagram::parse_node_list(const std::string& comma_separated) const {
  NodeSet s;
  std::stringstream ss(comma_separated);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    s = s.with(index_of(item));
  }
  return s;
}

std::string CoxeterDiagram::set_to_string(NodeSet s) const {
  std::string out = "{";
  bool first = true;
  for (unsigned i : s) {
    if (!first) out += ",";
    out += names_.at(i);
    first = false;
  }
  return out + "}";
}

std::string CoxeterDiagram::json() const {
  nlohmann::json j;
  j["nodes"] = names_;
  auto edges = nlohmann::json::array();
  for (unsigned i = 0; i < rank(); ++i)
    for (unsigned k = i + 1; k < rank(); ++k) {
      unsigned m = bonds_[i][k];
      if (m == 2) continue;
      if (m == kInfiniteBond) edges.push_back({names_[i], names_[k], "inf"});
      else edges.push_back({names_[i], names_[k], m});
    }
  j["edges"] = edges;
  return j.dump();
}

}  // namespace titscone
