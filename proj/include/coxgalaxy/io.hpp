#pragma once

// JSON and DOT serialization. The JSON shape for a system is
//   {"generators": ["s0", ...], "matrix": [[1,3],[3,1]]}
// with 0 standing for ∞; "generators" may be omitted. Structural problems
// raise MalformedInputError, semantic ones (asymmetry, bad diagonal, label
// 1 off the diagonal) raise InvalidMatrixError from validation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coxgalaxy/coxsys.hpp"
#include "coxgalaxy/galaxy.hpp"
#include "coxgalaxy/moves.hpp"

namespace coxgalaxy {

inline CoxeterMatrix parse_system(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedInputError("system must be a JSON object");
  if (!j.contains("matrix")) throw MalformedInputError("system needs a \"matrix\" field");
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.empty())
    throw MalformedInputError("\"matrix\" must be a non-empty array of rows");
  int n = static_cast<int>(rows.size());

  std::vector<std::string> names;
  if (j.contains("generators")) {
    const auto& gens = j.at("generators");
    if (!gens.is_array()) throw MalformedInputError("\"generators\" must be an array");
    for (const auto& g : gens) {
      if (!g.is_string()) throw MalformedInputError("generator names must be strings");
      names.push_back(g.get<std::string>());
    }
    if (static_cast<int>(names.size()) != n)
      throw MalformedInputError("generator count does not match the matrix rank");
  } else {
    names = CoxeterMatrix::default_names(n);
  }

  std::vector<Label> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw MalformedInputError("matrix rows must all have the same length as the rank");
    for (const auto& cell : row) {
      if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0)
        throw MalformedInputError("matrix entries are integers >= 0, with 0 meaning ∞");
      entries.push_back(Label::from_serialized(cell.get<std::uint32_t>()));
    }
  }
  return CoxeterMatrix(std::move(names), std::move(entries));
}

inline CoxeterMatrix parse_system_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_system(j);
}

inline nlohmann::json system_to_json(const CoxeterMatrix& m) {
  nlohmann::json j;
  j["generators"] = m.names();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < m.rank(); ++k) row.push_back(m.label(i, k).serialized());
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

inline std::string edge_attributes(Label l) {
  if (l.is_infinite()) return "style=dashed, label=\"inf\"";
  if (l == Label::finite(2)) return "color=grey, penwidth=2, label=\"2\"";
  return "label=\"" + l.str() + "\"";
}

}  // namespace detail

// The complete Coxeter graph: every pair of generators joined, ∞ edges
// dashed, commuting pairs grey and thick.
inline std::string system_to_dot(const CoxeterMatrix& m) {
  std::string out = "graph system {\n  node [shape=circle];\n";
  for (int i = 0; i < m.rank(); ++i) out += "  " + detail::dot_quote(m.name(i)) + ";\n";
  for (int i = 0; i < m.rank(); ++i)
    for (int k = i + 1; k < m.rank(); ++k)
      out += "  " + detail::dot_quote(m.name(i)) + " -- " + detail::dot_quote(m.name(k)) +
             " [" + detail::edge_attributes(m.label(i, k)) + "];\n";
  out += "}\n";
  return out;
}

inline nlohmann::json record_to_json(const MoveRecord& r) {
  nlohmann::json j;
  j["kind"] = move_kind_name(r.kind);
  j["from"] = r.from_canon;
  j["to"] = r.to_canon;
  j["description"] = r.description;
  return j;
}

namespace detail {

// Vertices ordered by (layer, canon); returns the permutation of indices.
inline std::vector<int> fragment_vertex_order(const GalaxyFragment& frag) {
  std::vector<int> order(frag.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& va = frag.vertices[a];
    const auto& vb = frag.vertices[b];
    return va.layer != vb.layer ? va.layer < vb.layer : va.canon < vb.canon;
  });
  return order;
}

inline std::vector<int> fragment_edge_order(const GalaxyFragment& frag) {
  std::vector<int> order(frag.edges.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int e) {
    const auto& ed = frag.edges[e];
    return std::make_tuple(frag.vertices[ed.u].canon, frag.vertices[ed.v].canon,
                           move_kind_name(ed.record.kind), ed.record.description);
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  return order;
}

}  // namespace detail

inline nlohmann::json fragment_to_json(const GalaxyFragment& frag) {
  nlohmann::json j;
  j["root"] = frag.vertices.empty() ? "" : frag.vertices[frag.root].canon;
  j["truncated"] = frag.truncated;
  nlohmann::json verts = nlohmann::json::array();
  for (int i : detail::fragment_vertex_order(frag)) {
    const auto& v = frag.vertices[i];
    nlohmann::json jv = system_to_json(v.representative);
    jv["canon"] = v.canon;
    jv["layer"] = v.layer;
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  nlohmann::json edges = nlohmann::json::array();
  for (int e : detail::fragment_edge_order(frag)) {
    const auto& ed = frag.edges[e];
    nlohmann::json je = record_to_json(ed.record);
    je["from"] = frag.vertices[ed.u].canon;
    je["to"] = frag.vertices[ed.v].canon;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

// One cluster per vertex showing its complete Coxeter graph; one edge per
// fragment edge between the clusters' first generators.
inline std::string fragment_to_dot(const GalaxyFragment& frag) {
  std::vector<int> vorder = detail::fragment_vertex_order(frag);
  std::vector<int> cluster_of(frag.vertices.size());
  for (size_t c = 0; c < vorder.size(); ++c) cluster_of[vorder[c]] = static_cast<int>(c);

  auto node_id = [&](int vertex, int gen) {
    return "v" + std::to_string(cluster_of[vertex]) + "_" +
           frag.vertices[vertex].representative.name(gen);
  };

  std::string out = "graph fragment {\n  compound=true;\n  node [shape=circle];\n";
  for (size_t c = 0; c < vorder.size(); ++c) {
    const auto& v = frag.vertices[vorder[c]];
    const auto& m = v.representative;
    out += "  subgraph cluster_" + std::to_string(c) + " {\n";
    out += "    label=" + detail::dot_quote(v.canon + " (layer " +
                                            std::to_string(v.layer) + ")") + ";\n";
    for (int i = 0; i < m.rank(); ++i)
      out += "    " + detail::dot_quote(node_id(vorder[c], i)) + " [label=" +
             detail::dot_quote(m.name(i)) + "];\n";
    for (int i = 0; i < m.rank(); ++i)
      for (int k = i + 1; k < m.rank(); ++k)
        out += "    " + detail::dot_quote(node_id(vorder[c], i)) + " -- " +
               detail::dot_quote(node_id(vorder[c], k)) + " [" +
               detail::edge_attributes(m.label(i, k)) + "];\n";
    out += "  }\n";
  }
  for (int e : detail::fragment_edge_order(frag)) {
    const auto& ed = frag.edges[e];
    out += "  " + detail::dot_quote(node_id(ed.u, 0)) + " -- " +
           detail::dot_quote(node_id(ed.v, 0)) + " [ltail=cluster_" +
           std::to_string(cluster_of[ed.u]) + ", lhead=cluster_" +
           std::to_string(cluster_of[ed.v]) + ", style=bold, label=" +
           detail::dot_quote(move_kind_name(ed.record.kind)) + "];\n";
  }
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Move descriptors, e.g. {"kind":"blow-up","t":"s1","j":["s0","s1"]} or
// {"kind":"twist","j":["s0"],"a":[],"b":["s1"]}.

using MoveDescriptor = std::variant<PseudoTransposition, TwistDescriptor>;

namespace detail {

inline int generator_index(const CoxeterMatrix& m, const nlohmann::json& v) {
  if (!v.is_string()) throw MalformedInputError("generator references must be names");
  std::string name = v.get<std::string>();
  for (int i = 0; i < m.rank(); ++i)
    if (m.name(i) == name) return i;
  throw MalformedInputError("unknown generator \"" + name + "\"");
}

inline GeneratorSubset subset_field(const CoxeterMatrix& m, const nlohmann::json& j,
                                    const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_array())
    throw MalformedInputError("move needs an array field \"" + field + "\"");
  GeneratorSubset out;
  for (const auto& v : j.at(field)) out.push_back(generator_index(m, v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline MoveDescriptor parse_move(const CoxeterMatrix& m, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw MalformedInputError("move needs a string \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "blow-up") {
    if (!j.contains("t")) throw MalformedInputError("blow-up needs \"t\"");
    PseudoTransposition pt;
    pt.t = detail::generator_index(m, j.at("t"));
    pt.j = detail::subset_field(m, j, "j");
    CoxeterMatrix sub = m.restricted(pt.j);
    GeneratorSubset all(pt.j.size());
    std::iota(all.begin(), all.end(), 0);
    if (irreducible_components(sub).size() != 1)
      throw InvalidMoveError("j must be irreducible");
    auto type = spherical_type(sub, all);
    if (!type) throw InvalidMoveError("j must be spherical");
    pt.jtype = *type;
    if (type->family == Family::B) {
      auto tv = detail::four_edge_endpoint(m, pt.j);
      if (!tv) throw InvalidMoveError("no path endpoint on a 4-edge in j");
      pt.v = tv->second;
    } else {
      if (pt.j.size() != 2) throw InvalidMoveError("dihedral j must have two members");
      pt.v = pt.j[0] == pt.t ? pt.j[1] : pt.j[0];
    }
    return pt;
  }
  if (kind == "twist") {
    TwistDescriptor d;
    d.j = detail::subset_field(m, j, "j");
    d.a = detail::subset_field(m, j, "a");
    d.b = detail::subset_field(m, j, "b");
    return d;
  }
  throw MalformedInputError("unknown move kind \"" + kind + "\"");
}

}  // namespace coxgalaxy
