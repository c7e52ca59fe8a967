#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "function.hpp"
#include "group.hpp"

namespace covha {

using json = nlohmann::json;

/// FNV-1a over the order and table entries; identifies a group across files.
inline std::uint64_t cayley_hash(const Group& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(g.order));
  for (int v : g.cayley) mix(static_cast<std::uint64_t>(v));
  return h;
}

inline std::string hash_string(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/// Builds a group from a descriptor:
///   {"kind":"cyclic","n":4}
///   {"kind":"dihedral","n":4}
///   {"kind":"symmetric","n":3}
///   {"kind":"quaternion"}
///   {"kind":"table","table":[[0,1],[1,0]]}
///   {"kind":"perm_gens","degree":3,"generators":[[1,0,2],[1,2,0]]}
///   {"kind":"product","factors":[descriptor, descriptor, ...]}
inline Group group_from_descriptor(const json& j, int max_order = 0) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("group descriptor needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cyclic") return cyclic_group(j.at("n").get<int>(), max_order);
  if (kind == "dihedral") return dihedral_group(j.at("n").get<int>(), max_order);
  if (kind == "symmetric") return symmetric_group(j.at("n").get<int>(), max_order);
  if (kind == "quaternion") return quaternion_group(max_order);
  if (kind == "table") {
    const auto& rows = j.at("table");
    std::vector<int> flat;
    for (const auto& row : rows)
      for (const auto& v : row) flat.push_back(v.get<int>());
    return make_group(std::move(flat), j.value("name", std::string("table")), max_order);
  }
  if (kind == "perm_gens") {
    std::vector<std::vector<int>> gens;
    for (const auto& row : j.at("generators")) gens.push_back(row.get<std::vector<int>>());
    return group_from_permutations(j.at("degree").get<int>(), gens, max_order);
  }
  if (kind == "product") {
    const auto& factors = j.at("factors");
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    Group acc = group_from_descriptor(factors[0], max_order);
    for (size_t i = 1; i < factors.size(); ++i)
      acc = direct_product(acc, group_from_descriptor(factors[i], max_order), max_order);
    return acc;
  }
  throw std::invalid_argument("unknown group kind \"" + kind + "\"");
}

/// Accepts inline JSON, a path to a JSON file, or a shorthand such as
/// "cyclic:4", "dihedral:3", "symmetric:4", "quaternion".
inline Group group_from_spec_string(const std::string& spec, int max_order = 0) {
  std::string text = spec;
  if (!text.empty() && text.front() != '{') {
    std::ifstream in(text);
    if (in.good()) {
      std::ostringstream os;
      os << in.rdbuf();
      text = os.str();
    } else {
      const auto colon = spec.find(':');
      const std::string kind = spec.substr(0, colon);
      json j{{"kind", kind}};
      if (colon != std::string::npos) j["n"] = std::stoi(spec.substr(colon + 1));
      return group_from_descriptor(j, max_order);
    }
  }
  return group_from_descriptor(json::parse(text), max_order);
}

inline json group_fingerprint(const Group& g) {
  return json{{"order", g.order}, {"name", g.name}, {"hash", hash_string(cayley_hash(g))}};
}

inline json function_to_json(const GroupFunction& f) {
  json values = json::array();
  for (const cplx& v : f.values) values.push_back({v.real(), v.imag()});
  return json{{"group", group_fingerprint(*f.group)}, {"values", std::move(values)}};
}

/// Reads {"values": [[re, im], ...]} and checks it against the group; a
/// "group" block, when present, must match the order (and hash, if given).
inline GroupFunction function_from_json(const json& j, const Group& g) {
  if (j.contains("group")) {
    const auto& meta = j.at("group");
    if (meta.contains("order") && meta.at("order").get<int>() != g.order)
      throw std::invalid_argument("function file order does not match the group");
    if (meta.contains("hash") &&
        meta.at("hash").get<std::string>() != hash_string(cayley_hash(g)))
      throw std::invalid_argument("function file hash does not match the group");
  }
  const auto& values = j.at("values");
  if (static_cast<int>(values.size()) != g.order)
    throw std::invalid_argument("function file has wrong number of values");
  GroupFunction f(g);
  for (int i = 0; i < g.order; ++i) {
    const auto& v = values[i];
    if (v.is_array()) {
      f[i] = cplx{v.at(0).get<double>(), v.size() > 1 ? v.at(1).get<double>() : 0.0};
    } else {
      f[i] = cplx{v.get<double>(), 0.0};
    }
  }
  return f;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

}  // namespace covha
