#include "meshtape/skeleton_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "meshtape/errors.hpp"

namespace meshtape {

using nlohmann::json;

const Eigen::Vector3d& Skeleton::joint(const std::string& name) const {
  auto it = joints.find(name);
  if (it == joints.end()) throw GeometryError("missing joint " + name);
  return it->second;
}

std::vector<std::string> Skeleton::missing_required() const {
  std::vector<std::string> missing;
  for (const char* name : kRequiredJoints)
    if (!has(name)) missing.emplace_back(name);
  return missing;
}

Skeleton lsa_align(const Skeleton& skeleton, const AxisMap& map) {
  Skeleton out;
  for (const auto& [name, p] : skeleton.joints)
    out.joints.emplace(name, map.apply(p));
  return out;
}

namespace {

json parse_json_document(std::istream& in, const char* what) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  return doc;
}

}  // namespace

Skeleton parse_skeleton(std::istream& in, const JointNameMap& rename) {
  json doc = parse_json_document(in, "skeleton");
  if (!doc.is_object() || !doc.contains("joints") ||
      !doc["joints"].is_object())
    throw ParseError("skeleton: expected a top-level \"joints\" object");

  Skeleton skeleton;
  for (const auto& [raw_name, value] : doc["joints"].items()) {
    std::string name = raw_name;
    if (auto it = rename.find(raw_name); it != rename.end())
      name = it->second;
    if (!value.is_array() || value.size() != 3 ||
        !value[0].is_number() || !value[1].is_number() ||
        !value[2].is_number())
      throw ParseError("skeleton: joint " + raw_name +
                       " is not an [x, y, z] number triple");
    Eigen::Vector3d p(value[0].get<double>(), value[1].get<double>(),
                      value[2].get<double>());
    if (!p.allFinite())
      throw ParseError("skeleton: joint " + raw_name +
                       " has a non-finite coordinate");
    if (!skeleton.joints.emplace(name, p).second)
      throw ParseError("skeleton: duplicate joint " + name +
                       " after renaming");
  }

  for (const std::string& name : skeleton.missing_required())
    throw ParseError("missing joint " + name);
  return skeleton;
}

Skeleton parse_skeleton(const std::string& text,
                        const JointNameMap& rename) {
  std::istringstream in(text);
  return parse_skeleton(in, rename);
}

Skeleton read_skeleton_file(const std::string& path,
                            const JointNameMap& rename) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open skeleton file: " + path);
  return parse_skeleton(in, rename);
}

JointNameMap read_joint_name_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open joint map file: " + path);
  json doc = parse_json_document(in, "joint map");
  if (!doc.is_object())
    throw ParseError("joint map: expected a JSON object of name pairs");
  JointNameMap map;
  for (const auto& [from, to] : doc.items()) {
    if (!to.is_string())
      throw ParseError("joint map: value for " + from + " is not a string");
    map[from] = to.get<std::string>();
  }
  return map;
}

void write_skeleton(const Skeleton& skeleton, std::ostream& out) {
  // Hand-rolled so coordinates keep %.17g (bit-exact round-trip) and key
  // order stays deterministic (std::map iteration).
  out << "{\n  \"joints\": {\n";
  char buf[128];
  std::size_t i = 0;
  for (const auto& [name, p] : skeleton.joints) {
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g, %.17g]", p.x(), p.y(),
                  p.z());
    out << "    \"" << name << "\": " << buf;
    out << (++i == skeleton.joints.size() ? "\n" : ",\n");
  }
  out << "  }\n}\n";
}

void write_skeleton_file(const Skeleton& skeleton, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_skeleton(skeleton, out);
}

}  // namespace meshtape
