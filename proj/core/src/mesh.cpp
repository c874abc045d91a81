#include "meshtape/mesh.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <sstream>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

int axis_index(char c) {
  switch (c) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': return 2;
    default: return -1;
  }
}

}  // namespace

AxisMap AxisMap::parse(const std::string& text) {
  AxisMap map;
  std::array<bool, 3> seen{false, false, false};
  std::stringstream ss(text);
  std::string token;
  int axis = 0;
  while (std::getline(ss, token, ',')) {
    if (axis >= 3) throw std::invalid_argument("axis map: too many axes in '" + text + "'");
    double sign = 1.0;
    std::size_t pos = 0;
    if (!token.empty() && (token[0] == '-' || token[0] == '+')) {
      sign = token[0] == '-' ? -1.0 : 1.0;
      pos = 1;
    }
    int src = token.size() == pos + 1 ? axis_index(token[pos]) : -1;
    if (src < 0) throw std::invalid_argument("axis map: bad axis token '" + token + "'");
    if (seen[src]) throw std::invalid_argument("axis map: axis used twice in '" + text + "'");
    seen[src] = true;
    map.source_[axis] = src;
    map.sign_[axis] = sign;
    ++axis;
  }
  if (axis != 3) throw std::invalid_argument("axis map: expected 3 axes in '" + text + "'");
  return map;
}

Eigen::Vector3d AxisMap::apply(const Eigen::Vector3d& p) const {
  return {sign_[0] * p[source_[0]], sign_[1] * p[source_[1]],
          sign_[2] * p[source_[2]]};
}

AxisMap AxisMap::inverse() const {
  AxisMap inv;
  for (int i = 0; i < 3; ++i) {
    inv.source_[source_[i]] = i;
    inv.sign_[source_[i]] = sign_[i];
  }
  return inv;
}

bool AxisMap::is_identity() const {
  return source_ == std::array<int, 3>{0, 1, 2} &&
         sign_ == std::array<double, 3>{1.0, 1.0, 1.0};
}

std::string AxisMap::str() const {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += ',';
    if (sign_[i] < 0) out += '-';
    out += static_cast<char>('x' + source_[i]);
  }
  return out;
}

ValidationReport validate(const Mesh& mesh) {
  ValidationReport report;
  const std::size_t nv = mesh.vertices.size();

  if (nv < 3)
    report.errors.push_back("vertex count " + std::to_string(nv) +
                            " < 3");
  if (mesh.triangles.empty()) report.errors.push_back("no triangles");

  for (std::size_t i = 0; i < nv; ++i) {
    const Eigen::Vector3d& v = mesh.vertices[i];
    if (!v.allFinite()) {
      report.errors.push_back("vertex " + std::to_string(i) +
                              " has a non-finite coordinate");
    }
  }

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Eigen::Vector3i& tri = mesh.triangles[t];
    bool in_range = true;
    for (int j = 0; j < 3; ++j) {
      if (tri[j] < 0 || static_cast<std::size_t>(tri[j]) >= nv) {
        report.errors.push_back("triangle " + std::to_string(t) +
                                " index " + std::to_string(tri[j]) +
                                " out of range");
        in_range = false;
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      report.errors.push_back("triangle " + std::to_string(t) +
                              " repeats a vertex index");
      in_range = false;
    }
    if (in_range) {
      const Eigen::Vector3d& a = mesh.vertices[tri[0]];
      const Eigen::Vector3d e1 = mesh.vertices[tri[1]] - a;
      const Eigen::Vector3d e2 = mesh.vertices[tri[2]] - a;
      if (e1.cross(e2).norm() == 0.0) {
        report.warnings.push_back("triangle " + std::to_string(t) +
                                  " has zero area");
      }
    }
  }
  return report;
}

Aabb bounding_box(const Mesh& mesh) {
  if (mesh.vertices.empty())
    throw GeometryError("bounding box of an empty mesh");
  Aabb box;
  box.min = box.max = mesh.vertices.front();
  for (const Eigen::Vector3d& v : mesh.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

Mesh lsa_align(const Mesh& mesh, const AxisMap& map) {
  Mesh out;
  out.triangles = mesh.triangles;
  out.vertices.reserve(mesh.vertices.size());
  for (const Eigen::Vector3d& v : mesh.vertices)
    out.vertices.push_back(map.apply(v));
  return out;
}

}  // namespace meshtape
