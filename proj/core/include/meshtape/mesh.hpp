#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace meshtape {

// Triangle soup: vertex positions in meters plus 0-based index triples.
// Manifoldness and watertightness are not required; slicing only needs
// the triangles themselves.
struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector3i> triangles;
};

// Axis-aligned bounding box, corners in meters, min <= max component-wise.
struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  Eigen::Vector3d extent() const { return max - min; }
};

// Signed axis permutation mapping input coordinates into the LSA frame
// (x right-to-left, y inferior-to-superior, z posterior-to-anterior):
// output[i] = sign[i] * input[source[i]].
class AxisMap {
 public:
  AxisMap() = default;  // identity

  // Parses descriptors like "x,y,z" or "x,z,-y" (output axis i takes the
  // named input axis, optionally negated). Each of x, y, z must appear
  // exactly once. Throws std::invalid_argument on anything else.
  static AxisMap parse(const std::string& text);

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;
  AxisMap inverse() const;
  bool is_identity() const;
  std::string str() const;

 private:
  std::array<int, 3> source_{0, 1, 2};
  std::array<double, 3> sign_{1.0, 1.0, 1.0};
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

// Checks the Mesh invariants: at least 3 vertices and 1 triangle, finite
// coordinates, indices in range, no repeated indices within a triangle.
// Zero-area triangles with distinct indices pass with a warning; they
// contribute zero length to any slice.
ValidationReport validate(const Mesh& mesh);

// Exact component-wise vertex extrema. Throws GeometryError when the mesh
// has no vertices.
Aabb bounding_box(const Mesh& mesh);

// Applies the signed permutation to every vertex; topology is untouched.
// Applying map.inverse() to the result recovers the input bit-exactly
// (permutation and negation are exact in floating point).
Mesh lsa_align(const Mesh& mesh, const AxisMap& map);

}  // namespace meshtape
