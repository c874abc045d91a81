#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "meshtape/mesh.hpp"

namespace meshtape {

// Vertex plane-distances with magnitude below this are treated as zero
// (vertex lies on the plane).
inline constexpr double kSnapEps = 1e-12;

// Guaranteed plane-distance bound for emitted cross-section endpoints.
inline constexpr double kPlaneEps = 1e-9;

// Plane {p : p.dot(normal) = offset}. normal must be unit length within
// 1e-9; offset is in meters along the normal.
struct SlicePlane {
  Eigen::Vector3d normal{0.0, 1.0, 0.0};
  double offset = 0.0;
};

// Unordered segments where one plane cuts the mesh. May contain several
// connected components; segments are not chained into loops.
struct CrossSection {
  std::vector<std::array<Eigen::Vector3d, 2>> segments;
};

// Sampled map from slice offset to cross-section boundary length, offsets
// strictly descending from the top of the mesh (q_t) by step m down to the
// bottom (q_b, appended as the final sample when the step does not land on
// it exactly).
struct Signature {
  double step = 0.0;
  Eigen::Vector3d normal{0.0, 1.0, 0.0};
  std::vector<double> offsets;
  std::vector<double> lengths;

  std::size_t size() const { return offsets.size(); }
};

// Intersects every triangle with the plane. Straddling triangles emit the
// unique crossing segment; triangles entirely on one side, touching at a
// single vertex, or coplanar with the plane emit nothing. A triangle with
// one edge on the plane emits that edge only when its remaining vertex is
// on the strictly positive side, so a ring edge shared by triangles above
// and below is counted exactly once.
CrossSection slice_at(const Mesh& mesh, const SlicePlane& plane);

// Sum of Euclidean segment lengths over all components. Empty section -> 0.
double boundary_length(const CrossSection& section);

// Slices at offsets [q_t, q_t - m, ..., q_b] and records the boundary
// length of each. Matches boundary_length(slice_at(...)) at each offset
// bit-for-bit. Throws std::invalid_argument when m <= 0 or the normal is
// not unit length; throws GeometryError on an empty mesh. When m exceeds
// the mesh extent the signature holds exactly the two endpoint slices.
Signature mesh_signature(const Mesh& mesh, const Eigen::Vector3d& normal,
                         double m);

}  // namespace meshtape
