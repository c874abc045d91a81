#pragma once

#include <Eigen/Core>

#include <cstddef>

#include "meshtape/mesh.hpp"
#include "meshtape/skeleton.hpp"

namespace meshtape {

inline constexpr std::size_t kDefaultKnn = 80;

// Relaxation applied to the barycentric bounds of the ray-triangle test.
inline constexpr double kBaryEps = 1e-12;

// Outcome of the armpit search. The ray starts at the R_Shoulder joint
// (inside the body), aims at the lower corner point p_b derived from the
// bounding box, and p_c is its first surface hit. p_a refines p_c to the
// lowest of its k nearest mesh vertices.
struct AxillaResult {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();     // R_Shoulder
  Eigen::Vector3d target = Eigen::Vector3d::Zero();     // p_b
  Eigen::Vector3d first_hit = Eigen::Vector3d::Zero();  // p_c
  Eigen::Vector3d axilla = Eigen::Vector3d::Zero();     // p_a
  std::size_t neighbors_used = 0;
};

// Half-open interval [lo, hi) on the y axis, meters.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double y) const { return y >= lo && y < hi; }
  bool empty() const { return !(hi > lo); }
};

// chest = [y(Spine1), y(axilla)), waist = [y(Pelvis), y(Spine1)),
// pelvis = [y(R_Hip), y(Pelvis)). Contiguous and pairwise disjoint.
struct Regions {
  Interval chest;
  Interval waist;
  Interval pelvis;
};

// Casts a ray from the R_Shoulder joint toward
// p_b = (x_min, y_min, z_min + |z_max - z_min| / 2) of the mesh bounding
// box, takes the nearest positive-parameter triangle hit as p_c, then
// picks p_a as the smallest-y vertex among the k mesh vertices nearest to
// p_c (ties broken by lowest vertex index, so the result is
// deterministic). When the mesh has fewer than k vertices all of them are
// used and neighbors_used reports the actual count.
//
// Throws GeometryError("axilla ray missed mesh") when no triangle is hit.
AxillaResult locate_axilla(const Mesh& mesh, const Skeleton& skeleton,
                           std::size_t k = kDefaultKnn);

// Builds the three measurement intervals from the joint heights and the
// axilla point. Requires y(axilla) > y(Spine1) > y(Pelvis) > y(R_Hip);
// throws GeometryError naming the two out-of-order bounds otherwise.
Regions segment_regions(const Mesh& mesh, const Skeleton& skeleton,
                        const AxillaResult& axilla);

}  // namespace meshtape
