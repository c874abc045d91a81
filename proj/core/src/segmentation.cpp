#include "meshtape/segmentation.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

// Moller-Trumbore with the barycentric window relaxed by kBaryEps, so a
// ray passing through a shared edge still reports both triangles instead
// of occasionally neither. Returns the ray parameter, negative on miss.
double ray_triangle(const Eigen::Vector3d& origin,
                    const Eigen::Vector3d& dir, const Eigen::Vector3d& p0,
                    const Eigen::Vector3d& p1, const Eigen::Vector3d& p2) {
  const Eigen::Vector3d e1 = p1 - p0;
  const Eigen::Vector3d e2 = p2 - p0;
  const Eigen::Vector3d pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (det == 0.0) return -1.0;
  const double inv_det = 1.0 / det;
  const Eigen::Vector3d tvec = origin - p0;
  const double u = tvec.dot(pvec) * inv_det;
  if (!(u >= -kBaryEps && u <= 1.0 + kBaryEps)) return -1.0;
  const Eigen::Vector3d qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (!(v >= -kBaryEps && u + v <= 1.0 + kBaryEps)) return -1.0;
  return e2.dot(qvec) * inv_det;
}

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

AxillaResult locate_axilla(const Mesh& mesh, const Skeleton& skeleton,
                           std::size_t k) {
  if (k < 1) throw std::invalid_argument("neighbor count must be >= 1");

  AxillaResult result;
  result.origin = skeleton.joint("R_Shoulder");

  const Aabb box = bounding_box(mesh);
  result.target =
      Eigen::Vector3d(box.min.x(), box.min.y(),
                      box.min.z() + std::abs(box.max.z() - box.min.z()) / 2.0);

  const Eigen::Vector3d dir = result.target - result.origin;

  double best_t = std::numeric_limits<double>::infinity();
  for (const Eigen::Vector3i& tri : mesh.triangles) {
    const double t =
        ray_triangle(result.origin, dir, mesh.vertices[tri[0]],
                     mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
    // Strictly positive parameter: the shoulder joint itself sits inside
    // the body, never on the surface.
    if (t > kBaryEps && t < best_t) best_t = t;
  }
  if (!std::isfinite(best_t))
    throw GeometryError("axilla ray missed mesh");
  result.first_hit = result.origin + best_t * dir;

  // k nearest vertices to the hit point by straight-line distance;
  // (distance, index) pairs make the selection a strict total order, so
  // the chosen set is deterministic.
  const std::size_t nv = mesh.vertices.size();
  const std::size_t use = std::min(k, nv);
  result.neighbors_used = use;

  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i)
    candidates.emplace_back(
        (mesh.vertices[i] - result.first_hit).squaredNorm(), i);
  std::nth_element(candidates.begin(), candidates.begin() + (use - 1),
                   candidates.end());

  // Lowest y wins; ties break to the lowest vertex index.
  std::size_t best = candidates[0].second;
  for (std::size_t i = 1; i < use; ++i) {
    const std::size_t idx = candidates[i].second;
    const double y = mesh.vertices[idx].y();
    const double best_y = mesh.vertices[best].y();
    if (y < best_y || (y == best_y && idx < best)) best = idx;
  }
  result.axilla = mesh.vertices[best];
  return result;
}

Regions segment_regions(const Mesh&, const Skeleton& skeleton,
                        const AxillaResult& axilla) {
  const double y_axilla = axilla.axilla.y();
  const double y_spine1 = skeleton.joint("Spine1").y();
  const double y_pelvis = skeleton.joint("Pelvis").y();
  const double y_hip = skeleton.joint("R_Hip").y();

  auto require_above = [](double upper, const char* upper_name,
                          double lower, const char* lower_name) {
    if (!(upper > lower))
      throw GeometryError(std::string("ordering violated: ") + upper_name +
                          " y (" + fmt(upper) + ") must be above " +
                          lower_name + " y (" + fmt(lower) + ")");
  };
  require_above(y_axilla, "axilla", y_spine1, "Spine1");
  require_above(y_spine1, "Spine1", y_pelvis, "Pelvis");
  require_above(y_pelvis, "Pelvis", y_hip, "R_Hip");

  Regions regions;
  regions.chest = {y_spine1, y_axilla};
  regions.waist = {y_pelvis, y_spine1};
  regions.pelvis = {y_hip, y_pelvis};
  return regions;
}

}  // namespace meshtape
