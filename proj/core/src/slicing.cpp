#include "meshtape/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

// Plane distance with near-zero values snapped to exactly zero, so the
// case analysis below sees "on the plane" consistently.
inline double snapped_distance(double dot, double offset) {
  double d = dot - offset;
  return std::abs(d) < kSnapEps ? 0.0 : d;
}

inline Eigen::Vector3d edge_crossing(const Eigen::Vector3d& a, double da,
                                     const Eigen::Vector3d& b, double db) {
  double t = da / (da - db);
  return a + t * (b - a);
}

// Clips one triangle against the plane. dot0..dot2 are the vertex dot
// products with the plane normal. Emits at most one segment:
//  - straddling triangle: the crossing segment;
//  - one vertex on the plane, others on strictly opposite sides: the
//    segment through that vertex;
//  - one edge on the plane: the edge, but only when the remaining vertex
//    is on the strictly positive side (a ring edge shared between a
//    triangle above and one below is then counted exactly once);
//  - coplanar triangle or single-vertex touch: nothing.
bool clip_triangle(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                   const Eigen::Vector3d& p2, double dot0, double dot1,
                   double dot2, double offset, Eigen::Vector3d& out_a,
                   Eigen::Vector3d& out_b) {
  const double d0 = snapped_distance(dot0, offset);
  const double d1 = snapped_distance(dot1, offset);
  const double d2 = snapped_distance(dot2, offset);

  const Eigen::Vector3d* verts[3] = {&p0, &p1, &p2};
  const double dist[3] = {d0, d1, d2};

  int zero[3], pos[3], neg[3];
  int nz = 0, np = 0, nn = 0;
  for (int i = 0; i < 3; ++i) {
    if (dist[i] == 0.0)
      zero[nz++] = i;
    else if (dist[i] > 0.0)
      pos[np++] = i;
    else
      neg[nn++] = i;
  }

  if (nz == 3 || np == 3 || nn == 3) return false;

  if (nz == 2) {
    // Edge lies on the plane; emit it only from the positive side.
    if (dist[3 - zero[0] - zero[1]] <= 0.0) return false;
    out_a = *verts[zero[0]];
    out_b = *verts[zero[1]];
    return true;
  }

  if (nz == 1) {
    if (np != 1 || nn != 1) return false;  // single-vertex touch
    out_a = *verts[zero[0]];
    out_b = edge_crossing(*verts[pos[0]], dist[pos[0]], *verts[neg[0]],
                          dist[neg[0]]);
    return true;
  }

  // No vertex on the plane: one side holds exactly one vertex.
  const int lone = np == 1 ? pos[0] : neg[0];
  const int other0 = (lone + 1) % 3;
  const int other1 = (lone + 2) % 3;
  out_a = edge_crossing(*verts[lone], dist[lone], *verts[other0],
                        dist[other0]);
  out_b = edge_crossing(*verts[lone], dist[lone], *verts[other1],
                        dist[other1]);
  return true;
}

void check_normal(const Eigen::Vector3d& normal) {
  if (std::abs(normal.norm() - 1.0) > kPlaneEps)
    throw std::invalid_argument("plane normal must be unit length");
}

}  // namespace

CrossSection slice_at(const Mesh& mesh, const SlicePlane& plane) {
  check_normal(plane.normal);
  CrossSection section;
  Eigen::Vector3d a, b;
  for (const Eigen::Vector3i& tri : mesh.triangles) {
    const Eigen::Vector3d& p0 = mesh.vertices[tri[0]];
    const Eigen::Vector3d& p1 = mesh.vertices[tri[1]];
    const Eigen::Vector3d& p2 = mesh.vertices[tri[2]];
    if (clip_triangle(p0, p1, p2, p0.dot(plane.normal),
                      p1.dot(plane.normal), p2.dot(plane.normal),
                      plane.offset, a, b))
      section.segments.push_back({a, b});
  }
  return section;
}

double boundary_length(const CrossSection& section) {
  double total = 0.0;
  for (const auto& seg : section.segments) total += (seg[0] - seg[1]).norm();
  return total;
}

Signature mesh_signature(const Mesh& mesh, const Eigen::Vector3d& normal,
                         double m) {
  if (!(m > 0.0)) throw std::invalid_argument("step must be positive");
  check_normal(normal);
  if (mesh.vertices.empty())
    throw GeometryError("cannot slice a mesh with no vertices");

  const std::size_t nv = mesh.vertices.size();
  std::vector<double> proj(nv);
  double q_top = -std::numeric_limits<double>::infinity();
  double q_bottom = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nv; ++i) {
    proj[i] = mesh.vertices[i].dot(normal);
    q_top = std::max(q_top, proj[i]);
    q_bottom = std::min(q_bottom, proj[i]);
  }

  Signature sig;
  sig.step = m;
  sig.normal = normal;

  // Offsets are computed as q_top - k*m (not by repeated subtraction) so
  // they carry no accumulated rounding. The last regular step may land a
  // hair above q_bottom from rounding alone; the tolerance folds such
  // slices into the final q_bottom sample.
  const double tol = m * 1e-9;
  for (std::size_t k = 0;; ++k) {
    double q = q_top - static_cast<double>(k) * m;
    if (q <= q_bottom + tol) break;
    sig.offsets.push_back(q);
  }
  sig.offsets.push_back(q_bottom);

  sig.lengths.assign(sig.offsets.size(), 0.0);

  // Sweep triangles once; each triangle only touches the slices inside its
  // own projected span. Buckets accumulate in triangle order, which keeps
  // every lengths[i] bit-identical to boundary_length(slice_at(...)).
  Eigen::Vector3d a, b;
  for (const Eigen::Vector3i& tri : mesh.triangles) {
    const double dot0 = proj[tri[0]];
    const double dot1 = proj[tri[1]];
    const double dot2 = proj[tri[2]];
    const double lo = std::min({dot0, dot1, dot2}) - kSnapEps;
    const double hi = std::max({dot0, dot1, dot2}) + kSnapEps;

    // offsets are descending: [first, last) covers offsets in [lo, hi].
    auto first = std::lower_bound(sig.offsets.begin(), sig.offsets.end(),
                                  hi, std::greater<double>());
    auto last = std::upper_bound(sig.offsets.begin(), sig.offsets.end(),
                                 lo, std::greater<double>());
    for (auto it = first; it != last; ++it) {
      if (clip_triangle(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                        mesh.vertices[tri[2]], dot0, dot1, dot2, *it, a,
                        b)) {
        sig.lengths[static_cast<std::size_t>(
            it - sig.offsets.begin())] += (a - b).norm();
      }
    }
  }
  return sig;
}

}  // namespace meshtape
