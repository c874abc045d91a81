#include "meshtape/measure.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

enum class Extremum { kMax, kMin };

// Scans the signature slices inside interval. Offsets are descending, and
// the comparisons are strict, so a tie keeps the first (greatest-y) slice.
std::pair<double, double> extremal_slice(const Signature& sig,
                                         const Interval& interval,
                                         Extremum kind, const char* name) {
  bool found = false;
  double best_len = 0.0, best_q = 0.0;
  for (std::size_t i = 0; i < sig.offsets.size(); ++i) {
    const double q = sig.offsets[i];
    if (!interval.contains(q)) continue;
    const double len = sig.lengths[i];
    if (!found || (kind == Extremum::kMax ? len > best_len
                                          : len < best_len)) {
      best_len = len;
      best_q = q;
      found = true;
    }
  }
  if (!found)
    throw GeometryError(std::string(name) +
                        " region unsampled; decrease m");
  if (!(best_len > 0.0))
    throw GeometryError(std::string("empty cross-sections in ") + name +
                        " region");
  return {best_len, best_q};
}

}  // namespace

MeasurementSet measure(const Signature& signature, const Regions& regions) {
  MeasurementSet out;
  out.step = signature.step;
  std::tie(out.chest, out.chest_y) =
      extremal_slice(signature, regions.chest, Extremum::kMax, "chest");
  std::tie(out.waist, out.waist_y) =
      extremal_slice(signature, regions.waist, Extremum::kMin, "waist");
  std::tie(out.pelvis, out.pelvis_y) =
      extremal_slice(signature, regions.pelvis, Extremum::kMax, "pelvis");
  return out;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const GeometryError& e) {
    throw GeometryError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const Mesh& mesh, const Skeleton& skeleton,
                            double m, std::size_t k,
                            const Eigen::Vector3d& normal,
                            const AxisMap& map) {
  PipelineResult result;

  const Mesh* aligned_mesh = &mesh;
  const Skeleton* aligned_skeleton = &skeleton;
  Mesh mesh_storage;
  Skeleton skeleton_storage;
  if (!map.is_identity()) {
    mesh_storage = lsa_align(mesh, map);
    skeleton_storage = lsa_align(skeleton, map);
    aligned_mesh = &mesh_storage;
    aligned_skeleton = &skeleton_storage;
  }

  result.axilla = stage("locate_axilla", [&] {
    return locate_axilla(*aligned_mesh, *aligned_skeleton, k);
  });
  result.regions = stage("segment_regions", [&] {
    return segment_regions(*aligned_mesh, *aligned_skeleton, result.axilla);
  });
  result.signature = stage("mesh_signature", [&] {
    return mesh_signature(*aligned_mesh, normal, m);
  });
  result.measurement = stage("measure", [&] {
    return measure(result.signature, result.regions);
  });
  return result;
}

}  // namespace meshtape
