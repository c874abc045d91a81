#pragma once

#include <Eigen/Core>

#include <cstddef>

#include "meshtape/mesh.hpp"
#include "meshtape/segmentation.hpp"
#include "meshtape/skeleton.hpp"
#include "meshtape/slicing.hpp"

namespace meshtape {

inline constexpr double kDefaultStep = 0.001;

inline Eigen::Vector3d default_plane_normal() { return {0.0, 1.0, 0.0}; }

// Three circumferences (meters) with the slice offsets where they were
// found and the slicing step that produced them.
struct MeasurementSet {
  double chest = 0.0;
  double waist = 0.0;
  double pelvis = 0.0;
  double chest_y = 0.0;
  double waist_y = 0.0;
  double pelvis_y = 0.0;
  double step = 0.0;
};

// chest = max boundary length over signature slices inside the chest
// interval, waist = min over the waist interval, pelvis = max over the
// pelvis interval. Ties pick the slice with the greatest offset. Extrema
// may fall on region-boundary slices.
//
// Throws GeometryError "region unsampled; decrease m" when a region
// contains no slice and "empty cross-sections in region" when every slice
// in a region has zero length.
MeasurementSet measure(const Signature& signature, const Regions& regions);

struct PipelineResult {
  MeasurementSet measurement;
  Signature signature;
  Regions regions;
  AxillaResult axilla;
};

// Full measurement composition: lsa_align (when map is not identity) ->
// locate_axilla -> segment_regions -> mesh_signature -> measure. All
// intermediates are returned for inspection and export. Stage failures
// are rethrown with the stage name prefixed.
PipelineResult run_pipeline(const Mesh& mesh, const Skeleton& skeleton,
                            double m = kDefaultStep,
                            std::size_t k = kDefaultKnn,
                            const Eigen::Vector3d& normal = {0.0, 1.0, 0.0},
                            const AxisMap& map = AxisMap());

}  // namespace meshtape
