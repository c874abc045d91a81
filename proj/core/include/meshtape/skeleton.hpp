#pragma once

#include <Eigen/Core>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "meshtape/mesh.hpp"

namespace meshtape {

// Joint names the measurement pipeline depends on. Everything else is
// carried along untouched.
inline constexpr std::array<const char*, 4> kRequiredJoints = {
    "Pelvis", "Spine1", "R_Hip", "R_Shoulder"};

// Named joint locations in meters. std::map keeps iteration (and thus
// serialization) in a deterministic order.
struct Skeleton {
  std::map<std::string, Eigen::Vector3d> joints;

  bool has(const std::string& name) const {
    return joints.find(name) != joints.end();
  }

  // Throws GeometryError("missing joint <name>") when absent.
  const Eigen::Vector3d& joint(const std::string& name) const;

  // Names from kRequiredJoints not present in this skeleton.
  std::vector<std::string> missing_required() const;
};

// Applies the signed axis permutation to every joint.
Skeleton lsa_align(const Skeleton& skeleton, const AxisMap& map);

}  // namespace meshtape
