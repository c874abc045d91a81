#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "meshtape/mesh.hpp"
#include "meshtape/skeleton.hpp"

namespace meshtape {

enum class FixtureKind { kCylinder, kSphere, kHourglass, kHumanoidProxy };

FixtureKind parse_fixture_kind(const std::string& name);
const char* fixture_kind_name(FixtureKind kind);

// Parameters for the procedural test-body generator. All surfaces are
// capped surfaces of revolution about the y axis with radial vertices
// ring-aligned, so every horizontal cross section is exactly the inscribed
// n-gon of the linearly interpolated profile radius.
//
// humanoid_proxy has a fixed canonical shape (designed chest/hip bulges,
// waist neck, two horizontal arm tubes, 6890 vertices); only scale applies
// to it. neck_radius/neck_y apply to hourglass only; neck_y is snapped to
// the nearest ring so the designed minimum lies on the ring grid.
struct FixtureSpec {
  FixtureKind kind = FixtureKind::kCylinder;
  int radial = 48;    // vertices per ring (n >= 3)
  int vertical = 0;   // wall segments along y; 0 selects the kind default
  double height = 1.0;
  double radius = 0.5;
  double neck_radius = 0.2;
  double neck_y = 0.25;
  double scale = 1.0;
};

// Closed-form ground truth carried next to every generated mesh. All
// values are in output (scaled) units. For the humanoid proxy the profile
// describes the torso only; it is valid below armpit_y, which is where
// all measurement slices fall.
struct FixtureOracle {
  FixtureKind kind = FixtureKind::kCylinder;
  int radial = 0;
  double height = 0.0;

  // Ring samples (y, radius), y strictly ascending. The mesh radius varies
  // linearly between consecutive rings.
  std::vector<std::array<double, 2>> profile;

  // Designed feature slices. cylinder: all three carry the constant
  // section; sphere: chest is the equator; hourglass: waist is the neck;
  // humanoid_proxy: all three are the designed bulges/neck and armpit_y
  // is the exact y of the lowest arm-tube vertices.
  double chest_y = 0.0, chest_perimeter = 0.0;
  double waist_y = 0.0, waist_perimeter = 0.0;
  double pelvis_y = 0.0, pelvis_perimeter = 0.0;
  double armpit_y = 0.0;

  // Linear interpolation over profile; throws std::out_of_range outside
  // [profile.front().y, profile.back().y].
  double radius_at(double y) const;

  // Inscribed polygon length 2 * n * radius_at(y) * sin(pi/n).
  double perimeter_at(double y) const;

  // Max |d radius / dy| over profile segments overlapping [y_lo, y_hi];
  // multiply by 2 * n * sin(pi/n) for the perimeter Lipschitz bound.
  double max_slope(double y_lo, double y_hi) const;
};

struct Fixture {
  Mesh mesh;
  Skeleton skeleton;
  FixtureOracle oracle;
};

// Generates mesh + skeleton + oracle. The skeleton carries all required
// joints on the axis (the humanoid proxy places R_Shoulder inside its
// right arm tube). Throws std::invalid_argument on an invalid spec.
Fixture generate(const FixtureSpec& spec);

// Flat JSON document with %.17g numbers for test harnesses.
void write_oracle_json(const FixtureOracle& oracle, std::ostream& out);
void write_oracle_json_file(const FixtureOracle& oracle,
                            const std::string& path);

}  // namespace meshtape
