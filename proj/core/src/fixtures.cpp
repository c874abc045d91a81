#include "meshtape/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

double ngon_perimeter(int n, double r) { return 2.0 * n * r * std::sin(kPi / n); }

double interp_profile(const std::vector<std::array<double, 2>>& control,
                      double y) {
  for (std::size_t i = 0; i + 1 < control.size(); ++i) {
    const double y0 = control[i][0], y1 = control[i + 1][0];
    if (y >= y0 && y <= y1) {
      const double t = (y - y0) / (y1 - y0);
      return control[i][1] + t * (control[i + 1][1] - control[i][1]);
    }
  }
  throw std::out_of_range("height outside the fixture profile");
}

// Capped surface of revolution about the y axis. rings are (y, radius)
// samples, y strictly ascending; radius 0 is allowed only at the first or
// last ring and produces an apex vertex there instead of a ring + cap.
// Ring vertices are angle-aligned across rings, so every horizontal cross
// section of the wall is exactly the inscribed n-gon of the interpolated
// radius.
void append_revolve(Mesh& mesh,
                    const std::vector<std::array<double, 2>>& rings, int n,
                    double phase) {
  const std::size_t nr = rings.size();
  std::vector<int> start(nr);
  std::vector<bool> apex(nr);
  for (std::size_t j = 0; j < nr; ++j) {
    start[j] = static_cast<int>(mesh.vertices.size());
    const double y = rings[j][0], r = rings[j][1];
    apex[j] = r == 0.0;
    if (apex[j]) {
      mesh.vertices.emplace_back(0.0, y, 0.0);
    } else {
      for (int i = 0; i < n; ++i) {
        const double a = phase + kTau * i / n;
        mesh.vertices.emplace_back(r * std::cos(a), y, r * std::sin(a));
      }
    }
  }

  for (std::size_t j = 0; j + 1 < nr; ++j) {
    const int lo = start[j], hi = start[j + 1];
    if (apex[j]) {
      for (int i = 0; i < n; ++i) {
        const int i2 = (i + 1) % n;
        mesh.triangles.emplace_back(lo, hi + i, hi + i2);
      }
    } else if (apex[j + 1]) {
      for (int i = 0; i < n; ++i) {
        const int i2 = (i + 1) % n;
        mesh.triangles.emplace_back(lo + i, lo + i2, hi);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const int i2 = (i + 1) % n;
        mesh.triangles.emplace_back(lo + i, lo + i2, hi + i2);
        mesh.triangles.emplace_back(lo + i, hi + i2, hi + i);
      }
    }
  }

  if (!apex.front()) {
    const int center = static_cast<int>(mesh.vertices.size());
    mesh.vertices.emplace_back(0.0, rings.front()[0], 0.0);
    for (int i = 0; i < n; ++i)
      mesh.triangles.emplace_back(center, start.front() + (i + 1) % n,
                                  start.front() + i);
  }
  if (!apex.back()) {
    const int center = static_cast<int>(mesh.vertices.size());
    mesh.vertices.emplace_back(0.0, rings.back()[0], 0.0);
    for (int i = 0; i < n; ++i)
      mesh.triangles.emplace_back(center, start.back() + i,
                                  start.back() + (i + 1) % n);
  }
}

void place_axis_joints(Skeleton& skeleton, double height) {
  skeleton.joints["R_Hip"] = {0.0, 0.20 * height, 0.0};
  skeleton.joints["Pelvis"] = {0.0, 0.35 * height, 0.0};
  skeleton.joints["Spine1"] = {0.0, 0.50 * height, 0.0};
  skeleton.joints["R_Shoulder"] = {0.0, 0.75 * height, 0.0};
}

// ---- humanoid proxy constants ----
//
// Torso: surface of revolution, control heights on the 1/100 ring grid so
// ring sampling reproduces every kink exactly. Designed features: hip
// bulge r=0.18 at y=0.15, waist neck r=0.11 at y=0.35, chest bulge
// r=0.165 at y=0.55, with a flat r=0.15 shoulder band so the chest bulge
// is the unique chest-region maximum.
const std::vector<std::array<double, 2>> kTorsoControl = {
    {0.00, 0.12}, {0.15, 0.18}, {0.35, 0.11}, {0.55, 0.165},
    {0.62, 0.15}, {0.78, 0.15}, {0.88, 0.06}, {1.00, 0.055}};
constexpr int kTorsoRadial = 48;
constexpr int kTorsoRings = 101;
constexpr double kChestY = 0.55, kWaistY = 0.35, kPelvisY = 0.15;

// Arms: horizontal 12-gon tubes along x at shoulder height, open at the
// torso junction (plain triangle-soup union). The half-step angular phase
// puts an edge, not a vertex, at the exact bottom, so the lowest tube
// vertices form two straight rows whose y is the designed armpit height.
constexpr double kArmAxisY = 0.71;
constexpr double kArmRadius = 0.05;
constexpr double kArmInnerX = 0.10;
constexpr double kArmTipX = 0.38;
constexpr int kArmRadial = 12;
constexpr int kArmRings = 85;

// Appends one arm tube; side is +1 (left, +x) or -1 (right, -x).
// Returns the lowest vertex y of the tube (the designed armpit height).
double append_arm(Mesh& mesh, double side) {
  double dy[kArmRadial], dz[kArmRadial];
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kArmRadial; ++i) {
    const double phi = -kPi / 2.0 + (i + 0.5) * (kTau / kArmRadial);
    dy[i] = kArmAxisY + kArmRadius * std::sin(phi);
    dz[i] = kArmRadius * std::cos(phi);
    lowest = std::min(lowest, dy[i]);
  }

  const int base = static_cast<int>(mesh.vertices.size());
  for (int j = 0; j < kArmRings; ++j) {
    const double x =
        side * (kArmInnerX + (kArmTipX - kArmInnerX) * j / (kArmRings - 1));
    for (int i = 0; i < kArmRadial; ++i)
      mesh.vertices.emplace_back(x, dy[i], dz[i]);
  }
  for (int j = 0; j + 1 < kArmRings; ++j) {
    const int lo = base + j * kArmRadial;
    const int hi = lo + kArmRadial;
    for (int i = 0; i < kArmRadial; ++i) {
      const int i2 = (i + 1) % kArmRadial;
      mesh.triangles.emplace_back(lo + i, lo + i2, hi + i2);
      mesh.triangles.emplace_back(lo + i, hi + i2, hi + i);
    }
  }
  const int tip = base + (kArmRings - 1) * kArmRadial;
  for (int i = 1; i + 1 < kArmRadial; ++i)
    mesh.triangles.emplace_back(tip, tip + i, tip + i + 1);
  return lowest;
}

Fixture build_humanoid() {
  Fixture fx;

  std::vector<std::array<double, 2>> rings(kTorsoRings);
  for (int j = 0; j < kTorsoRings; ++j) {
    const double y = static_cast<double>(j) / (kTorsoRings - 1);
    rings[j] = {y, interp_profile(kTorsoControl, y)};
  }
  append_revolve(fx.mesh, rings, kTorsoRadial, 0.0);

  const double armpit_r = append_arm(fx.mesh, -1.0);
  const double armpit_l = append_arm(fx.mesh, +1.0);
  const double armpit_y = std::min(armpit_r, armpit_l);

  fx.skeleton.joints = {
      {"Head", {0.0, 0.92, 0.0}},       {"L_Hip", {0.08, 0.05, 0.0}},
      {"L_Shoulder", {0.22, kArmAxisY, 0.0}},
      {"Neck", {0.0, 0.80, 0.0}},       {"Pelvis", {0.0, 0.25, 0.0}},
      {"R_Hip", {-0.08, 0.05, 0.0}},
      {"R_Shoulder", {-0.22, kArmAxisY, 0.0}},
      {"Spine1", {0.0, 0.45, 0.0}},     {"Spine2", {0.0, 0.55, 0.0}},
  };

  FixtureOracle& o = fx.oracle;
  o.kind = FixtureKind::kHumanoidProxy;
  o.radial = kTorsoRadial;
  o.height = 1.0;
  o.profile = rings;
  o.chest_y = kChestY;
  o.chest_perimeter = ngon_perimeter(kTorsoRadial, interp_profile(kTorsoControl, kChestY));
  o.waist_y = kWaistY;
  o.waist_perimeter = ngon_perimeter(kTorsoRadial, interp_profile(kTorsoControl, kWaistY));
  o.pelvis_y = kPelvisY;
  o.pelvis_perimeter = ngon_perimeter(kTorsoRadial, interp_profile(kTorsoControl, kPelvisY));
  o.armpit_y = armpit_y;
  return fx;
}

Fixture build_cylinder(const FixtureSpec& spec) {
  Fixture fx;
  const int vres = spec.vertical > 0 ? spec.vertical : 1;
  std::vector<std::array<double, 2>> rings(vres + 1);
  for (int j = 0; j <= vres; ++j)
    rings[j] = {spec.height * j / vres, spec.radius};
  append_revolve(fx.mesh, rings, spec.radial, 0.0);
  place_axis_joints(fx.skeleton, spec.height);

  FixtureOracle& o = fx.oracle;
  o.kind = FixtureKind::kCylinder;
  o.radial = spec.radial;
  o.height = spec.height;
  o.profile = rings;
  const double p = ngon_perimeter(spec.radial, spec.radius);
  o.chest_y = o.waist_y = o.pelvis_y = spec.height / 2.0;
  o.chest_perimeter = o.waist_perimeter = o.pelvis_perimeter = p;
  return fx;
}

Fixture build_sphere(const FixtureSpec& spec) {
  Fixture fx;
  const int vres = spec.vertical > 0 ? spec.vertical : 32;
  std::vector<std::array<double, 2>> rings(vres + 1);
  for (int j = 0; j <= vres; ++j) {
    const double a = kPi * j / vres;
    double r = spec.radius * std::sin(a);
    if (j == 0 || j == vres) r = 0.0;  // exact apexes
    rings[j] = {spec.radius * (1.0 - std::cos(a)), r};
  }
  append_revolve(fx.mesh, rings, spec.radial, 0.0);
  place_axis_joints(fx.skeleton, 2.0 * spec.radius);

  FixtureOracle& o = fx.oracle;
  o.kind = FixtureKind::kSphere;
  o.radial = spec.radial;
  o.height = 2.0 * spec.radius;
  o.profile = rings;
  // Widest sampled ring (the exact equator when vres is even).
  std::size_t widest = 0;
  for (std::size_t j = 1; j < rings.size(); ++j)
    if (rings[j][1] > rings[widest][1]) widest = j;
  o.chest_y = rings[widest][0];
  o.chest_perimeter = ngon_perimeter(spec.radial, rings[widest][1]);
  return fx;
}

Fixture build_hourglass(const FixtureSpec& spec) {
  Fixture fx;
  const int vres = spec.vertical > 0 ? spec.vertical : 40;
  // The designed minimum must lie on the ring grid to stay an exact
  // feature of the mesh; snap it to the nearest interior ring.
  const int neck_ring = std::clamp(
      static_cast<int>(std::lround(spec.neck_y / spec.height * vres)), 1,
      vres - 1);
  const double neck_y = spec.height * neck_ring / vres;
  const std::vector<std::array<double, 2>> control = {
      {0.0, spec.radius},
      {neck_y, spec.neck_radius},
      {spec.height, spec.radius}};

  std::vector<std::array<double, 2>> rings(vres + 1);
  for (int j = 0; j <= vres; ++j) {
    const double y = spec.height * j / vres;
    rings[j] = {y, interp_profile(control, y)};
  }
  append_revolve(fx.mesh, rings, spec.radial, 0.0);
  place_axis_joints(fx.skeleton, spec.height);

  FixtureOracle& o = fx.oracle;
  o.kind = FixtureKind::kHourglass;
  o.radial = spec.radial;
  o.height = spec.height;
  o.profile = rings;
  o.waist_y = neck_y;
  o.waist_perimeter = ngon_perimeter(spec.radial, spec.neck_radius);
  return fx;
}

void scale_fixture(Fixture& fx, double s) {
  for (Eigen::Vector3d& v : fx.mesh.vertices) v *= s;
  for (auto& [name, p] : fx.skeleton.joints) p *= s;
  FixtureOracle& o = fx.oracle;
  o.height *= s;
  for (auto& ring : o.profile) {
    ring[0] *= s;
    ring[1] *= s;
  }
  o.chest_y *= s;
  o.waist_y *= s;
  o.pelvis_y *= s;
  o.chest_perimeter *= s;
  o.waist_perimeter *= s;
  o.pelvis_perimeter *= s;
  o.armpit_y *= s;
}

void check_spec(const FixtureSpec& spec) {
  if (!(spec.scale > 0.0))
    throw std::invalid_argument("fixture scale must be positive");
  if (spec.kind == FixtureKind::kHumanoidProxy) return;  // fixed shape
  if (spec.radial < 3)
    throw std::invalid_argument("radial resolution must be at least 3");
  if (spec.vertical < 0)
    throw std::invalid_argument("vertical resolution must be non-negative");
  if (!(spec.radius > 0.0))
    throw std::invalid_argument("fixture radius must be positive");
  if (spec.kind != FixtureKind::kSphere && !(spec.height > 0.0))
    throw std::invalid_argument("fixture height must be positive");
  if (spec.kind == FixtureKind::kHourglass) {
    if (!(spec.neck_radius > 0.0))
      throw std::invalid_argument("neck radius must be positive");
    if (!(spec.neck_radius < spec.radius))
      throw std::invalid_argument(
          "neck radius must be below the outer radius");
    if (!(spec.neck_y > 0.0 && spec.neck_y < spec.height))
      throw std::invalid_argument("neck height must lie inside the body");
  }
}

}  // namespace

FixtureKind parse_fixture_kind(const std::string& name) {
  if (name == "cylinder") return FixtureKind::kCylinder;
  if (name == "sphere") return FixtureKind::kSphere;
  if (name == "hourglass") return FixtureKind::kHourglass;
  if (name == "humanoid_proxy") return FixtureKind::kHumanoidProxy;
  throw std::invalid_argument("unknown fixture kind '" + name + "'");
}

const char* fixture_kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::kCylinder: return "cylinder";
    case FixtureKind::kSphere: return "sphere";
    case FixtureKind::kHourglass: return "hourglass";
    case FixtureKind::kHumanoidProxy: return "humanoid_proxy";
  }
  return "unknown";
}

double FixtureOracle::radius_at(double y) const {
  return interp_profile(profile, y);
}

double FixtureOracle::perimeter_at(double y) const {
  return ngon_perimeter(radial, radius_at(y));
}

double FixtureOracle::max_slope(double y_lo, double y_hi) const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const double y0 = profile[i][0], y1 = profile[i + 1][0];
    if (y1 <= y_lo || y0 >= y_hi) continue;
    worst = std::max(worst,
                     std::abs(profile[i + 1][1] - profile[i][1]) / (y1 - y0));
  }
  return worst;
}

Fixture generate(const FixtureSpec& spec) {
  check_spec(spec);
  Fixture fx;
  switch (spec.kind) {
    case FixtureKind::kCylinder: fx = build_cylinder(spec); break;
    case FixtureKind::kSphere: fx = build_sphere(spec); break;
    case FixtureKind::kHourglass: fx = build_hourglass(spec); break;
    case FixtureKind::kHumanoidProxy: fx = build_humanoid(); break;
  }
  if (spec.scale != 1.0) scale_fixture(fx, spec.scale);
  return fx;
}

void write_oracle_json(const FixtureOracle& oracle, std::ostream& out) {
  char buf[64];
  auto g17 = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  out << "{\n  \"kind\": \"" << fixture_kind_name(oracle.kind) << "\",\n";
  out << "  \"radial_resolution\": " << oracle.radial << ",\n";
  out << "  \"height\": " << g17(oracle.height) << ",\n";
  switch (oracle.kind) {
    case FixtureKind::kCylinder:
      out << "  \"perimeter\": " << g17(oracle.chest_perimeter) << ",\n";
      break;
    case FixtureKind::kSphere:
      out << "  \"equator_y\": " << g17(oracle.chest_y) << ",\n";
      out << "  \"max_perimeter\": " << g17(oracle.chest_perimeter)
          << ",\n";
      break;
    case FixtureKind::kHourglass:
      out << "  \"min_y\": " << g17(oracle.waist_y) << ",\n";
      out << "  \"min_perimeter\": " << g17(oracle.waist_perimeter)
          << ",\n";
      break;
    case FixtureKind::kHumanoidProxy:
      out << "  \"armpit_y\": " << g17(oracle.armpit_y) << ",\n";
      out << "  \"features\": {\n";
      out << "    \"chest\": {\"y\": " << g17(oracle.chest_y)
          << ", \"perimeter\": " << g17(oracle.chest_perimeter) << "},\n";
      out << "    \"waist\": {\"y\": " << g17(oracle.waist_y)
          << ", \"perimeter\": " << g17(oracle.waist_perimeter) << "},\n";
      out << "    \"pelvis\": {\"y\": " << g17(oracle.pelvis_y)
          << ", \"perimeter\": " << g17(oracle.pelvis_perimeter)
          << "}\n  },\n";
      break;
  }
  out << "  \"profile\": [";
  for (std::size_t i = 0; i < oracle.profile.size(); ++i) {
    out << (i ? ", " : "") << '[' << g17(oracle.profile[i][0]) << ", "
        << g17(oracle.profile[i][1]) << ']';
  }
  out << "]\n}\n";
}

void write_oracle_json_file(const FixtureOracle& oracle,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_oracle_json(oracle, out);
}

}  // namespace meshtape
