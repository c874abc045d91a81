#include "meshtape/slicing.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "meshtape/errors.hpp"
#include "meshtape/fixtures.hpp"
#include "support/naive_slicer.hpp"
#include "support/test_meshes.hpp"

using namespace meshtape;
using meshtape::testing::naive_section_length;
using meshtape::testing::single_triangle;
using meshtape::testing::unit_cube;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Eigen::Vector3d kUp(0, 1, 0);

Fixture make(FixtureKind kind, int radial = 48) {
  FixtureSpec spec;
  spec.kind = kind;
  spec.radial = radial;
  return generate(spec);
}

}  // namespace

TEST(SliceAt, UnitCubeMidPlaneTracesThePerimeter) {
  const CrossSection section = slice_at(unit_cube(), {kUp, 0.5});
  // Each of the four side faces is two triangles, each crossed once.
  EXPECT_EQ(section.segments.size(), 8u);
  EXPECT_EQ(boundary_length(section), 4.0);
  for (const auto& seg : section.segments)
    for (const Eigen::Vector3d& p : seg) EXPECT_EQ(p.y(), 0.5);
}

TEST(SliceAt, PlaneOutsideTheMeshIsEmpty) {
  EXPECT_TRUE(slice_at(unit_cube(), {kUp, 2.0}).segments.empty());
  EXPECT_TRUE(slice_at(unit_cube(), {kUp, -1.0}).segments.empty());
}

TEST(SliceAt, CylinderMidHeightYieldsTwoSegmentsPerRadialStep) {
  // Each wall quad is two triangles and a mid-quad plane crosses both,
  // splitting every polygon side at the quad diagonal.
  const Fixture fx = make(FixtureKind::kCylinder, 16);
  const CrossSection section = slice_at(fx.mesh, {kUp, 0.5});
  EXPECT_EQ(section.segments.size(), 32u);
  EXPECT_NEAR(boundary_length(section),
              2.0 * 16 * 0.5 * std::sin(kPi / 16), 1e-12);
}

TEST(SliceAt, NonUnitNormalIsRejected) {
  EXPECT_THROW(slice_at(unit_cube(), {{0, 2, 0}, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(slice_at(unit_cube(), {{0, 0, 0}, 0.5}),
               std::invalid_argument);
}

TEST(SliceAt, NearPlaneVertexSnapsOntoThePlane) {
  // One vertex within the snap tolerance of the plane, the other two
  // below: after snapping this is a single-vertex touch, which emits
  // nothing. Without the snap it would emit a sliver segment.
  const Mesh m = single_triangle({0, 0.5 + 1e-13, 0}, {1, 0, 0},
                                 {-1, 0, 0});
  EXPECT_TRUE(slice_at(m, {kUp, 0.5}).segments.empty());
}

TEST(SliceAt, EdgeOnPlaneCountsOnceForTheTriangleAbove) {
  Mesh m;
  m.vertices = {{0, 0.5, 0}, {1, 0.5, 0}, {0.5, 1, 0}, {0.5, 0, 0}};
  m.triangles = {{0, 1, 2}};
  // Third vertex above: the on-plane edge is the section.
  CrossSection above = slice_at(m, {kUp, 0.5});
  ASSERT_EQ(above.segments.size(), 1u);
  EXPECT_EQ(boundary_length(above), 1.0);

  // Third vertex below: contributes nothing.
  m.triangles = {{0, 1, 3}};
  EXPECT_TRUE(slice_at(m, {kUp, 0.5}).segments.empty());

  // A ring edge shared by a triangle above and one below appears exactly
  // once in the union.
  m.triangles = {{0, 1, 2}, {0, 1, 3}};
  CrossSection ring = slice_at(m, {kUp, 0.5});
  EXPECT_EQ(ring.segments.size(), 1u);
  EXPECT_EQ(boundary_length(ring), 1.0);
}

TEST(SliceAt, CoplanarTriangleEmitsNothing) {
  const Mesh m =
      single_triangle({0, 0.5, 0}, {1, 0.5, 0}, {0, 0.5, 1});
  EXPECT_TRUE(slice_at(m, {kUp, 0.5}).segments.empty());
}

TEST(SliceAt, SingleVertexTouchEmitsNothing) {
  const Mesh m = single_triangle({0, 0.5, 0}, {1, 0, 0}, {-1, 0, 0});
  EXPECT_TRUE(slice_at(m, {kUp, 0.5}).segments.empty());
}

TEST(SliceAt, EndpointsLieOnThePlaneWithinTolerance) {
  const Fixture fx = make(FixtureKind::kHumanoidProxy);
  std::mt19937_64 rng(7041992);
  std::uniform_real_distribution<double> offset(-0.1, 1.1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d n(gauss(rng), gauss(rng), gauss(rng));
    if (n.norm() < 1e-3) continue;
    n.normalize();
    const double q = offset(rng);
    for (const auto& seg : slice_at(fx.mesh, {n, q}).segments)
      for (const Eigen::Vector3d& p : seg)
        ASSERT_LE(std::abs(n.dot(p) - q), kPlaneEps);
  }
}

TEST(BoundaryLength, UnitSquareSectionSumsToFour) {
  CrossSection section;
  section.segments = {{Eigen::Vector3d(0, 0.5, 0), Eigen::Vector3d(1, 0.5, 0)},
                      {Eigen::Vector3d(1, 0.5, 0), Eigen::Vector3d(1, 0.5, 1)},
                      {Eigen::Vector3d(1, 0.5, 1), Eigen::Vector3d(0, 0.5, 1)},
                      {Eigen::Vector3d(0, 0.5, 1), Eigen::Vector3d(0, 0.5, 0)}};
  EXPECT_EQ(boundary_length(section), 4.0);
}

TEST(BoundaryLength, DisjointComponentsAreSummed) {
  CrossSection two_squares;
  for (double x0 : {0.0, 5.0}) {
    const Eigen::Vector3d a(x0, 0, 0), b(x0 + 1, 0, 0), c(x0 + 1, 0, 1),
        d(x0, 0, 1);
    two_squares.segments.push_back({a, b});
    two_squares.segments.push_back({b, c});
    two_squares.segments.push_back({c, d});
    two_squares.segments.push_back({d, a});
  }
  EXPECT_EQ(boundary_length(two_squares), 8.0);
  EXPECT_EQ(boundary_length(CrossSection{}), 0.0);
}

TEST(BoundaryLength, CylinderMatchesInscribedPolygonClosedForm) {
  FixtureSpec spec;
  spec.kind = FixtureKind::kCylinder;
  spec.radial = 64;
  spec.radius = 0.5;
  const Fixture fx = generate(spec);
  const double len = boundary_length(slice_at(fx.mesh, {kUp, 0.5}));
  EXPECT_NEAR(len, 2.0 * 64 * 0.5 * std::sin(M_PI / 64), 1e-12);
  EXPECT_NEAR(len, 3.140331156954753, 1e-12);
  EXPECT_NEAR(len, fx.oracle.chest_perimeter, 1e-12);
}

TEST(BoundaryLength, AgreesWithNaiveClipperOnRandomPlanes) {
  const Fixture fixtures[] = {
      make(FixtureKind::kCylinder, 16), make(FixtureKind::kSphere, 24),
      make(FixtureKind::kHourglass, 20), make(FixtureKind::kHumanoidProxy)};
  std::mt19937_64 rng(48151623);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const Fixture& fx : fixtures) {
    const Aabb box = bounding_box(fx.mesh);
    std::uniform_real_distribution<double> offset(
        box.min.y() - 0.1, box.max.y() + 0.1);
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::Vector3d n(gauss(rng), gauss(rng), gauss(rng));
      if (n.norm() < 1e-3) continue;
      n.normalize();
      const double q = offset(rng);
      const double ours = boundary_length(slice_at(fx.mesh, {n, q}));
      const double naive = naive_section_length(fx.mesh, n, q);
      ASSERT_NEAR(ours, naive, 1e-12);
    }
  }
}

TEST(BoundaryLength, InvariantUnderTranslation) {
  const Fixture fx = make(FixtureKind::kHourglass);
  const Eigen::Vector3d t(0.137, -0.251, 0.089);
  Mesh moved = fx.mesh;
  for (Eigen::Vector3d& v : moved.vertices) v += t;
  for (double q : {0.2, 0.5, 0.8}) {
    const double before = boundary_length(slice_at(fx.mesh, {kUp, q}));
    const double after =
        boundary_length(slice_at(moved, {kUp, q + t.y()}));
    EXPECT_NEAR(before, after, 1e-9);
  }
}

TEST(BoundaryLength, InvariantUnderRotation) {
  const Fixture fx = make(FixtureKind::kSphere, 32);
  const Eigen::Quaterniond rot =
      Eigen::Quaterniond(0.9, 0.2, -0.35, 0.1).normalized();
  Mesh rotated = fx.mesh;
  for (Eigen::Vector3d& v : rotated.vertices) v = rot * v;
  const Eigen::Vector3d n = (rot * kUp).normalized();
  for (double q : {0.3, 0.5, 0.9}) {
    const double before = boundary_length(slice_at(fx.mesh, {kUp, q}));
    const double after = boundary_length(slice_at(rotated, {n, q}));
    EXPECT_NEAR(before, after, 1e-9);
  }
}

TEST(BoundaryLength, ScalesLinearly) {
  const Fixture fx = make(FixtureKind::kHumanoidProxy);
  Mesh doubled = fx.mesh;
  for (Eigen::Vector3d& v : doubled.vertices) v *= 2.0;
  for (double q : {0.15, 0.35, 0.55}) {
    const double base = boundary_length(slice_at(fx.mesh, {kUp, q}));
    const double scaled = boundary_length(slice_at(doubled, {kUp, 2 * q}));
    ASSERT_GT(base, 0.0);
    EXPECT_NEAR(scaled, 2.0 * base, 1e-12 * scaled);
  }
}

TEST(MeshSignature, CylinderWithQuarterStepHasFiveOffsets) {
  const Fixture fx = make(FixtureKind::kCylinder, 32);
  const Signature sig = mesh_signature(fx.mesh, kUp, 0.25);
  ASSERT_EQ(sig.size(), 5u);
  const std::vector<double> expected = {1.0, 0.75, 0.5, 0.25, 0.0};
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_EQ(sig.offsets[i], expected[i]);

  const double wall = 2.0 * 32 * 0.5 * std::sin(M_PI / 32);
  for (std::size_t i = 1; i < 4; ++i)
    EXPECT_NEAR(sig.lengths[i], wall, 1e-9);
}

TEST(MeshSignature, OffsetsDescendStrictlyFromTopToBottom) {
  const Fixture fx = make(FixtureKind::kHumanoidProxy);
  const Aabb box = bounding_box(fx.mesh);
  const Signature sig = mesh_signature(fx.mesh, kUp, 0.01);
  ASSERT_GE(sig.size(), 2u);
  EXPECT_EQ(sig.offsets.front(), box.max.y());
  EXPECT_EQ(sig.offsets.back(), box.min.y());
  for (std::size_t i = 1; i < sig.size(); ++i)
    ASSERT_LT(sig.offsets[i], sig.offsets[i - 1]);
  EXPECT_EQ(sig.lengths.size(), sig.offsets.size());
  EXPECT_EQ(sig.step, 0.01);
}

TEST(MeshSignature, MillimeterStepOnBodySizedMeshCoversTheHeight) {
  const Fixture fx = make(FixtureKind::kHumanoidProxy);
  ASSERT_EQ(fx.mesh.vertices.size(), 6890u);
  const Signature sig = mesh_signature(fx.mesh, kUp, 0.001);
  const double height = bounding_box(fx.mesh).extent().y();
  EXPECT_NEAR(static_cast<double>(sig.size()), height / 0.001 + 1.0, 1.0);
}

TEST(MeshSignature, MatchesSliceAtBitForBit) {
  const Fixture fx = make(FixtureKind::kSphere, 48);
  const Signature sig = mesh_signature(fx.mesh, kUp, 0.01);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const double direct =
        boundary_length(slice_at(fx.mesh, {kUp, sig.offsets[i]}));
    ASSERT_EQ(sig.lengths[i], direct) << "offset " << sig.offsets[i];
  }
}

TEST(MeshSignature, StepLargerThanTheMeshLeavesTheTwoEndpointSlices) {
  const Fixture fx = make(FixtureKind::kCylinder, 8);
  const Signature sig = mesh_signature(fx.mesh, kUp, 10.0);
  ASSERT_EQ(sig.size(), 2u);
  EXPECT_EQ(sig.offsets[0], 1.0);
  EXPECT_EQ(sig.offsets[1], 0.0);
}

TEST(MeshSignature, SphereSignatureIsUnimodal) {
  FixtureSpec spec;
  spec.kind = FixtureKind::kSphere;
  spec.radial = 128;
  spec.radius = 1.0;
  const Fixture fx = generate(spec);
  const Signature sig = mesh_signature(fx.mesh, kUp, 0.01);

  std::size_t peak = 0;
  for (std::size_t i = 1; i < sig.size(); ++i)
    if (sig.lengths[i] > sig.lengths[peak]) peak = i;
  for (std::size_t i = 1; i <= peak; ++i)
    ASSERT_GE(sig.lengths[i], sig.lengths[i - 1]) << "rising flank " << i;
  for (std::size_t i = peak + 1; i < sig.size(); ++i)
    ASSERT_LE(sig.lengths[i], sig.lengths[i - 1]) << "falling flank " << i;

  // Offsets descend, so the geometric equator sits at the peak offset.
  EXPECT_NEAR(sig.offsets[peak], fx.oracle.chest_y, 0.01);
  EXPECT_NEAR(sig.lengths[peak], fx.oracle.chest_perimeter, 1e-3);

  // Both poles taper to a point.
  EXPECT_EQ(sig.lengths.front(), 0.0);
  EXPECT_EQ(sig.lengths.back(), 0.0);
}

TEST(MeshSignature, InvalidStepOrNormalOrMeshThrows) {
  const Mesh cube = unit_cube();
  EXPECT_THROW(mesh_signature(cube, kUp, 0.0), std::invalid_argument);
  EXPECT_THROW(mesh_signature(cube, kUp, -0.1), std::invalid_argument);
  EXPECT_THROW(mesh_signature(cube, {0, 2, 0}, 0.1),
               std::invalid_argument);
  EXPECT_THROW(mesh_signature(Mesh{}, kUp, 0.1), GeometryError);
}

TEST(MeshSignature, RerunsAreBitIdentical) {
  const Fixture fx = make(FixtureKind::kHumanoidProxy);
  const Signature a = mesh_signature(fx.mesh, kUp, 0.005);
  const Signature b = mesh_signature(fx.mesh, kUp, 0.005);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.offsets[i], b.offsets[i]);
    ASSERT_EQ(a.lengths[i], b.lengths[i]);
  }
}
