#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "../oracle/oracle.hpp"
#include "../support.hpp"
#include "vwc/geometry/closest_pair.hpp"
#include "vwc/geometry/contact.hpp"
#include "vwc/geometry/mesh_io.hpp"
#include "vwc/geometry/triangle_distance.hpp"

using namespace vwc;

namespace {

constexpr double kPi = std::numbers::pi;

TriMesh unit_cube() { return TriMesh::box(Vec3::Zero(), Vec3::Ones()); }

void expect_pose_near(const Pose& a, const Pose& b, double tol) {
  EXPECT_LT((a.position - b.position).norm(), tol);
  EXPECT_LT(angular_distance(a.orientation, b.orientation), tol);
}

}  // namespace

TEST(Pose, ComposeIdentityAndInverse) {
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Pose p = oracle::random_pose(rng, 500.0);
    expect_pose_near(compose(Pose::identity(), p), p, 1e-12);
    expect_pose_near(compose(p, inverse(p)), Pose::identity(), 1e-9);
    EXPECT_NEAR(compose(p, p).orientation.norm(), 1.0, 1e-9);
  }
}

TEST(Pose, RotationThenTranslationMatchesHomogeneousProduct) {
  const Pose rz = Pose::rotation(axis_angle(Vec3::UnitZ(), kPi / 2));
  const Pose tx = Pose::translation(Vec3(1, 0, 0));
  const Pose c = compose(rz, tx);
  const oracle::Mat4 h = oracle::homogeneous(rz) * oracle::homogeneous(tx);
  EXPECT_LT((c.position - Vec3(0, 1, 0)).norm(), 1e-12);
  EXPECT_LT((c.position - h.block<3, 1>(0, 3)).norm(), 1e-12);
  EXPECT_LT((c.rotation_matrix() - h.block<3, 3>(0, 0)).norm(), 1e-12);
  EXPECT_LT(angular_distance(c.orientation, rz.orientation), 1e-12);
}

TEST(Pose, CompositionIsAssociative) {
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Pose a = oracle::random_pose(rng, 300), b = oracle::random_pose(rng, 300),
               c = oracle::random_pose(rng, 300);
    expect_pose_near(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-9);
  }
}

TEST(TriMesh, RejectsBadIndicesAndDegenerateTriangles) {
  EXPECT_THROW(TriMesh({Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY()}, {{0, 1, 3}}), GeometryError);
  EXPECT_THROW(TriMesh({Vec3::Zero(), Vec3::UnitX(), Vec3(2, 0, 0)}, {{0, 1, 2}}), GeometryError);
}

TEST(TriMesh, BoxIsClosedWithOutwardNormals) {
  const TriMesh b = unit_cube();
  EXPECT_EQ(b.triangle_count(), 12u);
  EXPECT_TRUE(b.closed());
  const Vec3 c = b.vertex_centroid();
  for (std::size_t i = 0; i < b.triangle_count(); ++i) {
    const Triangle t = b.triangle(i);
    const Vec3 n = (t.b - t.a).cross(t.c - t.a);
    EXPECT_GT(n.dot((t.a + t.b + t.c) / 3.0 - c), 0.0);
  }
}

TEST(MeshIo, ParsesAsciiStlAndMergesVertices) {
  std::istringstream in(
      "solid t\n"
      " facet normal 0 0 1\n  outer loop\n   vertex 0 0 0\n   vertex 1 0 0\n   vertex 0 1 0\n"
      "  endloop\n endfacet\n"
      " facet normal 0 0 1\n  outer loop\n   vertex 1 0 0\n   vertex 1 1 0\n   vertex 0 1 0\n"
      "  endloop\n endfacet\nendsolid t\n");
  const TriMesh m = read_stl_ascii(in);
  EXPECT_EQ(m.triangle_count(), 2u);
  EXPECT_EQ(m.vertices().size(), 4u);
  EXPECT_FALSE(m.closed());
}

TEST(MeshIo, ObjQuadsAreRejected) {
  std::istringstream tri("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3\nf 2/1 4/2 3/3\n");
  EXPECT_EQ(read_obj(tri).triangle_count(), 2u);
  std::istringstream quad("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  EXPECT_THROW(read_obj(quad), GeometryError);
}

TEST(MeshIo, ErrorsNameTheFile) {
  try {
    load_mesh("/nonexistent/part.stl");
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_NE(std::string(e.what()).find("part.stl"), std::string::npos);
  }
  const auto dir = testing_support::temp_dir("meshio");
  std::ofstream(dir / "x.ply") << "ply\n";
  EXPECT_THROW(load_mesh(dir / "x.ply"), GeometryError);
}

TEST(MeshIo, ShippedMeshesAreClosed) {
  EXPECT_TRUE(load_mesh(testing_support::data("meshes/cube.stl")).closed());
  EXPECT_TRUE(load_mesh(testing_support::data("meshes/prism.obj")).closed());
}

TEST(ClosestPair, CubeExamples) {
  const TriMesh c = unit_cube();
  const Witness apart = closest_pair(c, Pose::identity(), c, Pose::translation(Vec3(1.5, 0, 0)));
  EXPECT_NEAR(apart.distance, 0.5, 1e-12);
  EXPECT_NEAR(apart.distance, (apart.point_a - apart.point_b).norm(), 1e-9);
  EXPECT_NEAR(apart.point_a.x(), 1.0, 1e-12);
  EXPECT_NEAR(apart.point_b.x(), 1.5, 1e-12);

  const Witness overlap = closest_pair(c, Pose::identity(), c, Pose::translation(Vec3(0.5, 0, 0)));
  EXPECT_EQ(overlap.distance, 0.0);
  EXPECT_EQ(overlap.point_a, overlap.point_b);

  EXPECT_EQ(closest_pair(c, Pose::identity(), c, Pose::identity()).distance, 0.0);
}

TEST(ClosestPair, ContainmentIsZero) {
  const TriMesh outer = TriMesh::box(Vec3::Constant(-10), Vec3::Constant(10));
  const TriMesh inner = unit_cube();
  EXPECT_EQ(closest_pair(outer, Pose::identity(), inner, Pose::identity()).distance, 0.0);
  EXPECT_EQ(closest_pair(inner, Pose::identity(), outer, Pose::identity()).distance, 0.0);
  EXPECT_EQ(closest_pair_exhaustive(inner, Pose::identity(), outer, Pose::identity()).distance, 0.0);
  EXPECT_TRUE(contains_point(outer, Vec3(9.9, -9.9, 0)));
  EXPECT_FALSE(contains_point(outer, Vec3(10.1, 0, 0)));
}

TEST(ClosestPair, EmptyGeometryThrows) {
  const TriMesh empty;
  try {
    closest_pair(empty, Pose::identity(), unit_cube(), Pose::identity());
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_STREQ(e.what(), "empty geometry");
  }
  EXPECT_THROW(closest_pair_exhaustive(unit_cube(), Pose::identity(), empty, Pose::identity()),
               GeometryError);
}

TEST(ClosestPair, MatchesOracleOnRandomPairs) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int i = 0; i < 12; ++i) {
    const TriMesh a = kind(rng) == 0 ? oracle::random_soup(rng, 40, 30.0)
                                     : oracle::random_blob(rng, 6, 10, 25.0, 0.3);
    const TriMesh b = oracle::random_blob(rng, 5, 8, 20.0, 0.3);
    const Pose pa = oracle::random_pose(rng, 40.0);
    const Pose pb = oracle::random_pose(rng, 40.0);
    const Witness w = closest_pair(a, pa, b, pb);
    const double ref = oracle::mesh_distance(a, pa, b, pb);
    if (ref == 0.0) {
      EXPECT_EQ(w.distance, 0.0) << i;
    } else {
      EXPECT_NEAR(w.distance, ref, 1e-9) << i;
      EXPECT_NEAR(w.distance, (w.point_a - w.point_b).norm(), 1e-9);
    }
  }
}

TEST(ClosestPair, SymmetricAndTranslationInvariant) {
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i) {
    const TriMesh a = oracle::random_blob(rng, 6, 9, 20.0, 0.2);
    const TriMesh b = oracle::random_blob(rng, 6, 9, 15.0, 0.2);
    const Pose pa = oracle::random_pose(rng, 60.0), pb = oracle::random_pose(rng, 60.0);
    const double ab = closest_pair(a, pa, b, pb).distance;
    EXPECT_NEAR(ab, closest_pair(b, pb, a, pa).distance, 1e-9);
    const Pose g = oracle::random_pose(rng, 1000.0);
    EXPECT_NEAR(ab, closest_pair(a, compose(g, pa), b, compose(g, pb)).distance, 1e-6);
  }
}

TEST(ClosestPair, ParallelKernelsMatchSerialBitForBit) {
  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    const TriMesh a = oracle::random_blob(rng, 8, 12, 20.0, 0.3);
    const TriMesh b = oracle::random_soup(rng, 60, 40.0);
    const Pose pa = oracle::random_pose(rng, 50.0), pb = oracle::random_pose(rng, 50.0);
    const Witness s = closest_pair_exhaustive_serial(a, pa, b, pb);
    const Witness p = closest_pair_exhaustive(a, pa, b, pb);
    EXPECT_EQ(s.distance, p.distance);
    EXPECT_EQ(s.point_a, p.point_a);
    EXPECT_EQ(s.point_b, p.point_b);
    EXPECT_NEAR(closest_pair(a, pa, b, pb).distance, s.distance, 1e-9);
  }
}

TEST(ClosestPair, PairSetMinimumMatchesSerial) {
  std::mt19937 rng(10);
  std::vector<Shape> shapes;
  for (int i = 0; i < 6; ++i) shapes.emplace_back(oracle::random_blob(rng, 5, 8, 10.0, 0.2));
  std::vector<ShapePair> pairs;
  for (int i = 0; i < 5; ++i) {
    pairs.push_back({{&shapes[0], oracle::random_pose(rng, 80.0)},
                     {&shapes[static_cast<std::size_t>(i + 1)], oracle::random_pose(rng, 80.0)}});
  }
  const auto par = min_witness(pairs);
  const auto ser = min_witness_serial(pairs);
  EXPECT_TRUE(par.any);
  EXPECT_EQ(par.queries, 5u);
  EXPECT_EQ(par.pair_index, ser.pair_index);
  EXPECT_EQ(par.witness.distance, ser.witness.distance);
  EXPECT_FALSE(min_witness(std::span<const ShapePair>{}).any);
}

TEST(TriangleDistance, MatchesOracleOnRandomTriangles) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rv = [&] { return Vec3(u(rng), u(rng), u(rng)); };
  int zeros = 0;
  for (int i = 0; i < 5000; ++i) {
    const Triangle t{rv(), rv(), rv()};
    const Triangle s{rv(), rv(), rv()};
    const double ref = oracle::triangle_triangle({t.a, t.b, t.c}, {s.a, s.b, s.c});
    const auto r = triangle_distance(t, s);
    if (ref == 0.0) {
      ++zeros;
      EXPECT_EQ(r.distance, 0.0) << i;
    } else {
      EXPECT_NEAR(r.distance, ref, 1e-9) << i;
    }
  }
  EXPECT_GT(zeros, 100);
}

TEST(TriangleDistance, ClosestPointOnTriangleAgreesWithOracle) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rv = [&] { return Vec3(u(rng), u(rng), u(rng)); };
  for (int i = 0; i < 5000; ++i) {
    const Vec3 a = rv(), b = rv(), c = rv(), p = rv();
    EXPECT_NEAR((closest_point_on_triangle(p, a, b, c) - p).norm(),
                oracle::point_triangle(p, a, b, c), 1e-9);
  }
}

TEST(Contact, Examples) {
  Witness far{Vec3(10, 0, 0), Vec3::Zero(), 10.0};
  EXPECT_FALSE(contact_estimate(far, 5.0, Vec3::UnitZ()));

  Witness near{Vec3(3, 0, 0), Vec3(1, 0, 0), 2.0};
  const auto c = contact_estimate(near, 5.0, Vec3::UnitZ());
  ASSERT_TRUE(c);
  EXPECT_LT((c->normal - Vec3(1, 0, 0)).norm(), 1e-12);
  EXPECT_NEAR(c->depth, 3.0, 1e-12);
  EXPECT_LT((c->point - Vec3(2, 0, 0)).norm(), 1e-12);

  Witness touch{Vec3::Ones(), Vec3::Ones(), 0.0};
  const auto z = contact_estimate(touch, 5.0, Vec3::UnitZ());
  ASSERT_TRUE(z);
  EXPECT_EQ(z->normal, Vec3::UnitZ());
  EXPECT_EQ(z->depth, 5.0);
}

TEST(Contact, RejectsBadArguments) {
  Witness w{Vec3::Zero(), Vec3::Zero(), 0.0};
  EXPECT_THROW(contact_estimate(w, 5.0, Vec3(0, 0, 2)), GeometryError);
  EXPECT_THROW(contact_estimate(w, 0.0, Vec3::UnitZ()), GeometryError);
}

TEST(Contact, DepthGrowsAsDistanceShrinks) {
  double prev = -1.0;
  for (double d = 4.9; d > 0.0; d -= 0.1) {
    const Witness w{Vec3(d, 0, 0), Vec3::Zero(), d};
    const auto c = contact_estimate(w, 5.0, Vec3::UnitZ());
    ASSERT_TRUE(c);
    EXPECT_GT(c->depth, prev);
    EXPECT_NEAR(c->normal.norm(), 1.0, 1e-9);
    EXPECT_GE(c->depth, 0.0);
    EXPECT_LE(c->depth, 5.0);
    prev = c->depth;
  }
}
