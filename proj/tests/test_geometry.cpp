#include "beamsolid/geometry.hpp"
#include "beamsolid/hex8.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace beamsolid;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("block mesh: single element") {
  const Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {1, 1, 1});
  CHECK(mesh.node_count() == 8);
  CHECK(mesh.element_count() == 1);
  for (const char* name : {"+x", "-x", "+y", "-y", "+z", "-z"}) {
    REQUIRE(mesh.face_sets.count(name) == 1);
    CHECK(mesh.face_sets.at(name).size() == 1);
  }
}

TEST_CASE("block mesh: counts and face set sizes") {
  const Mesh mesh = build_block_mesh(Vec3(1, 1, 2), {2, 2, 4});
  CHECK(mesh.node_count() == 45);
  CHECK(mesh.element_count() == 16);
  CHECK(mesh.face_sets.at("+z").size() == 4);
  CHECK(mesh.face_sets.at("+x").size() == 8);
}

TEST_CASE("block mesh: positive Jacobians everywhere") {
  const Mesh mesh = build_block_mesh(Vec3(2.0, 0.7, 1.3), {3, 2, 4});
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto coords = element_coords(mesh, e);
    for (const Vec3& xi : hex8::gauss_points()) {
      const auto dn = hex8::shape_gradients(xi);
      Mat3 jac = Mat3::Zero();
      for (int a = 0; a < 8; ++a) jac += coords[a] * dn.row(a);
      CHECK(jac.determinant() > 0.0);
    }
  }
}

TEST_CASE("block mesh: invalid input") {
  CHECK_THROWS_AS(build_block_mesh(Vec3(0, 1, 1), {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_block_mesh(Vec3(1, 1, 1), {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_block_mesh(Vec3(1, 1, -1), {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("mesh validate rejects non-boundary face-set faces") {
  Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {2, 1, 1});
  mesh.face_sets["bad"].push_back({0, 3});  // +x face of element 0 is interior
  CHECK_THROWS_AS(mesh.validate(), GeometryError);
}

TEST_CASE("face orientation: canonical sets point outward") {
  const Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {2, 2, 2});
  const std::map<std::string, Vec3> expected{
      {"+x", Vec3::UnitX()},  {"-x", -Vec3::UnitX()}, {"+y", Vec3::UnitY()},
      {"-y", -Vec3::UnitY()}, {"+z", Vec3::UnitZ()},  {"-z", -Vec3::UnitZ()}};
  for (const auto& [name, normal] : expected) {
    const InterfaceSurface surf = extract_interface(mesh, name);
    for (const auto& qp : surf.quad_points) {
      CHECK((qp.normal - normal).norm() < 1e-14);
    }
  }
}

TEST_CASE("interface: planar unit square") {
  const Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {1, 1, 1});
  const InterfaceSurface surf = extract_interface(mesh, "+z");

  CHECK(surf.area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((surf.centroid - Vec3(0.5, 0.5, 1.0)).norm() < 1e-14);
  CHECK(surf.is_planar);

  const Mat3 expected = Vec3(1.0, 1.0, 2.0).asDiagonal();
  CHECK((surf.J - expected).norm() < 1e-10);
}

TEST_CASE("interface: refinement leaves planar data unchanged") {
  const Mesh coarse = build_block_mesh(Vec3(1, 1, 1), {1, 1, 1});
  const Mesh fine = build_block_mesh(Vec3(1, 1, 1), {2, 2, 2});
  const InterfaceSurface a = extract_interface(coarse, "+z");
  const InterfaceSurface b = extract_interface(fine, "+z");
  CHECK(std::abs(a.area - b.area) < 1e-12);
  CHECK((a.centroid - b.centroid).norm() < 1e-12);
  CHECK((a.J - b.J).norm() < 1e-12);
}

TEST_CASE("interface: 1x2 rectangle scales J by area") {
  const Mesh mesh = build_block_mesh(Vec3(1, 2, 1), {2, 3, 2});
  const InterfaceSurface surf = extract_interface(mesh, "-z");
  CHECK(surf.area == doctest::Approx(2.0).epsilon(1e-14));
  const Mat3 expected = Vec3(2.0, 2.0, 4.0).asDiagonal();
  CHECK((surf.J - expected).norm() < 1e-10);
}

TEST_CASE("interface: duality of tangents") {
  // Distort the mesh so faces are genuinely bilinear.
  Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {3, 3, 3});
  for (auto& x : mesh.nodes) {
    x.z() += 0.1 * std::sin(2.0 * x.x()) * std::cos(1.3 * x.y());
    x.x() += 0.05 * x.y() * x.z();
  }
  const InterfaceSurface surf = extract_interface(mesh, "+z");
  double worst = 0.0;
  for (const auto& qp : surf.quad_points) {
    for (int alpha = 0; alpha < 2; ++alpha) {
      for (int beta = 0; beta < 2; ++beta) {
        const double delta = alpha == beta ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(qp.dual[alpha].dot(qp.tangent[beta]) - delta));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("interface: J matches the brute-force oracle on a sheared planar mesh") {
  // A linear map keeps every face a parallelogram, so the J integrand is
  // constant per face and both quadratures are exact.
  Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {2, 2, 2});
  Mat3 shear;
  shear << 1.0, 0.3, 0.0, 0.0, 1.0, -0.2, 0.1, 0.0, 1.0;
  for (auto& x : mesh.nodes) x = shear * x;
  mesh.validate();

  const InterfaceSurface surf = extract_interface(mesh, "+z");
  CHECK(surf.is_planar);

  const Mat3 reference = oracles::brute_force_J(mesh, "+z", 16);
  CHECK((surf.J - reference).norm() < 1e-8 * reference.norm());
  CHECK((surf.J - surf.J.transpose()).norm() < 1e-12 * surf.J.norm());
  Eigen::SelfAdjointEigenSolver<Mat3> eig(surf.J);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("interface: warped-surface J converges to the oracle under refinement") {
  // With bilinear (non-affine) faces both the 2x2 Gauss rule and the
  // midpoint oracle carry quadrature error; the discrepancy must vanish as
  // the faces flatten under mesh refinement.
  auto warped_error = [](int divisions) {
    Mesh mesh = build_block_mesh(Vec3(1, 1, 1),
                                 {divisions, divisions, divisions});
    for (auto& x : mesh.nodes) {
      x.z() += 0.15 * std::sin(3.0 * x.x() + 0.4) * std::sin(2.0 * x.y());
    }
    mesh.validate();
    const InterfaceSurface surf = extract_interface(mesh, "+z");
    CHECK_FALSE(surf.is_planar);
    CHECK((surf.J - surf.J.transpose()).norm() < 1e-12 * surf.J.norm());
    Eigen::SelfAdjointEigenSolver<Mat3> eig(surf.J);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    const Mat3 reference = oracles::brute_force_J(mesh, "+z", 16);
    return (surf.J - reference).norm() / reference.norm();
  };

  const double e2 = warped_error(2);
  const double e4 = warped_error(4);
  const double e8 = warped_error(8);
  CHECK(e4 < 0.5 * e2);
  CHECK(e8 < 0.5 * e4);
  CHECK(e8 < 1e-5);
}

TEST_CASE("interface: missing and empty face sets") {
  Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {1, 1, 1});
  CHECK_THROWS_AS(extract_interface(mesh, "nope"), GeometryError);
  mesh.face_sets["hollow"] = {};
  CHECK_THROWS_AS(extract_interface(mesh, "hollow"), GeometryError);
}

TEST_CASE("interface: degenerate face") {
  Mesh mesh = build_block_mesh(Vec3(1, 1, 1), {1, 1, 1});
  // Collapse the top face to a line.
  mesh.nodes[6] = mesh.nodes[4];
  mesh.nodes[7] = mesh.nodes[4];
  mesh.nodes[5] = mesh.nodes[4];
  CHECK_THROWS_AS(extract_interface(mesh, "+z"), GeometryError);
}

TEST_CASE("beam: node arclengths") {
  BeamSection section{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

  const BeamModel one = build_beam(1.0, 1, Vec3::Zero(), Vec3::UnitZ(), section);
  REQUIRE(one.node_count() == 2);
  CHECK(one.node_arclength[0] == 0.0);
  CHECK(one.node_arclength[1] == 1.0);

  const BeamModel four = build_beam(2.0, 4, Vec3::Zero(), Vec3::UnitZ(), section);
  REQUIRE(four.node_count() == 5);
  for (int i = 0; i <= 4; ++i) {
    CHECK(four.node_arclength[i] == doctest::Approx(0.5 * i).epsilon(1e-15));
  }
  CHECK(four.node_arclength.front() == four.clamped_end());
  CHECK(four.node_arclength.back() == four.tip_end());
  for (int i = 1; i <= 4; ++i) {
    CHECK(four.node_arclength[i] > four.node_arclength[i - 1]);
  }
}

TEST_CASE("beam: reference rotation maps e3 to the axis") {
  BeamSection section{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  for (const Vec3& axis : {Vec3(Vec3::UnitZ()), Vec3(-Vec3::UnitZ()), Vec3(0.6, 0.0, 0.8)}) {
    const BeamModel beam = build_beam(1.0, 2, Vec3::Zero(), axis, section);
    CHECK((beam.reference_rotation.col(2) - axis).norm() < 1e-14);
    CHECK(std::abs(beam.reference_rotation.determinant() - 1.0) < 1e-13);
    CHECK((beam.reference_rotation * beam.reference_rotation.transpose() -
           Mat3::Identity())
              .norm() < 1e-13);
  }
}

TEST_CASE("beam: invalid input") {
  BeamSection section{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(build_beam(0.0, 1, Vec3::Zero(), Vec3::UnitZ(), section),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_beam(1.0, 0, Vec3::Zero(), Vec3::UnitZ(), section),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_beam(1.0, 1, Vec3::Zero(), Vec3(0, 0, 1.001), section),
                  std::invalid_argument);
  BeamSection bad = section;
  bad.A = 0.0;
  CHECK_THROWS_AS(build_beam(1.0, 1, Vec3::Zero(), Vec3::UnitZ(), bad),
                  std::invalid_argument);
}

TEST_SUITE_END();
