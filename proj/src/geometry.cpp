#include "beamsolid/geometry.hpp"

#include "beamsolid/hex8.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace beamsolid {

namespace {

std::array<int, 4> sorted_key(const std::array<int, 4>& nodes) {
  std::array<int, 4> key = nodes;
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

void Mesh::validate() const {
  const int n_nodes = node_count();
  for (const auto& elem : elements) {
    for (int a : elem) {
      if (a < 0 || a >= n_nodes) {
        throw GeometryError("mesh: connectivity index out of range");
      }
    }
  }

  for (int e = 0; e < element_count(); ++e) {
    const auto coords = element_coords(*this, e);
    for (const Vec3& xi : hex8::gauss_points()) {
      const auto dn = hex8::shape_gradients(xi);
      Mat3 jac = Mat3::Zero();
      for (int a = 0; a < 8; ++a) {
        jac += coords[a] * dn.row(a);
      }
      if (!(jac.determinant() > 0.0)) {
        std::ostringstream msg;
        msg << "mesh: non-positive Jacobian in element " << e;
        throw GeometryError(msg.str());
      }
    }
  }

  // Each boundary face must belong to exactly one element.
  std::map<std::array<int, 4>, int> face_count;
  for (int e = 0; e < element_count(); ++e) {
    for (int f = 0; f < 6; ++f) {
      ++face_count[sorted_key(face_nodes(*this, {e, f}))];
    }
  }
  for (const auto& [name, faces] : face_sets) {
    for (const auto& face : faces) {
      if (face.element < 0 || face.element >= element_count() ||
          face.local_face < 0 || face.local_face >= 6) {
        throw GeometryError("mesh: face set '" + name + "' has an invalid face");
      }
      if (face_count.at(sorted_key(face_nodes(*this, face))) != 1) {
        throw GeometryError("mesh: face set '" + name +
                            "' contains a non-boundary face");
      }
    }
  }
}

std::array<int, 4> face_nodes(const Mesh& mesh, const FaceRef& face) {
  const auto& elem = mesh.elements[face.element];
  const auto& local = hex8::kFaceNodes[face.local_face];
  return {elem[local[0]], elem[local[1]], elem[local[2]], elem[local[3]]};
}

std::array<Vec3, 8> element_coords(const Mesh& mesh, int element) {
  std::array<Vec3, 8> coords;
  for (int a = 0; a < 8; ++a) {
    coords[a] = mesh.nodes[mesh.elements[element][a]];
  }
  return coords;
}

Mesh build_block_mesh(const Vec3& dimensions, const std::array<int, 3>& divisions) {
  for (int d = 0; d < 3; ++d) {
    if (!(dimensions[d] > 0.0)) {
      throw std::invalid_argument("build_block_mesh: dimensions must be positive");
    }
    if (divisions[d] < 1) {
      throw std::invalid_argument("build_block_mesh: divisions must be positive");
    }
  }

  const int nx = divisions[0], ny = divisions[1], nz = divisions[2];
  Mesh mesh;
  mesh.nodes.reserve((nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        mesh.nodes.emplace_back(dimensions.x() * i / nx, dimensions.y() * j / ny,
                                dimensions.z() * k / nz);
      }
    }
  }

  auto node_id = [&](int i, int j, int k) {
    return i + (nx + 1) * (j + (ny + 1) * k);
  };

  mesh.elements.reserve(nx * ny * nz);
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        mesh.elements.push_back({node_id(i, j, k), node_id(i + 1, j, k),
                                 node_id(i + 1, j + 1, k), node_id(i, j + 1, k),
                                 node_id(i, j, k + 1), node_id(i + 1, j, k + 1),
                                 node_id(i + 1, j + 1, k + 1),
                                 node_id(i, j + 1, k + 1)});
      }
    }
  }

  auto element_id = [&](int i, int j, int k) { return i + nx * (j + ny * k); };

  // Local face order in hex8::kFaceNodes: -z, +z, -y, +x, +y, -x.
  auto& sets = mesh.face_sets;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int e = element_id(i, j, k);
        if (k == 0) sets["-z"].push_back({e, 0});
        if (k == nz - 1) sets["+z"].push_back({e, 1});
        if (j == 0) sets["-y"].push_back({e, 2});
        if (i == nx - 1) sets["+x"].push_back({e, 3});
        if (j == ny - 1) sets["+y"].push_back({e, 4});
        if (i == 0) sets["-x"].push_back({e, 5});
      }
    }
  }

  mesh.validate();
  return mesh;
}

BeamModel build_beam(double length, int n_elements, const Vec3& axis_origin,
                     const Vec3& axis_direction, const BeamSection& section,
                     const Vec3* section_direction_1) {
  if (!(length > 0.0)) {
    throw std::invalid_argument("build_beam: length must be positive");
  }
  if (n_elements < 1) {
    throw std::invalid_argument("build_beam: element count must be positive");
  }
  if (std::abs(axis_direction.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("build_beam: axis direction must be unit norm");
  }
  section.validate();

  BeamModel beam;
  beam.length = length;
  beam.n_elements = n_elements;
  beam.axis_origin = axis_origin;
  beam.axis_direction = axis_direction.normalized();
  beam.section = section;
  beam.node_arclength.resize(n_elements + 1);
  for (int i = 0; i <= n_elements; ++i) {
    beam.node_arclength[i] = length * i / n_elements;
  }

  if (section_direction_1 != nullptr) {
    const Vec3& d1 = *section_direction_1;
    if (std::abs(d1.norm() - 1.0) > 1e-12 ||
        std::abs(d1.dot(beam.axis_direction)) > 1e-12) {
      throw std::invalid_argument(
          "build_beam: section direction must be unit and orthogonal to the axis");
    }
    beam.reference_rotation.col(0) = d1;
    beam.reference_rotation.col(1) = beam.axis_direction.cross(d1);
    beam.reference_rotation.col(2) = beam.axis_direction;
  } else {
    beam.reference_rotation = axis_frame(beam.axis_direction);
  }
  return beam;
}

std::vector<int> InterfaceSurface::node_ids() const {
  std::set<int> ids;
  for (const auto& qp : quad_points) {
    ids.insert(qp.nodes.begin(), qp.nodes.end());
  }
  return {ids.begin(), ids.end()};
}

InterfaceSurface extract_interface(const Mesh& mesh, const std::string& face_set) {
  const auto it = mesh.face_sets.find(face_set);
  if (it == mesh.face_sets.end() || it->second.empty()) {
    throw GeometryError("extract_interface: face set '" + face_set +
                        "' is missing or empty");
  }

  InterfaceSurface surf;
  surf.faces = it->second;

  const double g = hex8::kGauss;
  const std::array<std::array<double, 2>, 4> qp_coords{
      {{-g, -g}, {g, -g}, {g, g}, {-g, g}}};

  Vec3 centroid_sum = Vec3::Zero();
  for (const auto& face : surf.faces) {
    const auto nodes = face_nodes(mesh, face);
    std::array<Vec3, 4> coords;
    for (int i = 0; i < 4; ++i) coords[i] = mesh.nodes[nodes[i]];

    for (const auto& [a, b] : qp_coords) {
      InterfaceSurface::QuadPoint qp;
      qp.nodes = nodes;
      qp.shape = hex8::face_shape(a, b);
      qp.dshape = hex8::face_shape_gradients(a, b);

      qp.x = Vec3::Zero();
      qp.tangent[0] = qp.tangent[1] = Vec3::Zero();
      for (int i = 0; i < 4; ++i) {
        qp.x += qp.shape[i] * coords[i];
        qp.tangent[0] += qp.dshape(i, 0) * coords[i];
        qp.tangent[1] += qp.dshape(i, 1) * coords[i];
      }

      Eigen::Matrix2d metric;
      metric << qp.tangent[0].dot(qp.tangent[0]), qp.tangent[0].dot(qp.tangent[1]),
          qp.tangent[1].dot(qp.tangent[0]), qp.tangent[1].dot(qp.tangent[1]);
      const double det = metric.determinant();
      const double scale = metric(0, 0) + metric(1, 1);
      if (!(det > 1e-24 * scale * scale)) {
        throw GeometryError("extract_interface: degenerate face metric");
      }
      const Eigen::Matrix2d inv_metric = metric.inverse();
      for (int alpha = 0; alpha < 2; ++alpha) {
        qp.dual[alpha] = inv_metric(alpha, 0) * qp.tangent[0] +
                         inv_metric(alpha, 1) * qp.tangent[1];
      }
      qp.normal = qp.tangent[0].cross(qp.tangent[1]).normalized();
      qp.dA = std::sqrt(det);  // unit Gauss weight

      surf.area += qp.dA;
      centroid_sum += qp.x * qp.dA;
      const Mat3 tangential_projector =
          qp.dual[0] * qp.tangent[0].transpose() +
          qp.dual[1] * qp.tangent[1].transpose();
      surf.J += (2.0 * Mat3::Identity() - tangential_projector) * qp.dA;

      surf.quad_points.push_back(qp);
    }
  }

  surf.centroid = centroid_sum / surf.area;
  surf.is_planar = true;
  const Vec3 n0 = surf.quad_points.front().normal;
  for (const auto& qp : surf.quad_points) {
    if (qp.normal.cross(n0).norm() > 1e-8) {
      surf.is_planar = false;
      break;
    }
  }
  return surf;
}

}  // namespace beamsolid
