#pragma once

#include "beamsolid/section.hpp"
#include "beamsolid/types.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace beamsolid {

/// One face of one element: (element index, local face index 0..5).
struct FaceRef {
  int element = -1;
  int local_face = -1;

  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

/// Hexahedral mesh with named boundary face sets.
struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> elements;
  std::map<std::string, std::vector<FaceRef>> face_sets;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }

  /// Checks connectivity bounds, Jacobian positivity at all quadrature
  /// points, and that face-set faces lie on the boundary.
  void validate() const;
};

/// Global node ids of a face, in outward-oriented order.
std::array<int, 4> face_nodes(const Mesh& mesh, const FaceRef& face);

std::array<Vec3, 8> element_coords(const Mesh& mesh, int element);

/// Structured hex8 mesh of an axis-aligned box anchored at the origin,
/// with the six canonical face sets "+x", "-x", ..., "-z".
Mesh build_block_mesh(const Vec3& dimensions, const std::array<int, 3>& divisions);

/// Straight cantilever discretization. Arclength s = 0 is the clamped end,
/// s = length the (coupled) tip.
struct BeamModel {
  double length = 0.0;
  int n_elements = 0;
  Vec3 axis_origin = Vec3::Zero();
  Vec3 axis_direction = Vec3::UnitZ();
  BeamSection section;
  std::vector<double> node_arclength;
  Mat3 reference_rotation = Mat3::Identity();  // maps e3 to axis_direction

  int node_count() const { return n_elements + 1; }
  double element_length() const { return length / n_elements; }
  double clamped_end() const { return 0.0; }
  double tip_end() const { return length; }
  Vec3 node_position(int i) const {
    return axis_origin + node_arclength[i] * axis_direction;
  }
};

/// Equally spaced 2-node elements along a straight axis. The reference
/// rotation maps e3 to the axis direction; section_direction_1, when given,
/// fixes the first principal direction (must be unit and orthogonal to the
/// axis), otherwise a deterministic completion is used.
BeamModel build_beam(double length, int n_elements, const Vec3& axis_origin,
                     const Vec3& axis_direction, const BeamSection& section,
                     const Vec3* section_direction_1 = nullptr);

/// Interface surface with per-quadrature-point differential geometry.
struct InterfaceSurface {
  struct QuadPoint {
    std::array<int, 4> nodes;            // global node ids of the face
    Eigen::Matrix<double, 4, 1> shape;   // N_a at the point
    Eigen::Matrix<double, 4, 2> dshape;  // dN_a/dxi^alpha
    Vec3 x;                              // position
    Vec3 tangent[2];                     // covariant T_alpha
    Vec3 dual[2];                        // contravariant T^alpha
    Vec3 normal;                         // unit normal, outward
    double dA = 0.0;                     // area weight
  };

  std::vector<FaceRef> faces;
  std::vector<QuadPoint> quad_points;
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  Mat3 J = Mat3::Zero();  // integral of (2 I - T^alpha x T_alpha)
  bool is_planar = false;

  /// Set of distinct global node ids touched by the surface.
  std::vector<int> node_ids() const;
};

/// Builds the interface data for a named face set with 2x2 Gauss quadrature
/// per face. Throws GeometryError for a missing/empty set or degenerate face.
InterfaceSurface extract_interface(const Mesh& mesh, const std::string& face_set);

}  // namespace beamsolid
