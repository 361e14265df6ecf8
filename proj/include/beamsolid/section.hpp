#pragma once

#include <stdexcept>

namespace beamsolid {

/// Cross-section constitution of a shear-deformable beam.
/// Shear stiffness diag(G*A1, G*A2, E*A), bending/torsion diag(E*I1, E*I2, G*It),
/// components in the section principal frame (1, 2, axis).
struct BeamSection {
  double E = 0.0;   // Young's modulus
  double G = 0.0;   // shear modulus
  double A = 0.0;   // area
  double A1 = 0.0;  // shear-reduced area, principal direction 1
  double A2 = 0.0;  // shear-reduced area, principal direction 2
  double I1 = 0.0;  // principal moment of inertia 1
  double I2 = 0.0;  // principal moment of inertia 2
  double It = 0.0;  // torsional inertia

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) {
        throw std::invalid_argument(std::string("beam section: ") + name +
                                    " must be positive");
      }
    };
    positive(E, "E");
    positive(G, "G");
    positive(A, "A");
    positive(A1, "A1");
    positive(A2, "A2");
    positive(I1, "I1");
    positive(I2, "I2");
    positive(It, "It");
  }
};

}  // namespace beamsolid
