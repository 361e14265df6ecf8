#pragma once

#include "beamsolid/types.hpp"

#include <string>

namespace beamsolid {
namespace matrix_market {

/// Writes the lower triangle of a symmetric sparse matrix in coordinate
/// format, full round-trip precision.
void write_coordinate_symmetric(const SpMat& a, const std::string& path,
                                const std::string& comment = {});

/// Writes a general sparse matrix in coordinate format.
void write_coordinate(const SpMat& a, const std::string& path,
                      const std::string& comment = {});

/// Writes a dense vector as an array-format file.
void write_array(const VecX& v, const std::string& path);

/// Reads a coordinate-format file; symmetric storage is expanded.
SpMat read_coordinate(const std::string& path);

VecX read_array(const std::string& path);

}  // namespace matrix_market
}  // namespace beamsolid
