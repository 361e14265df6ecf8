#include "beamsolid/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace beamsolid {
namespace matrix_market {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_coordinate_impl(const SpMat& a, const std::string& path,
                           const std::string& comment, bool symmetric) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("matrix_market: cannot open '" + path + "' for writing");
  }
  out << "%%MatrixMarket matrix coordinate real "
      << (symmetric ? "symmetric" : "general") << "\n";
  if (!comment.empty()) out << "% " << comment << "\n";

  std::vector<std::string> lines;
  for (int c = 0; c < a.outerSize(); ++c) {
    for (SpMat::InnerIterator it(a, c); it; ++it) {
      if (symmetric && it.row() < it.col()) continue;
      std::ostringstream line;
      line << (it.row() + 1) << ' ' << (it.col() + 1) << ' '
           << format_value(it.value());
      lines.push_back(line.str());
    }
  }
  out << a.rows() << ' ' << a.cols() << ' ' << lines.size() << "\n";
  for (const auto& line : lines) out << line << "\n";
  if (!out) {
    throw std::runtime_error("matrix_market: write to '" + path + "' failed");
  }
}

}  // namespace

void write_coordinate_symmetric(const SpMat& a, const std::string& path,
                                const std::string& comment) {
  write_coordinate_impl(a, path, comment, true);
}

void write_coordinate(const SpMat& a, const std::string& path,
                      const std::string& comment) {
  write_coordinate_impl(a, path, comment, false);
}

void write_array(const VecX& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("matrix_market: cannot open '" + path + "' for writing");
  }
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << format_value(v[i]) << "\n";
  }
  if (!out) {
    throw std::runtime_error("matrix_market: write to '" + path + "' failed");
  }
}

SpMat read_coordinate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("matrix_market: cannot open '" + path + "'");
  }
  std::string header;
  std::getline(in, header);
  if (header.find("%%MatrixMarket") != 0 ||
      header.find("coordinate") == std::string::npos) {
    throw std::runtime_error("matrix_market: '" + path +
                             "' is not a coordinate-format file");
  }
  const bool symmetric = header.find("symmetric") != std::string::npos;
  while (in.peek() == '%') in.ignore(1 << 20, '\n');

  Eigen::Index rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  std::vector<Triplet> trips;
  trips.reserve(symmetric ? 2 * nnz : nnz);
  for (Eigen::Index k = 0; k < nnz; ++k) {
    Eigen::Index i = 0, j = 0;
    double v = 0.0;
    in >> i >> j >> v;
    trips.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) trips.emplace_back(j - 1, i - 1, v);
  }
  if (!in) {
    throw std::runtime_error("matrix_market: truncated file '" + path + "'");
  }
  SpMat a(rows, cols);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

VecX read_array(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("matrix_market: cannot open '" + path + "'");
  }
  std::string header;
  std::getline(in, header);
  if (header.find("%%MatrixMarket") != 0 ||
      header.find("array") == std::string::npos) {
    throw std::runtime_error("matrix_market: '" + path +
                             "' is not an array-format file");
  }
  while (in.peek() == '%') in.ignore(1 << 20, '\n');
  Eigen::Index rows = 0, cols = 0;
  in >> rows >> cols;
  if (cols != 1) {
    throw std::runtime_error("matrix_market: expected a single-column array");
  }
  VecX v(rows);
  for (Eigen::Index i = 0; i < rows; ++i) in >> v[i];
  if (!in) {
    throw std::runtime_error("matrix_market: truncated file '" + path + "'");
  }
  return v;
}

}  // namespace matrix_market
}  // namespace beamsolid
