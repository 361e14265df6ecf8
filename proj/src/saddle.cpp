#include "beamsolid/saddle.hpp"

#include "beamsolid/matrix_market.hpp"

#include <Eigen/SparseLU>
#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace beamsolid {

SaddleSystem assemble_system(const Mesh& mesh, const BeamModel& beam,
                             const InterfaceSurface& surface,
                             const SolidMaterial& material,
                             const SolidLoads& solid_loads,
                             const BeamLoads& beam_loads,
                             double characteristic_length,
                             const std::string& interface_face_set,
                             bool parallel) {
  if (!(characteristic_length > 0.0)) {
    throw std::invalid_argument("assemble_system: characteristic length must be positive");
  }

  SaddleSystem sys;
  sys.layout.n_solid_nodes = mesh.node_count();
  sys.layout.n_beam_nodes = beam.node_count();
  const int n_solid = sys.layout.solid_dofs();
  const int n_primal = sys.layout.primal_dofs();

  for (const auto& qp : surface.quad_points) {
    for (int node : qp.nodes) {
      if (node < 0 || node >= mesh.node_count()) {
        throw ConfigError("assemble_system: interface references unknown nodes");
      }
    }
  }

  const SpMat k_solid = assemble_solid(mesh, material, parallel);
  const SpMat k_beam = assemble_beam(beam);

  auto offset_merge = [n_primal](const SpMat& a, const SpMat& b, int offset) {
    std::vector<Triplet> trips;
    trips.reserve(a.nonZeros() + b.nonZeros());
    for (int c = 0; c < a.outerSize(); ++c) {
      for (SpMat::InnerIterator it(a, c); it; ++it) {
        trips.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (int c = 0; c < b.outerSize(); ++c) {
      for (SpMat::InnerIterator it(b, c); it; ++it) {
        trips.emplace_back(it.row() + offset, it.col() + offset, it.value());
      }
    }
    SpMat merged(n_primal, n_primal);
    merged.setFromTriplets(trips.begin(), trips.end());
    return merged;
  };

  sys.K = offset_merge(k_solid, k_beam, n_solid);
  sys.G_V = offset_merge(u_norm_gram(mesh, characteristic_length),
                         beam_norm_gram(beam, characteristic_length), n_solid);

  sys.B = assemble_B(surface, sys.layout).B;
  if (sys.B.cols() != n_primal) {
    throw ConfigError("assemble_system: DOF map inconsistency in constraint block");
  }

  sys.f = VecX::Zero(n_primal);
  sys.f.head(n_solid) = solid_load_vector(mesh, solid_loads, interface_face_set);
  sys.f.tail(sys.layout.beam_dofs()) = beam_load_vector(beam, beam_loads);

  sys.G_Q = q_norm_gram(characteristic_length);
  sys.interface_area = surface.area;
  sys.interface_J = surface.J;
  sys.interface_centroid = surface.centroid;
  sys.characteristic_length = characteristic_length;
  sys.solid_node_coords = mesh.nodes;
  return sys;
}

SpMat kkt_matrix(const SaddleSystem& system) {
  const int n = system.primal_dofs();
  const int m = system.multiplier_dofs();
  std::vector<Triplet> trips;
  trips.reserve(system.K.nonZeros() + 2 * system.B.nonZeros());
  for (int c = 0; c < system.K.outerSize(); ++c) {
    for (SpMat::InnerIterator it(system.K, c); it; ++it) {
      trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int c = 0; c < system.B.outerSize(); ++c) {
    for (SpMat::InnerIterator it(system.B, c); it; ++it) {
      trips.emplace_back(n + it.row(), it.col(), it.value());
      trips.emplace_back(it.col(), n + it.row(), it.value());
    }
  }
  SpMat kkt(n + m, n + m);
  kkt.setFromTriplets(trips.begin(), trips.end());
  return kkt;
}

namespace {

/// Dense symmetric-indefinite LDL^T (Bunch-Kaufman) via LAPACK, keeping the
/// original matrix for iterative refinement and pivot diagnostics.
class DenseSymmetricSolver {
 public:
  explicit DenseSymmetricSolver(MatX a) : original_(std::move(a)), factor_(original_) {
    n_ = static_cast<int>(factor_.rows());
    ipiv_.resize(n_);
    const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n_,
                                           factor_.data(), n_, ipiv_.data());
    if (info < 0) {
      throw std::runtime_error("dsytrf: invalid argument");
    }
    exact_zero_pivot_ = info > 0;
  }

  /// Magnitudes of the eigenvalues of the block-diagonal D factor.
  std::vector<double> pivot_magnitudes() const {
    std::vector<double> mags;
    mags.reserve(n_);
    int k = 0;
    while (k < n_) {
      if (ipiv_[k] > 0) {
        mags.push_back(std::abs(factor_(k, k)));
        ++k;
      } else {
        const double a = factor_(k, k);
        const double b = factor_(k + 1, k);
        const double c = factor_(k + 1, k + 1);
        const double mean = 0.5 * (a + c);
        const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        mags.push_back(std::abs(mean + disc));
        mags.push_back(std::abs(mean - disc));
        k += 2;
      }
    }
    return mags;
  }

  int count_zero_pivots(double rel_tol) const {
    const auto mags = pivot_magnitudes();
    double max_mag = 0.0;
    for (double m : mags) max_mag = std::max(max_mag, m);
    if (max_mag == 0.0) return n_;
    int count = 0;
    for (double m : mags) {
      if (m < rel_tol * max_mag) ++count;
    }
    if (exact_zero_pivot_ && count == 0) count = 1;
    return count;
  }

  VecX solve(const VecX& rhs) const {
    VecX x = rhs;
    const lapack_int info =
        LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n_, 1, factor_.data(), n_,
                       ipiv_.data(), x.data(), n_);
    if (info != 0) {
      throw std::runtime_error("dsytrs: solve failed");
    }
    // One step of iterative refinement.
    const VecX correction_rhs = rhs - original_.selfadjointView<Eigen::Lower>() * x;
    VecX dx = correction_rhs;
    LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n_, 1, factor_.data(), n_,
                   ipiv_.data(), dx.data(), n_);
    return x + dx;
  }

 private:
  MatX original_;
  MatX factor_;
  std::vector<lapack_int> ipiv_;
  int n_ = 0;
  bool exact_zero_pivot_ = false;
};

}  // namespace

SolveReport solve(const SaddleSystem& system, const SolveOptions& options) {
  const int n = system.primal_dofs();
  const int m = system.multiplier_dofs();
  const int total = n + m;

  const SpMat kkt = kkt_matrix(system);
  VecX rhs = VecX::Zero(total);
  rhs.head(n) = system.f;

  SolveReport report;
  VecX solution;

  if (total <= options.dense_threshold) {
    report.dense_path = true;
    DenseSymmetricSolver solver{MatX(kkt)};
    report.zero_pivots = solver.count_zero_pivots(options.pivot_tolerance);
    if (report.zero_pivots > 0 && !options.allow_singular) {
      throw WellPosednessError(
          "solve: factorization reports " + std::to_string(report.zero_pivots) +
          " near-zero pivots; the system is not well posed");
    }
    solution = solver.solve(rhs);
  } else {
    report.dense_path = false;
    Eigen::SparseLU<SpMat> lu(kkt);
    if (lu.info() != Eigen::Success) {
      if (!options.allow_singular) {
        throw WellPosednessError("solve: sparse factorization failed; "
                                 "the system is singular or ill posed");
      }
      report.zero_pivots = -1;  // singular, count unavailable on this path
      report.primal = VecX::Zero(n);
      report.multipliers = VecX::Zero(m);
      report.constraint_residual = VecX::Zero(m);
      return report;
    }
    solution = lu.solve(rhs);
    solution += lu.solve(VecX(rhs - kkt * solution));
    report.zero_pivots = 0;
  }

  report.primal = solution.head(n);
  report.multipliers = solution.tail(m);
  report.constraint_residual = system.B * report.primal;
  report.a_value = report.primal.dot(system.K * report.primal);
  report.f_value = system.f.dot(report.primal);
  report.energy_gap = std::abs(report.a_value - report.f_value);
  report.residual_norm =
      (rhs - kkt * solution).norm() / (1.0 + rhs.norm());
  return report;
}

double lagrangian_value(const SaddleSystem& system, const VecX& primal,
                        const VecX& multipliers) {
  if (primal.size() != system.primal_dofs() ||
      multipliers.size() != system.multiplier_dofs()) {
    throw std::invalid_argument("lagrangian_value: dimension mismatch");
  }
  return 0.5 * primal.dot(system.K * primal) - system.f.dot(primal) +
         multipliers.dot(system.B * primal);
}

void export_system(const SaddleSystem& system, const std::string& prefix,
                   bool include_grams) {
  const int n = system.primal_dofs();
  const int m = system.multiplier_dofs();
  VecX rhs = VecX::Zero(n + m);
  rhs.head(n) = system.f;

  matrix_market::write_coordinate_symmetric(kkt_matrix(system),
                                            prefix + "_kkt.mtx",
                                            "coupled beam-solid KKT matrix");
  matrix_market::write_array(rhs, prefix + "_rhs.mtx");
  if (include_grams) {
    matrix_market::write_coordinate_symmetric(system.G_V, prefix + "_gv.mtx",
                                              "V-norm Gram matrix");
    SpMat gq = system.G_Q.sparseView();
    matrix_market::write_coordinate_symmetric(gq, prefix + "_gq.mtx",
                                              "Q-norm Gram matrix");
  }
}

void write_solve_report(const SolveReport& report, const SaddleSystem& system,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_solve_report: cannot open '" + path + "'");
  }
  auto value = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto vec = [&value](const VecX& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += value(v[i]);
    }
    return s;
  };

  const DofLayout& layout = system.layout;
  out << "primal_dofs = " << system.primal_dofs() << "\n";
  out << "multiplier_dofs = " << system.multiplier_dofs() << "\n";
  out << "solid_dofs = " << layout.solid_dofs() << "\n";
  out << "beam_dofs = " << layout.beam_dofs() << "\n";
  out << "primal_norm = " << value(report.primal.norm()) << "\n";
  if (layout.beam_free_nodes() > 0) {
    VecX tip_w(3), tip_theta(3);
    for (int c = 0; c < 3; ++c) {
      tip_w[c] = report.primal[layout.tip_w_dof(c)];
      tip_theta[c] = report.primal[layout.tip_theta_dof(c)];
    }
    out << "tip_displacement = " << vec(tip_w) << "\n";
    out << "tip_rotation = " << vec(tip_theta) << "\n";
  }
  if (report.multipliers.size() == 6) {
    out << "lambda = " << vec(report.multipliers.head(3)) << "\n";
    out << "mu = " << vec(report.multipliers.tail(3)) << "\n";
  } else {
    out << "multipliers = " << vec(report.multipliers) << "\n";
  }
  out << "constraint_residual = " << vec(report.constraint_residual) << "\n";
  out << "a_value = " << value(report.a_value) << "\n";
  out << "f_value = " << value(report.f_value) << "\n";
  out << "energy_gap = " << value(report.energy_gap) << "\n";
  out << "zero_pivots = " << report.zero_pivots << "\n";
  out << "residual_norm = " << value(report.residual_norm) << "\n";
  out << "dense_path = " << (report.dense_path ? 1 : 0) << "\n";
}

}  // namespace beamsolid
