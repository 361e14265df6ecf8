#include "beamsolid/analysis.hpp"

#include "beamsolid/hex8.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <filesystem>
#include <fstream>

namespace beamsolid {

MatX kernel_basis(const SpMat& B) {
  const int n = static_cast<int>(B.cols());
  const int m = static_cast<int>(B.rows());
  if (m == 0) {
    return MatX::Identity(n, n);
  }

  const MatX bt = MatX(B).transpose();  // n x m
  Eigen::BDCSVD<MatX> svd(bt, Eigen::ComputeThinU);
  const VecX sigma = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > 1e-12 * sigma[0]) ++rank;
  }

  // Orthonormal complement of range(B^T) via QR completion.
  const MatX range = svd.matrixU().leftCols(rank);
  Eigen::HouseholderQR<MatX> qr(range);
  MatX pick = MatX::Zero(n, n - rank);
  for (int j = 0; j < n - rank; ++j) pick(rank + j, j) = 1.0;
  return qr.householderQ() * pick;
}

namespace {

double iterative_kernel_ellipticity(const SaddleSystem& system,
                                    const EllipticityOptions& options) {
  const int n = system.primal_dofs();
  const int m = system.multiplier_dofs();
  Eigen::SparseLU<SpMat> lu(kkt_matrix(system));
  if (lu.info() != Eigen::Success) {
    throw WellPosednessError(
        "kernel_ellipticity: KKT factorization failed; system not well posed");
  }

  auto kernel_inverse_apply = [&](const VecX& v) {
    VecX rhs = VecX::Zero(n + m);
    rhs.head(n) = system.G_V * v;
    const VecX sol = lu.solve(rhs);
    return VecX(sol.head(n));
  };

  VecX x = VecX::Ones(n);
  for (int i = 0; i < n; ++i) x[i] += 1e-3 * std::sin(7.0 * i + 1.0);
  x = kernel_inverse_apply(x);  // project onto ker B

  double rho_prev = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double gnorm = std::sqrt(x.dot(system.G_V * x));
    x /= gnorm;
    x = kernel_inverse_apply(x);
    const double num = x.dot(system.K * x);
    const double den = x.dot(system.G_V * x);
    const double rho = num / den;
    if (iter > 0 && std::abs(rho - rho_prev) <= options.iterative_tolerance * rho) {
      return rho;
    }
    rho_prev = rho;
  }
  throw std::runtime_error("kernel_ellipticity: inverse iteration did not converge");
}

}  // namespace

double kernel_ellipticity(const SaddleSystem& system,
                          const EllipticityOptions& options) {
  const int n = system.primal_dofs();
  const int m = system.multiplier_dofs();

  if (m > 0) {
    const MatX bt = MatX(system.B).transpose();
    Eigen::BDCSVD<MatX> svd(bt);
    const VecX sigma = svd.singularValues();
    if (sigma.minCoeff() <= 1e-12 * sigma[0]) {
      throw WellPosednessError("kernel_ellipticity: constraint block is rank deficient");
    }
  }

  if (n > options.dense_threshold) {
    if (m == 0) {
      throw std::invalid_argument(
          "kernel_ellipticity: unconstrained diagnostic only available at desk scale");
    }
    return iterative_kernel_ellipticity(system, options);
  }

  const MatX z = kernel_basis(system.B);
  const MatX kz = system.K * z;
  const MatX gz = system.G_V * z;
  const MatX a = z.transpose() * kz;
  const MatX g = z.transpose() * gz;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatX> eig(
      0.5 * (a + a.transpose()), 0.5 * (g + g.transpose()),
      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return eig.eigenvalues().minCoeff();
}

MatX constraint_schur(const SaddleSystem& system) {
  const int m = system.multiplier_dofs();
  if (m == 0) return MatX::Zero(0, 0);

  Eigen::SimplicialLDLT<SpMat> ldlt(system.G_V);
  if (ldlt.info() != Eigen::Success) {
    throw WellPosednessError("constraint_schur: V-norm Gram is not SPD");
  }
  const MatX bt = MatX(system.B).transpose();
  const MatX x = ldlt.solve(bt);
  MatX s = MatX(system.B) * x;
  return 0.5 * (s + s.transpose());
}

double inf_sup_constant(const SaddleSystem& system) {
  const int m = system.multiplier_dofs();
  if (m == 0) return 0.0;
  const MatX s = constraint_schur(system);
  if (s.norm() == 0.0) return 0.0;

  Eigen::GeneralizedSelfAdjointEigenSolver<MatX> eig(
      s, system.G_Q, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return std::sqrt(std::max(eig.eigenvalues().minCoeff(), 0.0));
}

int rigid_mode_census(const SpMat& k, double tolerance) {
  const MatX dense = MatX(k);
  Eigen::SelfAdjointEigenSolver<MatX> eig(0.5 * (dense + dense.transpose()),
                                          Eigen::EigenvaluesOnly);
  const VecX values = eig.eigenvalues();
  const double scale = values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return static_cast<int>(values.size());
  int count = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) < tolerance * scale) ++count;
  }
  return count;
}

Mat3 compute_M(const Mesh& mesh, const Vec3& about) {
  Mat3 m = Mat3::Zero();
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto coords = element_coords(mesh, e);
    for (const Vec3& xi : hex8::gauss_points()) {
      const auto n = hex8::shape(xi);
      const auto dn = hex8::shape_gradients(xi);
      Mat3 jac = Mat3::Zero();
      Vec3 x = Vec3::Zero();
      for (int a = 0; a < 8; ++a) {
        jac += coords[a] * dn.row(a);
        x += n[a] * coords[a];
      }
      const double det = jac.determinant();
      if (!(det > 0.0)) {
        throw GeometryError("compute_M: inverted element");
      }
      const Vec3 r = x - about;
      m += (r.squaredNorm() * Mat3::Identity() - r * r.transpose()) * det;
    }
  }
  return m;
}

WitnessBound witness_infsup_bound(const SaddleSystem& system, const Vec3& lambda,
                                  const Vec3& mu) {
  const int n = system.primal_dofs();
  VecX witness = VecX::Zero(n);
  for (int a = 0; a < system.layout.n_solid_nodes; ++a) {
    const Vec3 u =
        mu + lambda.cross(system.solid_node_coords[a] - system.interface_centroid);
    witness.segment<3>(3 * a) = u;
  }

  Vec6 q;
  q << lambda, mu;
  WitnessBound bound;
  bound.numerator = q.dot(system.B * witness);
  bound.witness_norm = std::sqrt(witness.dot(system.G_V * witness));
  bound.ratio = bound.numerator / bound.witness_norm;
  const MatX s = constraint_schur(system);
  bound.certified_sup = std::sqrt(std::max(q.dot(s * q), 0.0));
  return bound;
}

void append_stability_csv(const std::string& path, const StabilityReport& report) {
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::runtime_error("append_stability_csv: cannot open '" + path + "'");
  }
  if (fresh) {
    out << "level,N,alpha,beta,rigid_unconstrained,rigid_constrained\n";
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%d,%d\n", report.level,
                report.n_primal, report.alpha, report.beta,
                report.rigid_modes_unconstrained, report.rigid_modes_constrained);
  out << buf;
}

}  // namespace beamsolid
