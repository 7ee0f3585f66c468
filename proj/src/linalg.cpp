#include "sta/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace sta {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix sigma_plus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hs_norm(const CMatrix& m) { return m.norm(); }

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  const double dev = max_abs(m - m.adjoint());
  return dev <= tol * (scale > 0.0 ? scale : 1.0);
}

void require_hermitian(const CMatrix& m, const std::string& what, double tol) {
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument(what + ": matrix is not Hermitian (max|M - M^dag| = " +
                                std::to_string(max_abs(m - m.adjoint())) + ")");
  }
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

CMatrix projector(const CVector& v) {
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("projector: zero vector");
  return v * v.adjoint() / n2;
}

CMatrix partial_trace(const CMatrix& rho, int keep, const std::vector<int>& dims) {
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: factor dimensions must be >= 1");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: dims do not match the matrix size");
  if (keep < 0 || keep >= static_cast<int>(dims.size()))
    throw std::invalid_argument("partial_trace: keep index out of range");

  // Split indices as (left, kept, right) with the rightmost factor fastest.
  Eigen::Index left = 1, right = 1;
  for (int f = 0; f < keep; ++f) left *= dims[f];
  for (int f = keep + 1; f < static_cast<int>(dims.size()); ++f) right *= dims[f];
  const Eigen::Index dk = dims[keep];

  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index l = 0; l < left; ++l)
        for (Eigen::Index r = 0; r < right; ++r)
          acc += rho((l * dk + a) * right + r, (l * dk + b) * right + r);
      out(a, b) = acc;
    }
  return out;
}

double simpson_uniform(const RVector& values, double spacing) {
  const Eigen::Index n = values.size();
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("simpson_uniform: need an odd node count >= 3");
  double odd = 0.0, even = 0.0;
  for (Eigen::Index j = 1; j < n - 1; j += 2) odd += values[j];
  for (Eigen::Index j = 2; j < n - 1; j += 2) even += values[j];
  return spacing / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even);
}

EigenSystem herm_eigen(const CMatrix& m) {
  require_hermitian(m, "herm_eigen");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eigen: eigendecomposition failed to converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace sta
