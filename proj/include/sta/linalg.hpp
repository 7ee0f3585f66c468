#pragma once

// Dense complex linear algebra for few-level quantum systems, built on Eigen.
// Conventions: hbar = 1, Hamiltonian entries are angular frequencies, basis
// kets are |0>, |1>, ... in the computational order.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sta {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

// Relative tolerance below which a matrix counts as Hermitian.
inline constexpr double kHermTol = 1e-12;

CMatrix identity(int dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
// Ladder operators sigma_pm = (sigma_x -/+ i sigma_y)/2, i.e.
// sigma_plus = |1><0| raises and sigma_minus = |0><1| lowers.
CMatrix sigma_plus();
CMatrix sigma_minus();

// Largest absolute entry; zero for an empty matrix.
double max_abs(const CMatrix& m);

// Hilbert-Schmidt norm sqrt(Tr[M^dag M]) (= Frobenius norm).
double hs_norm(const CMatrix& m);

// max|M - M^dag| <= tol * max|M| (absolute for the zero matrix).
bool is_hermitian(const CMatrix& m, double tol = kHermTol);

// Throws std::invalid_argument naming `what` when m fails is_hermitian.
void require_hermitian(const CMatrix& m, const std::string& what,
                       double tol = kHermTol);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

// Kronecker product; the second factor varies fastest, so
// tensor(A, B)(i*rb + k, j*cb + l) = A(i,j) * B(k,l).
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

// Projector |v><v| / <v|v>.
CMatrix projector(const CVector& v);

// Reduced density matrix of factor `keep` of a state on the tensor product
// with factor dimensions `dims` (second factor fastest, as in tensor()).
CMatrix partial_trace(const CMatrix& rho, int keep, const std::vector<int>& dims);

// Composite Simpson quadrature on a uniform grid (odd node count >= 3;
// an even count is refused since it cannot tile into parabolic panels).
double simpson_uniform(const RVector& values, double spacing);

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns, vectors.col(n) <-> values[n]
};

// Full eigendecomposition of a Hermitian matrix. Rejects non-Hermitian input
// (per is_hermitian) rather than symmetrizing silently.
EigenSystem herm_eigen(const CMatrix& m);

}  // namespace sta
