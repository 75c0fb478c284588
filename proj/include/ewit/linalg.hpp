#pragma once

#include <cstddef>
#include <vector>

#include "ewit/matrix.hpp"
#include "ewit/tolerances.hpp"

namespace ewit {

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending, eigenvectors
/// stored as the columns of `eigenvectors` in the same order.
struct Spectrum {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;
};

/// Real symmetric counterpart of Spectrum.
struct SymmetricSpectrum {
  std::vector<double> eigenvalues;
  RMatrix eigenvectors;
};

/// Thin SVD of a real matrix, M = U diag(sigma) V^t. Singular values descending,
/// U is rows x k and V is cols x k with k = min(rows, cols).
struct RealSvd {
  std::vector<double> singular_values;
  RMatrix u;
  RMatrix v;
};

enum class Subsystem { A, B };

/// Largest entrywise |M - M^dagger|. Throws DimensionError for non-square input.
double hermiticity_defect(const CMatrix& m);
double symmetry_defect(const RMatrix& m);

/// Cyclic Jacobi eigensolver for Hermitian matrices.
/// Throws DimensionError (non-square) or SymmetryError (|M - M^dagger| > tol.hermitian).
Spectrum hermitian_eig(const CMatrix& m, const Tolerances& tol = kTol);
SymmetricSpectrum symmetric_eig(const RMatrix& m, const Tolerances& tol = kTol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& m, const Tolerances& tol = kTol);

/// One-sided Jacobi SVD. The right singular vectors are the eigenvectors of M^t M,
/// obtained without forming M^t M.
RealSvd real_svd(const RMatrix& m, const Tolerances& tol = kTol);

/// Singular values of a real matrix, descending.
std::vector<double> singular_values(const RMatrix& m, const Tolerances& tol = kTol);

/// Sum of singular values, Tr sqrt(M^t M).
double nuclear_norm(const RMatrix& m, const Tolerances& tol = kTol);

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-tol.psd_error, 0) are clamped to zero; anything lower throws NotPsdError.
CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol = kTol);
RMatrix psd_sqrt(const RMatrix& m, const Tolerances& tol = kTol);

CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

/// Partial transpose on one factor of a dA*dB space. Product index is i_A * dB + i_B.
CMatrix partial_transpose(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, Subsystem which);

/// Partial trace over one factor; the result lives on the other factor.
CMatrix partial_trace(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, Subsystem traced_out);

}  // namespace ewit
