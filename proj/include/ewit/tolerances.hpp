#pragma once

namespace ewit {

/// Numerical thresholds shared by every module. One record so that a change
/// in one place moves every check that depends on it.
struct Tolerances {
  double hermitian = 1e-12;        // max |M - M^dagger| entrywise
  double jacobi_offdiag = 1e-13;   // off-diagonal Frobenius norm, relative to ||M||_F
  int jacobi_max_sweeps = 100;
  double psd_clamp = 1e-10;        // eigenvalues above -psd_clamp are clamped to zero
  double psd_error = 1e-6;         // eigenvalues below -psd_error are rejected
  double trace = 1e-12;
  double density_min_eig = -1e-9;
  double imag_residue = 1e-10;     // allowed imaginary part of Tr(rho O_i x O'_j)
  double rank_cutoff = 1e-10;      // singular values below this are treated as zero
  double detection = 1e-9;         // strict negativity margin for "detected"
  double constraint = 1e-9;        // sigma_max(A) <= 1 + constraint
  double seesaw_change = 1e-12;
  double seesaw_valid = -1e-7;     // a witness is rejected if the see-saw goes below this
  double npt = 1e-9;               // min PT eigenvalue below -npt means NPT
  double ppt_bound = 1e-12;        // p <= p* + ppt_bound counts as PPT
  double boundary = 1e-9;          // |value| or |p - p*| within this is a boundary point
  double simplex = 1e-12;          // |sum(mu) - 1|
  double mu_infer = 1e-9;          // slack when inferring the last mu on the command line
};

inline constexpr Tolerances kTol{};

}  // namespace ewit
