#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ewit/bases.hpp"
#include "ewit/matrix.hpp"
#include "ewit/states.hpp"
#include "ewit/tolerances.hpp"

namespace ewit {

/// rho~_ij = Tr(rho O_i (x) O'_j) over two operator bases.
struct CorrelationMatrix {
  RMatrix entries;
  OperatorBasis basis_a;
  OperatorBasis basis_b;
  double max_imaginary = 0.0;  // largest discarded imaginary part
};

/// W = I (x) I + sum_ij A_ij O_i (x) O'_j
struct Witness {
  RMatrix coefficients;
  OperatorBasis basis_a;
  OperatorBasis basis_b;

  std::size_t dim_a() const { return basis_a.dim(); }
  std::size_t dim_b() const { return basis_b.dim(); }
};

struct AssembledWitness {
  Witness witness;
  CMatrix matrix;
};

enum class DetectionStatus { Detected, NotDetected, Boundary };
std::string_view to_string(DetectionStatus status);

struct DetectionReport {
  double nuclear_norm = 0.0;
  double value = 0.0;  // 1 - nuclear_norm
  DetectionStatus status = DetectionStatus::NotDetected;
  bool detected = false;
  RMatrix z;
  RMatrix a;
};

/// Lagrange multiplier Z and optimal coefficient matrix A for a given rho~.
struct WitnessCoefficients {
  RMatrix a;
  RMatrix z;
  std::vector<double> singular_values;
};

struct ConstraintCheck {
  bool pass = false;
  double max_singular_value = 0.0;
};

struct SeesawOptions {
  std::size_t restarts = 50;
  std::size_t iterations = 200;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // 0 = hardware concurrency
};

struct SeesawResult {
  double min_value = 0.0;
  CVector a;
  CVector b;
  std::size_t best_restart = 0;
};

/// Throws DimensionError when the bases do not match the state's factors and
/// ImaginaryResidueError when an entry has |Im| > tol.imag_residue.
CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b, const Tolerances& tol = kTol);

/// Z = 1/2 (rho~^t rho~)^{1/2},  A = -1/2 rho~ Z^+ = -rho~ (rho~^t rho~)^{-1/2}.
/// Singular directions below tol.rank_cutoff contribute nothing to A, so A is a
/// partial isometry.
WitnessCoefficients witness_coefficients(const RMatrix& rho_tilde, const Tolerances& tol = kTol);

/// Detection value 1 - Tr sqrt(rho~^t rho~) with the optimal Z and A.
DetectionReport detection_value(const DensityMatrix& rho, const OperatorBasis& basis_a,
                                const OperatorBasis& basis_b, const Tolerances& tol = kTol);
/// Default bases: unit set on both parties.
DetectionReport detection_value(const DensityMatrix& rho, const Tolerances& tol = kTol);

AssembledWitness assemble_witness(const RMatrix& a, const OperatorBasis& basis_a, const OperatorBasis& basis_b);

/// The full (dA dB) x (dA dB) operator of a witness.
CMatrix witness_matrix(const Witness& w);

/// 1 + sum_ij A_ij rho~_ij(rho).
double evaluate_witness(const Witness& w, const DensityMatrix& rho, const Tolerances& tol = kTol);

/// Re Tr(W rho) through the explicit operator.
double evaluate_witness_matrix(const CMatrix& w, const DensityMatrix& rho);

/// sigma_max(A) <= 1 + tol.constraint.
ConstraintCheck validate_constraint(const RMatrix& a, const Tolerances& tol = kTol);

/// Builds the optimal witness for rho: coefficients, bases and explicit operator.
AssembledWitness build_witness(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                               const Tolerances& tol = kTol);

/// Minimum of <a b|W|a b> over product vectors by alternating smallest-eigenvector
/// updates, best over seeded restarts. Deterministic for a given seed whatever
/// the worker count.
SeesawResult seesaw_min_separable(const CMatrix& w, std::size_t dim_a, std::size_t dim_b,
                                  const SeesawOptions& options = {}, const Tolerances& tol = kTol);
SeesawResult seesaw_min_separable(const Witness& w, const SeesawOptions& options = {}, const Tolerances& tol = kTol);

/// {"dA","dB","basis_a","basis_b","A","detection_value","nuclear_norm","detected","status"}
std::string witness_to_json(const Witness& w, const DetectionReport& report);

}  // namespace ewit
