#include "ewit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "ewit/error.hpp"
#include "ewit/linalg.hpp"
#include "ewit/parallel.hpp"

namespace ewit {

namespace {

void require_dims(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                  const char* what) {
  if (rho.dim_a != basis_a.dim() || rho.dim_b != basis_b.dim() || rho.matrix.rows() != rho.dim()) {
    throw DimensionError(std::string(what) + ": state is " + std::to_string(rho.dim_a) + "x" +
                         std::to_string(rho.dim_b) + " but bases have dimensions " + std::to_string(basis_a.dim()) +
                         " and " + std::to_string(basis_b.dim()));
  }
}

DetectionStatus classify_value(double value, const Tolerances& tol) {
  if (value < -tol.detection) return DetectionStatus::Detected;
  if (value <= tol.detection) return DetectionStatus::Boundary;
  return DetectionStatus::NotDetected;
}

// <x|M|x> restricted to one factor: contracts W with |v><v| on the other side.
CMatrix reduce_on(const CMatrix& w, std::size_t dim_a, std::size_t dim_b, const CVector& v, Subsystem fixed) {
  if (fixed == Subsystem::B) {
    CMatrix m(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t k = 0; k < dim_a; ++k) {
        cplx s{};
        for (std::size_t j = 0; j < dim_b; ++j) {
          cplx row{};
          for (std::size_t l = 0; l < dim_b; ++l) row += w(i * dim_b + j, k * dim_b + l) * v[l];
          s += std::conj(v[j]) * row;
        }
        m(i, k) = s;
      }
    return m;
  }
  CMatrix m(dim_b, dim_b);
  for (std::size_t j = 0; j < dim_b; ++j)
    for (std::size_t l = 0; l < dim_b; ++l) {
      cplx s{};
      for (std::size_t i = 0; i < dim_a; ++i) {
        cplx row{};
        for (std::size_t k = 0; k < dim_a; ++k) row += w(i * dim_b + j, k * dim_b + l) * v[k];
        s += std::conj(v[i]) * row;
      }
      m(j, l) = s;
    }
  return m;
}

// Symmetrize away rounding so the Hermitian eigensolver accepts the contraction.
void hermitize(CMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

std::pair<double, CVector> lowest_eigenpair(CMatrix m, const Tolerances& tol) {
  hermitize(m);
  const auto spectrum = hermitian_eig(m, tol);
  CVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = spectrum.eigenvectors(i, 0);
  return {spectrum.eigenvalues.front(), std::move(v)};
}

SeesawResult seesaw_restart(const CMatrix& w, std::size_t dim_a, std::size_t dim_b, std::size_t restart,
                            const SeesawOptions& options, const Tolerances& tol) {
  Rng rng(derive_seed(options.seed, restart));
  SeesawResult r;
  r.best_restart = restart;
  r.b = random_pure_vector(dim_b, rng);
  r.a = random_pure_vector(dim_a, rng);
  double previous = std::numeric_limits<double>::infinity();
  double value = previous;
  for (std::size_t it = 0; it < options.iterations; ++it) {
    auto [va, a] = lowest_eigenpair(reduce_on(w, dim_a, dim_b, r.b, Subsystem::B), tol);
    r.a = std::move(a);
    auto [vb, b] = lowest_eigenpair(reduce_on(w, dim_a, dim_b, r.a, Subsystem::A), tol);
    r.b = std::move(b);
    value = vb;
    if (std::abs(previous - value) < tol.seesaw_change) break;
    previous = value;
  }
  if (options.iterations == 0) {
    // No optimisation requested: report the starting product state.
    const CMatrix mb = reduce_on(w, dim_a, dim_b, r.b, Subsystem::B);
    cplx s{};
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t k = 0; k < dim_a; ++k) s += std::conj(r.a[i]) * mb(i, k) * r.a[k];
    value = s.real();
  }
  r.min_value = value;
  return r;
}

}  // namespace

std::string_view to_string(DetectionStatus status) {
  switch (status) {
    case DetectionStatus::Detected:
      return "detected";
    case DetectionStatus::NotDetected:
      return "not-detected";
    case DetectionStatus::Boundary:
      return "boundary";
  }
  return "unknown";
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b, const Tolerances& tol) {
  require_dims(rho, basis_a, basis_b, "correlation_matrix");
  const std::size_t da = rho.dim_a;
  const std::size_t db = rho.dim_b;
  const CMatrix& m = rho.matrix;

  CorrelationMatrix out{RMatrix(basis_a.size(), basis_b.size()), basis_a, basis_b, 0.0};
  CMatrix reduced(db, db);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    // reduced = Tr_A[(O_i (x) I) rho]
    const CMatrix& oi = basis_a[i];
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp) {
        cplx s{};
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t ap = 0; ap < da; ++ap) {
            const cplx o = oi(ap, a);
            if (o != cplx{}) s += o * m(a * db + b, ap * db + bp);
          }
        reduced(b, bp) = s;
      }
    for (std::size_t j = 0; j < basis_b.size(); ++j) {
      const cplx t = trace_of_product(reduced, basis_b[j]);
      out.max_imaginary = std::max(out.max_imaginary, std::abs(t.imag()));
      out.entries(i, j) = t.real();
    }
  }
  if (out.max_imaginary > tol.imag_residue) {
    throw ImaginaryResidueError("correlation_matrix: imaginary residue " + std::to_string(out.max_imaginary) +
                                " (is the state Hermitian?)");
  }
  return out;
}

WitnessCoefficients witness_coefficients(const RMatrix& rho_tilde, const Tolerances& tol) {
  const auto svd = real_svd(rho_tilde, tol);
  const std::size_t rows = rho_tilde.rows();
  const std::size_t cols = rho_tilde.cols();
  const std::size_t k = svd.singular_values.size();

  WitnessCoefficients out{RMatrix(rows, cols), RMatrix(cols, cols), svd.singular_values};
  for (std::size_t s = 0; s < k; ++s) {
    const double sigma = svd.singular_values[s];
    if (sigma <= 0.0) continue;
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j) out.z(i, j) += 0.5 * sigma * svd.v(i, s) * svd.v(j, s);
    if (sigma < tol.rank_cutoff) continue;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out.a(i, j) -= svd.u(i, s) * svd.v(j, s);
  }
  return out;
}

DetectionReport detection_value(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                                const Tolerances& tol) {
  const auto corr = correlation_matrix(rho, basis_a, basis_b, tol);
  auto coeffs = witness_coefficients(corr.entries, tol);
  DetectionReport report;
  report.nuclear_norm = std::accumulate(coeffs.singular_values.begin(), coeffs.singular_values.end(), 0.0);
  report.value = 1.0 - report.nuclear_norm;
  report.status = classify_value(report.value, tol);
  report.detected = report.status == DetectionStatus::Detected;
  report.z = std::move(coeffs.z);
  report.a = std::move(coeffs.a);
  return report;
}

DetectionReport detection_value(const DensityMatrix& rho, const Tolerances& tol) {
  return detection_value(rho, unit_set(rho.dim_a), unit_set(rho.dim_b), tol);
}

CMatrix witness_matrix(const Witness& w) {
  const auto& a = w.coefficients;
  if (a.rows() != w.basis_a.size() || a.cols() != w.basis_b.size()) {
    throw DimensionError("witness: coefficient matrix is " + a.shape_string() + " but bases have " +
                         std::to_string(w.basis_a.size()) + " and " + std::to_string(w.basis_b.size()) +
                         " operators");
  }
  const std::size_t db = w.dim_b();
  CMatrix out = CMatrix::identity(w.dim_a() * db);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CMatrix partner(db, db);
    bool any = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) continue;
      partner += w.basis_b[j] * cplx(a(i, j));
      any = true;
    }
    if (any) out += kron(w.basis_a[i], partner);
  }
  return out;
}

AssembledWitness assemble_witness(const RMatrix& a, const OperatorBasis& basis_a, const OperatorBasis& basis_b) {
  Witness w{a, basis_a, basis_b};
  CMatrix m = witness_matrix(w);
  return AssembledWitness{std::move(w), std::move(m)};
}

double evaluate_witness(const Witness& w, const DensityMatrix& rho, const Tolerances& tol) {
  const auto corr = correlation_matrix(rho, w.basis_a, w.basis_b, tol);
  if (corr.entries.rows() != w.coefficients.rows() || corr.entries.cols() != w.coefficients.cols()) {
    throw DimensionError("evaluate_witness: coefficient shape " + w.coefficients.shape_string() + " vs " +
                         corr.entries.shape_string());
  }
  double s = 1.0;
  for (std::size_t i = 0; i < corr.entries.size(); ++i) s += w.coefficients.data()[i] * corr.entries.data()[i];
  return s;
}

double evaluate_witness_matrix(const CMatrix& w, const DensityMatrix& rho) {
  return trace_of_product(w, rho.matrix).real();
}

ConstraintCheck validate_constraint(const RMatrix& a, const Tolerances& tol) {
  ConstraintCheck out;
  if (a.size() == 0) {
    out.pass = true;
    return out;
  }
  out.max_singular_value = singular_values(a, tol).front();
  out.pass = out.max_singular_value <= 1.0 + tol.constraint;
  return out;
}

AssembledWitness build_witness(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b,
                               const Tolerances& tol) {
  const auto corr = correlation_matrix(rho, basis_a, basis_b, tol);
  return assemble_witness(witness_coefficients(corr.entries, tol).a, basis_a, basis_b);
}

SeesawResult seesaw_min_separable(const CMatrix& w, std::size_t dim_a, std::size_t dim_b, const SeesawOptions& options,
                                  const Tolerances& tol) {
  if (!w.is_square() || w.rows() != dim_a * dim_b) {
    throw DimensionError("seesaw: operator is " + w.shape_string() + " but dA*dB = " + std::to_string(dim_a * dim_b));
  }
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  std::vector<SeesawResult> results(restarts);
  parallel_for(restarts, options.workers,
               [&](std::size_t r) { results[r] = seesaw_restart(w, dim_a, dim_b, r, options, tol); });
  // Lowest value wins; ties go to the earliest restart so the answer does not depend on scheduling.
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].min_value < results[best].min_value) best = r;
  return std::move(results[best]);
}

SeesawResult seesaw_min_separable(const Witness& w, const SeesawOptions& options, const Tolerances& tol) {
  return seesaw_min_separable(witness_matrix(w), w.dim_a(), w.dim_b(), options, tol);
}

std::string witness_to_json(const Witness& w, const DetectionReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < w.coefficients.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < w.coefficients.cols(); ++j) row.push_back(w.coefficients(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json j{
      {"dA", w.dim_a()},
      {"dB", w.dim_b()},
      {"basis_a", std::string(to_string(w.basis_a.kind()))},
      {"basis_b", std::string(to_string(w.basis_b.kind()))},
      {"A", std::move(rows)},
      {"detection_value", report.value},
      {"nuclear_norm", report.nuclear_norm},
      {"detected", report.detected},
      {"status", std::string(to_string(report.status))},
  };
  return j.dump(2);
}

}  // namespace ewit
