#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ewit/matrix.hpp"
#include "ewit/tolerances.hpp"

namespace ewit {

/// A bipartite state on C^dA (x) C^dB, product index i_A * dB + i_B.
/// Construct through the catalog or validate_density; the invariants
/// (Hermitian, unit trace, PSD) are checked there, not here.
struct DensityMatrix {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  CMatrix matrix;

  std::size_t dim() const { return dim_a * dim_b; }
};

/// Parameters of the generalized Choi family
///   rho = p |psi_00><psi_00| + (1-p)/d sum_{i=1}^{d-1} mu_i rho_i,
///   rho_i = sum_l |l><l| (x) |l+i><l+i|  (mod d).
struct ChoiParams {
  std::size_t d = 3;
  double p = 0.0;
  std::vector<double> mu;  // mu_1 .. mu_{d-1}

  /// Throws DomainError naming the first violated constraint.
  void validate(const Tolerances& tol = kTol) const;
};

// --- catalog ---------------------------------------------------------------

/// 2/7 |psi+><psi+| + alpha/7 sigma+ + (5-alpha)/7 sigma-, 0 <= alpha <= 5.
DensityMatrix horodecki_alpha(double alpha);
/// The 3x3 bound entangled state built from the "tiles" unextendible product basis.
DensityMatrix upb_tiles();
/// Horodecki's 3x3 PPT entangled family, 0 < a < 1.
DensityMatrix horodecki_a(double a);
DensityMatrix choi_state(const ChoiParams& params);

// --- validation ------------------------------------------------------------

struct Violation {
  std::string invariant;  // "square", "dimension", "hermitian", "trace", "psd"
  double magnitude = 0.0;
  std::string message;
};

struct DensityValidation {
  std::optional<DensityMatrix> state;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every density-matrix invariant and reports each violation separately.
DensityValidation validate_density(const CMatrix& matrix, std::size_t dim_a, std::size_t dim_b,
                                   const Tolerances& tol = kTol);

/// validate_density, throwing DomainError with all violations if any.
DensityMatrix require_density(const CMatrix& matrix, std::size_t dim_a, std::size_t dim_b,
                              const Tolerances& tol = kTol);

// --- random sampling -------------------------------------------------------

using Rng = std::mt19937_64;

/// Normalized complex Gaussian vector.
CVector random_pure_vector(std::size_t d, Rng& rng);
/// Gram-Schmidt orthonormalization of a complex Gaussian matrix.
CMatrix random_unitary(std::size_t d, Rng& rng);
/// Random full-rank mixed state G G^dagger / Tr(G G^dagger), G complex Gaussian.
CMatrix random_mixed_state(std::size_t d, Rng& rng);
/// Uniform point on the probability simplex with `n` entries.
std::vector<double> random_simplex_point(std::size_t n, Rng& rng);
/// Random valid ChoiParams with p uniform in [0, 1/d].
ChoiParams random_choi_params(std::size_t d, Rng& rng);

struct ProductSample {
  DensityMatrix state;
  CVector a;
  CVector b;
};

/// |a><a| (x) |b><b| with independent normalized Gaussian factors.
ProductSample random_product_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

/// Sub-seed for the k-th independent stream derived from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// --- family registry -------------------------------------------------------

struct ParamSpec {
  std::string name;
  std::string range;  // human readable, for help text
};

struct FamilyInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

/// Every named family: horodecki-alpha, upb-tiles, horodecki-a, choi.
const std::vector<FamilyInfo>& state_families();

/// Scalar family parameters keyed by name ("alpha", "a", "p"), plus mu for choi.
struct FamilyArgs {
  std::map<std::string, double> scalars;
  std::vector<double> mu;
  std::size_t d = 3;
};

/// Builds a catalog state by family name. Throws DomainError for unknown names,
/// missing parameters or out-of-range values.
DensityMatrix make_family_state(std::string_view family, const FamilyArgs& args);

/// Parses a comma separated mu list for dimension d. The last entry may be left
/// out and is then inferred from sum(mu) = 1.
std::vector<double> parse_mu_list(std::string_view text, std::size_t d, const Tolerances& tol = kTol);

// --- JSON --------------------------------------------------------------------

/// Reads {"dA":..,"dB":..,"matrix":[[[re,im],...],...]} and validates it.
DensityMatrix load_density_json(std::string_view json_text);
std::string density_to_json(const DensityMatrix& rho);

}  // namespace ewit
