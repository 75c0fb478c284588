#include "ewit/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ewit/error.hpp"
#include "ewit/linalg.hpp"

namespace ewit {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// |psi_00> = d^{-1/2} sum_l |l>|l>
CVector maximally_entangled(std::size_t d) {
  CVector psi(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t l = 0; l < d; ++l) psi[l * d + l] = amp;
  return psi;
}

// Exact integer layout; the state is -1/72 times this.
constexpr int kUpbTiles[9][9] = {
    {-7, -7, 2, 2, 2, 2, 2, 2, 2},   {-7, -7, 2, 2, 2, 2, 2, 2, 2},  {2, 2, -7, 2, 2, -7, 2, 2, 2},
    {2, 2, 2, -7, 2, 2, -7, 2, 2},   {2, 2, 2, 2, -16, 2, 2, 2, 2},  {2, 2, -7, 2, 2, -7, 2, 2, 2},
    {2, 2, 2, -7, 2, 2, -7, 2, 2},   {2, 2, 2, 2, 2, 2, 2, -7, -7},  {2, 2, 2, 2, 2, 2, 2, -7, -7},
};

}  // namespace

void ChoiParams::validate(const Tolerances& tol) const {
  if (d < 2) throw DomainError("choi: d must be at least 2");
  if (mu.size() != d - 1) {
    throw DomainError("choi: expected " + std::to_string(d - 1) + " mu values, got " + std::to_string(mu.size()));
  }
  if (!(p >= 0.0) || p > 1.0 / static_cast<double>(d) + tol.simplex) {
    throw DomainError("choi: p = " + fmt_double(p) + " outside [0, 1/d]");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(mu[i] >= 0.0) || mu[i] > 1.0) {
      throw DomainError("choi: mu_" + std::to_string(i + 1) + " = " + fmt_double(mu[i]) + " outside [0, 1]");
    }
    sum += mu[i];
  }
  if (std::abs(sum - 1.0) > tol.simplex) throw DomainError("choi: mu sums to " + fmt_double(sum) + ", expected 1");
}

DensityMatrix horodecki_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 5.0)) {
    throw DomainError("horodecki-alpha: alpha = " + fmt_double(alpha) + " outside [0, 5]");
  }
  DensityMatrix rho{3, 3, outer(maximally_entangled(3)) * cplx(2.0 / 7.0)};
  const double plus = alpha / 21.0;
  const double minus = (5.0 - alpha) / 21.0;
  // sigma+ covers |01>,|12>,|20>; sigma- covers |10>,|21>,|02>.
  for (std::size_t l = 0; l < 3; ++l) {
    const std::size_t up = l * 3 + (l + 1) % 3;
    const std::size_t down = ((l + 1) % 3) * 3 + l;
    rho.matrix(up, up) += plus;
    rho.matrix(down, down) += minus;
  }
  return rho;
}

DensityMatrix upb_tiles() {
  DensityMatrix rho{3, 3, CMatrix(9, 9)};
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) rho.matrix(i, j) = -static_cast<double>(kUpbTiles[i][j]) / 72.0;
  return rho;
}

DensityMatrix horodecki_a(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("horodecki-a: a = " + fmt_double(a) + " outside (0, 1)");
  RMatrix m(9, 9);
  for (std::size_t i = 0; i < 9; ++i) m(i, i) = a;
  for (std::size_t i : {0, 4, 8})
    for (std::size_t j : {0, 4, 8}) m(i, j) = a;
  const double corner = std::sqrt(1.0 - a * a) / 2.0;
  m(6, 6) = (1.0 + a) / 2.0;
  m(8, 8) = (1.0 + a) / 2.0;
  m(6, 8) = corner;
  m(8, 6) = corner;
  m *= 1.0 / (8.0 * a + 1.0);
  return DensityMatrix{3, 3, to_complex(m)};
}

DensityMatrix choi_state(const ChoiParams& params) {
  params.validate();
  const std::size_t d = params.d;
  DensityMatrix rho{d, d, outer(maximally_entangled(d)) * cplx(params.p)};
  const double weight = (1.0 - params.p) / static_cast<double>(d);
  for (std::size_t i = 1; i < d; ++i) {
    for (std::size_t l = 0; l < d; ++l) {
      const std::size_t k = l * d + (l + i) % d;
      rho.matrix(k, k) += weight * params.mu[i - 1];
    }
  }
  return rho;
}

DensityValidation validate_density(const CMatrix& matrix, std::size_t dim_a, std::size_t dim_b,
                                   const Tolerances& tol) {
  DensityValidation out;
  if (!matrix.is_square()) {
    out.violations.push_back({"square", 0.0, "matrix is " + matrix.shape_string()});
    return out;
  }
  if (dim_a == 0 || dim_b == 0 || matrix.rows() != dim_a * dim_b) {
    out.violations.push_back({"dimension", 0.0,
                              "matrix is " + matrix.shape_string() + " but dA*dB = " + std::to_string(dim_a) + "*" +
                                  std::to_string(dim_b)});
    return out;
  }
  const double herm = hermiticity_defect(matrix);
  if (herm > tol.hermitian) {
    out.violations.push_back({"hermitian", herm, "max |M - M^dagger| = " + fmt_double(herm)});
  }
  const double trace_err = std::abs(matrix.trace() - cplx(1.0));
  if (trace_err > tol.trace) {
    out.violations.push_back({"trace", trace_err, "trace = " + fmt_double(matrix.trace().real())});
  }
  // Eigenvalues of the Hermitian part; reported even when the input itself is not Hermitian.
  CMatrix herm_part = matrix;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) herm_part(i, j) = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));
  const double min_eig = min_eigenvalue(herm_part, tol);
  if (min_eig < tol.density_min_eig) {
    out.violations.push_back({"psd", -min_eig, "minimum eigenvalue = " + fmt_double(min_eig)});
  }
  if (out.violations.empty()) out.state = DensityMatrix{dim_a, dim_b, matrix};
  return out;
}

DensityMatrix require_density(const CMatrix& matrix, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol) {
  auto report = validate_density(matrix, dim_a, dim_b, tol);
  if (!report.ok()) {
    std::string msg = "invalid density matrix:";
    for (const auto& v : report.violations) msg += " [" + v.invariant + "] " + v.message + ";";
    throw DomainError(msg);
  }
  return std::move(*report.state);
}

CVector random_pure_vector(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(d);
  double norm = 0.0;
  for (auto& x : v) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x = cplx(re, im);
    norm += re * re + im * im;
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

CMatrix random_unitary(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix u(d, d);
  for (auto& x : u.data()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x = cplx(re, im);
  }
  // Modified Gram-Schmidt on the columns, run twice for orthogonality at rounding level.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        cplx proj{};
        for (std::size_t r = 0; r < d; ++r) proj += std::conj(u(r, prev)) * u(r, c);
        for (std::size_t r = 0; r < d; ++r) u(r, c) -= proj * u(r, prev);
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < d; ++r) norm += std::norm(u(r, c));
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < d; ++r) u(r, c) /= norm;
    }
  }
  return u;
}

CMatrix random_mixed_state(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(d, d);
  for (auto& x : g.data()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x = cplx(re, im);
  }
  CMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  for (std::size_t i = 0; i < d; ++i) rho(i, i) = rho(i, i).real();
  return rho;
}

std::vector<double> random_simplex_point(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (auto& v : x) {
    v = expo(rng);
    sum += v;
  }
  for (auto& v : x) v /= sum;
  // Put the rounding residue on the last entry so the sum is exact to the last bit where possible.
  if (n > 0) {
    const double head = std::accumulate(x.begin(), x.end() - 1, 0.0);
    x.back() = std::max(0.0, 1.0 - head);
  }
  return x;
}

ChoiParams random_choi_params(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0 / static_cast<double>(d));
  ChoiParams params;
  params.d = d;
  params.mu = random_simplex_point(d - 1, rng);
  params.p = unif(rng);
  return params;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined key.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProductSample random_product_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  Rng rng(seed);
  ProductSample out;
  out.a = random_pure_vector(dim_a, rng);
  out.b = random_pure_vector(dim_b, rng);
  out.state = DensityMatrix{dim_a, dim_b, kron(outer(out.a), outer(out.b))};
  return out;
}

const std::vector<FamilyInfo>& state_families() {
  static const std::vector<FamilyInfo> families = {
      {"horodecki-alpha", "2/7 |psi+><psi+| + alpha/7 sigma+ + (5-alpha)/7 sigma-, two qutrits",
       {{"alpha", "0 <= alpha <= 5"}}},
      {"upb-tiles", "bound entangled two-qutrit state from the tiles UPB", {}},
      {"horodecki-a", "Horodecki 3x3 PPT entangled family", {{"a", "0 < a < 1"}}},
      {"choi", "generalized Choi family on d x d",
       {{"d", "d >= 2"}, {"p", "0 <= p <= 1/d"}, {"mu", "mu_1..mu_{d-1} >= 0, sum = 1 (last may be omitted)"}}},
  };
  return families;
}

DensityMatrix make_family_state(std::string_view family, const FamilyArgs& args) {
  auto scalar = [&](const std::string& name) {
    auto it = args.scalars.find(name);
    if (it == args.scalars.end()) {
      throw DomainError(std::string(family) + ": missing parameter --" + name);
    }
    return it->second;
  };
  if (family == "horodecki-alpha") return horodecki_alpha(scalar("alpha"));
  if (family == "upb-tiles") return upb_tiles();
  if (family == "horodecki-a") return horodecki_a(scalar("a"));
  if (family == "choi") {
    ChoiParams params;
    params.d = args.d;
    params.p = scalar("p");
    params.mu = args.mu;
    return choi_state(params);
  }
  throw DomainError("unknown state family '" + std::string(family) + "'");
}

std::vector<double> parse_mu_list(std::string_view text, std::size_t d, const Tolerances& tol) {
  if (d < 2) throw DomainError("mu list: d must be at least 2");
  std::vector<double> mu;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token(text.substr(pos, comma - pos));
    try {
      std::size_t used = 0;
      mu.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw DomainError("mu list: cannot parse '" + token + "'");
    }
    pos = comma + 1;
  }
  const double head = std::accumulate(mu.begin(), mu.end(), 0.0);
  if (mu.size() + 1 == d - 1) {
    if (head > 1.0 + tol.mu_infer) throw DomainError("mu list: entries already sum to more than 1");
    mu.push_back(std::max(0.0, 1.0 - head));
  } else if (mu.size() == d - 1) {
    if (std::abs(head - 1.0) > tol.mu_infer) {
      throw DomainError("mu list: entries sum to " + fmt_double(head) + ", expected 1");
    }
    // Absorb rounding in the last entry so the simplex check passes exactly.
    mu.back() = std::max(0.0, 1.0 - std::accumulate(mu.begin(), mu.end() - 1, 0.0));
  } else {
    throw DomainError("mu list: expected " + std::to_string(d - 1) + " (or " + std::to_string(d - 2) +
                      ") entries for d = " + std::to_string(d) + ", got " + std::to_string(mu.size()));
  }
  return mu;
}

DensityMatrix load_density_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
  try {
    const auto dim_a = j.at("dA").get<std::size_t>();
    const auto dim_b = j.at("dB").get<std::size_t>();
    const auto& rows = j.at("matrix");
    const std::size_t n = rows.size();
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) throw DimensionError("state JSON: matrix row " + std::to_string(r) + " is ragged");
      for (std::size_t c = 0; c < n; ++c) {
        const auto& entry = rows[r][c];
        m(r, c) = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
      }
    }
    return require_density(m, dim_a, dim_b);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
}

std::string density_to_json(const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < rho.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < rho.matrix.cols(); ++c) row.push_back({rho.matrix(r, c).real(), rho.matrix(r, c).imag()});
    rows.push_back(std::move(row));
  }
  nlohmann::json j{{"dA", rho.dim_a}, {"dB", rho.dim_b}, {"matrix", std::move(rows)}};
  return j.dump();
}

}  // namespace ewit
