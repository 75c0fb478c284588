#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "ewit/linalg.hpp"
#include "ewit/states.hpp"
#include "oracles.hpp"

using namespace ewit;
using Catch::Matchers::WithinAbs;

namespace {

CMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

RMatrix random_real(std::size_t r, std::size_t c, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RMatrix m(r, c);
  for (auto& x : m.data()) x = g(rng);
  return m;
}

CMatrix psi_plus_projector(std::size_t d) {
  CVector psi(d * d);
  for (std::size_t l = 0; l < d; ++l) psi[l * d + l] = 1.0 / std::sqrt(static_cast<double>(d));
  return outer(psi);
}

}  // namespace

TEST_CASE("hermitian_eig on trivial inputs", "[linalg]") {
  const auto id = hermitian_eig(CMatrix::identity(2));
  CHECK_THAT(id.eigenvalues[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(id.eigenvalues[1], WithinAbs(1.0, 1e-15));

  const std::vector<cplx> diag{3.0, -1.0, 0.0};
  const auto s = hermitian_eig(CMatrix::diagonal(diag));
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == -1.0);
  CHECK(s.eigenvalues[1] == 0.0);
  CHECK(s.eigenvalues[2] == 3.0);
}

TEST_CASE("hermitian_eig rejects bad input", "[linalg]") {
  CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), DimensionError);
  CMatrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), SymmetryError);
}

TEST_CASE("partial transpose of the maximally entangled qutrit state", "[linalg]") {
  const CMatrix pt = partial_transpose(psi_plus_projector(3), 3, 3, Subsystem::A);
  const auto s = hermitian_eig(pt);
  // Equal to SWAP/3: antisymmetric subspace (dim 3) at -1/3, symmetric (dim 6) at +1/3.
  for (std::size_t k = 0; k < 3; ++k) CHECK_THAT(s.eigenvalues[k], WithinAbs(-1.0 / 3.0, 1e-12));
  for (std::size_t k = 3; k < 9; ++k) CHECK_THAT(s.eigenvalues[k], WithinAbs(1.0 / 3.0, 1e-12));
  const auto ref = oracle::eigenvalues(pt);
  for (std::size_t k = 0; k < 9; ++k) CHECK_THAT(s.eigenvalues[k], WithinAbs(ref[k], 1e-12));
}

TEST_CASE("spectrum reconstructs random Hermitian matrices", "[linalg][property]") {
  Rng rng(11);
  for (std::size_t n : {1u, 2u, 3u, 5u, 9u, 16u, 25u}) {
    for (int rep = 0; rep < 4; ++rep) {
      const CMatrix m = random_hermitian(n, rng);
      const auto s = hermitian_eig(m);
      REQUIRE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      const double norm = m.frobenius_norm();

      std::vector<cplx> lambda(s.eigenvalues.begin(), s.eigenvalues.end());
      const CMatrix rebuilt = s.eigenvectors * CMatrix::diagonal(lambda) * s.eigenvectors.adjoint();
      CHECK(max_abs_diff(rebuilt, m) <= 1e-9);

      const CMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
      CHECK(max_abs_diff(gram, CMatrix::identity(n)) <= 1e-10);

      for (std::size_t k = 0; k < n; ++k) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cplx mv{};
          for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * s.eigenvectors(j, k);
          residual += std::norm(mv - s.eigenvalues[k] * s.eigenvectors(i, k));
        }
        CHECK(std::sqrt(residual) <= 1e-9 * norm);
      }

      const auto ref = oracle::eigenvalues(m);
      for (std::size_t k = 0; k < n; ++k) CHECK_THAT(s.eigenvalues[k], WithinAbs(ref[k], 1e-10 * (1.0 + norm)));
    }
  }
}

TEST_CASE("singular values", "[linalg]") {
  for (double s : singular_values(RMatrix(3, 4))) CHECK(s == 0.0);

  const auto sv = singular_values(RMatrix{{3.0, 0.0}, {0.0, -4.0}});
  CHECK_THAT(sv[0], WithinAbs(4.0, 1e-15));
  CHECK_THAT(sv[1], WithinAbs(3.0, 1e-15));
}

TEST_CASE("singular values match eigenvalues of M^t M", "[linalg][property]") {
  Rng rng(5);
  for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 4}, {9, 9}, {6, 3}, {3, 7}, {25, 25}}) {
    const RMatrix m = random_real(r, c, rng);
    const auto sv = singular_values(m);
    const auto gram = symmetric_eig(m.transpose() * m);
    // Full rank by construction: the smallest min(r,c) eigenvalues of the larger Gram matrix may be zero.
    const std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < k; ++i) {
      const double lambda = gram.eigenvalues[gram.eigenvalues.size() - 1 - i];
      CHECK_THAT(sv[i], WithinAbs(std::sqrt(std::max(0.0, lambda)), 1e-9));
    }
    const auto ref = oracle::singular_values(m);
    for (std::size_t i = 0; i < k; ++i) CHECK_THAT(sv[i], WithinAbs(ref[i], 1e-11));
    const double nuclear = std::accumulate(sv.begin(), sv.end(), 0.0);
    CHECK_THAT(nuclear_norm(m), WithinAbs(nuclear, 1e-12));
  }
}

TEST_CASE("real_svd factors reproduce the matrix", "[linalg][property]") {
  Rng rng(17);
  for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 5}, {8, 3}, {3, 8}}) {
    const RMatrix m = random_real(r, c, rng);
    const auto svd = real_svd(m);
    RMatrix rebuilt(r, c);
    for (std::size_t s = 0; s < svd.singular_values.size(); ++s)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) rebuilt(i, j) += svd.u(i, s) * svd.singular_values[s] * svd.v(j, s);
    CHECK(max_abs_diff(rebuilt, m) <= 1e-12);
  }
}

TEST_CASE("psd_sqrt", "[linalg]") {
  CHECK(max_abs_diff(psd_sqrt(CMatrix::identity(3)), CMatrix::identity(3)) <= 1e-15);

  const std::vector<cplx> d49{4.0, 9.0};
  const std::vector<cplx> d23{2.0, 3.0};
  CHECK(max_abs_diff(psd_sqrt(CMatrix::diagonal(d49)), CMatrix::diagonal(d23)) <= 1e-14);

  const std::vector<cplx> neg{1.0, -1.0};
  CHECK_THROWS_AS(psd_sqrt(CMatrix::diagonal(neg)), NotPsdError);

  // Tiny negative rounding is clamped rather than rejected.
  const std::vector<cplx> tiny{1.0, -1e-11};
  const CMatrix r = psd_sqrt(CMatrix::diagonal(tiny));
  CHECK(r(1, 1) == cplx(0.0));
}

TEST_CASE("psd_sqrt squares back for random PSD matrices", "[linalg][property]") {
  Rng rng(23);
  for (std::size_t n : {2u, 4u, 9u, 16u, 25u}) {
    const CMatrix g = random_hermitian(n, rng);
    const CMatrix m = g * g;  // PSD
    const CMatrix r = psd_sqrt(m);
    CHECK(max_abs_diff(r * r, m) <= 1e-9 * (1.0 + m.max_abs()));
    CHECK(min_eigenvalue(r) >= -1e-10);
  }
}

TEST_CASE("kron", "[linalg]") {
  CHECK(kron(CMatrix::identity(2), CMatrix::identity(3)) == CMatrix::identity(6));

  const std::vector<cplx> a{1.0, 2.0};
  const std::vector<cplx> b{1.0, 0.0};
  const std::vector<cplx> ab{1.0, 0.0, 2.0, 0.0};
  CHECK(kron(CMatrix::diagonal(a), CMatrix::diagonal(b)) == CMatrix::diagonal(ab));

  CMatrix e00(3, 3), e11(3, 3);
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  const CMatrix k = kron(e00, e11);
  REQUIRE(k.rows() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) CHECK(k(i, j) == cplx(i == 1 && j == 1 ? 1.0 : 0.0));
}

TEST_CASE("partial transpose", "[linalg]") {
  Rng rng(3);
  SECTION("real product states stay PSD and transpose the first factor") {
    std::normal_distribution<double> g(0.0, 1.0);
    RMatrix x(2, 2);
    for (auto& v : x.data()) v = g(rng);
    CMatrix rho_a = to_complex(x * x.transpose());
    rho_a *= cplx(1.0 / rho_a.trace().real());
    const CMatrix rho_b = random_mixed_state(3, rng);
    const CMatrix pt = partial_transpose(kron(rho_a, rho_b), 2, 3, Subsystem::A);
    CHECK(max_abs_diff(pt, kron(rho_a.transpose(), rho_b)) <= 1e-15);
    CHECK(min_eigenvalue(pt) >= -1e-12);
  }
  SECTION("involution on either side") {
    const CMatrix rho = random_mixed_state(6, rng);
    CHECK(partial_transpose(partial_transpose(rho, 2, 3, Subsystem::A), 2, 3, Subsystem::A) == rho);
    CHECK(partial_transpose(partial_transpose(rho, 2, 3, Subsystem::B), 2, 3, Subsystem::B) == rho);
    // Transposing both factors is the full transpose.
    CHECK(partial_transpose(partial_transpose(rho, 2, 3, Subsystem::A), 2, 3, Subsystem::B) == rho.transpose());
  }
  SECTION("matches brute-force enumeration") {
    const CMatrix rho = random_mixed_state(12, rng);
    CHECK(partial_transpose(rho, 3, 4, Subsystem::A) == oracle::partial_transpose_a(rho, 3, 4));
  }
  SECTION("maximally entangled state is NPT") {
    CHECK_THAT(min_eigenvalue(partial_transpose(psi_plus_projector(3), 3, 3, Subsystem::A)),
               WithinAbs(-1.0 / 3.0, 1e-12));
  }
  SECTION("Horodecki a-state is PPT") {
    const DensityMatrix rho = horodecki_a(0.5);
    CHECK(min_eigenvalue(partial_transpose(rho.matrix, 3, 3, Subsystem::A)) >= -1e-10);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(partial_transpose(CMatrix::identity(9), 2, 4, Subsystem::A), DimensionError);
  }
}

TEST_CASE("partial trace", "[linalg]") {
  Rng rng(9);
  const CMatrix a = random_mixed_state(2, rng);
  const CMatrix b = random_mixed_state(3, rng);
  const CMatrix ab = kron(a, b);
  CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::B), a) <= 1e-15);
  CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::A), b) <= 1e-15);
}
