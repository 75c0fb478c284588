#include <catch_amalgamated.hpp>

#include <cmath>

#include "ewit/bases.hpp"
#include "ewit/linalg.hpp"
#include "ewit/states.hpp"

using namespace ewit;
using Catch::Matchers::WithinAbs;

namespace {

const cplx I{0.0, 1.0};

double purity(const CMatrix& rho) { return trace_of_product(rho, rho).real(); }

void check_gram(const std::vector<CMatrix>& ops, double diag) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    CHECK(hermiticity_defect(ops[i]) <= 1e-12);
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const cplx g = trace_of_product(ops[i], ops[j]);
      CHECK(std::abs(g - cplx(i == j ? diag : 0.0)) <= 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("su(2) generators are the Pauli matrices", "[bases]") {
  const auto g = su_generators(2);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == CMatrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(g[1] == CMatrix{{0.0, -I}, {I, 0.0}});
  CHECK(max_abs_diff(g[2], CMatrix{{-1.0, 0.0}, {0.0, 1.0}}) <= 1e-15);  // w_1 = -sigma_z
}

TEST_CASE("su(3) diagonal generator w_2", "[bases]") {
  const auto g = su_generators(3);
  REQUIRE(g.size() == 8);
  const double s = -std::sqrt(1.0 / 3.0);
  const std::vector<cplx> diag{s, s, -2.0 * s};
  CHECK(max_abs_diff(g[7], CMatrix::diagonal(diag)) <= 1e-15);
}

TEST_CASE("su(d) generators are traceless and orthogonal", "[bases]") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto g = su_generators(d);
    REQUIRE(g.size() == d * d - 1);
    for (const auto& op : g) CHECK(std::abs(op.trace()) <= 1e-15);
    check_gram(g, 2.0);
  }
  CHECK_THROWS_AS(su_generators(1), DomainError);
}

TEST_CASE("first set scaling", "[bases]") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto basis = first_set(d);
    CHECK(basis.kind() == BasisKind::Generator);
    const auto g = su_generators(d);
    const double scale = std::sqrt(static_cast<double>(d) / (2.0 * static_cast<double>(d - 1)));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(max_abs_diff(basis[i], g[i] * cplx(scale)) <= 1e-15);
    check_gram(basis.operators(), static_cast<double>(d) / static_cast<double>(d - 1));
  }
  // Scale is exactly 1 at d = 2.
  CHECK(max_abs_diff(first_set(2)[0], CMatrix{{0.0, 1.0}, {1.0, 0.0}}) <= 1e-15);
  CHECK_THAT(first_set(3)[0](0, 1).real(), WithinAbs(std::sqrt(0.75), 1e-15));
  CHECK_THAT(first_set(4)[0](0, 1).real(), WithinAbs(std::sqrt(4.0 / 6.0), 1e-15));
  CHECK_THROWS_AS(first_set(0), DomainError);
}

TEST_CASE("unit set", "[bases]") {
  const double h = 1.0 / std::sqrt(2.0);
  const auto b2 = unit_set(2);
  REQUIRE(b2.size() == 4);
  CHECK(b2[0] == CMatrix{{1.0, 0.0}, {0.0, 0.0}});
  CHECK(b2[1] == CMatrix{{0.0, 0.0}, {0.0, 1.0}});
  CHECK(b2[2] == CMatrix{{0.0, h}, {h, 0.0}});
  CHECK(b2[3] == CMatrix{{0.0, -I * h}, {I * h, 0.0}});

  for (std::size_t d = 2; d <= 5; ++d) {
    const auto b = unit_set(d);
    REQUIRE(b.size() == d * d);
    check_gram(b.operators(), 1.0);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(b[i].trace() - cplx(i < d ? 1.0 : 0.0)) <= 1e-15);
  }
  CHECK_THROWS_AS(unit_set(1), DomainError);
}

TEST_CASE("basis kind names", "[bases]") {
  CHECK(parse_basis_kind("unit") == BasisKind::Unit);
  CHECK(parse_basis_kind("generator") == BasisKind::Generator);
  CHECK(to_string(BasisKind::Unit) == "unit");
  CHECK_THROWS_AS(parse_basis_kind("pauli"), DomainError);
  CHECK_THROWS_AS(OperatorBasis(2, BasisKind::Unit, {CMatrix::identity(3)}), DimensionError);
}

TEST_CASE("feasible-region norm", "[bases][property]") {
  Rng rng(2024);
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto first = first_set(d);
    const auto units = unit_set(d);
    for (int rep = 0; rep < 100; ++rep) {
      const CVector psi = random_pure_vector(d, rng);
      CHECK_THAT(fr_norm(outer(psi), first), WithinAbs(1.0, 1e-12));
    }
    CHECK_THAT(fr_norm(CMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)), first), WithinAbs(0.0, 1e-15));
    for (int rep = 0; rep < 20; ++rep) {
      const CMatrix rho = random_mixed_state(d, rng);
      CHECK_THAT(fr_norm(rho, units), WithinAbs(purity(rho), 1e-12));
      CHECK(fr_norm(rho, first) <= 1.0 + 1e-12);

      const CMatrix u = random_unitary(d, rng);
      CHECK(max_abs_diff(u * u.adjoint(), CMatrix::identity(d)) <= 1e-12);
      const CMatrix rotated = u * rho * u.adjoint();
      CHECK_THAT(fr_norm(rotated, first), WithinAbs(fr_norm(rho, first), 1e-10));
    }
  }
  CHECK_THROWS_AS(fr_norm(CMatrix::identity(3), first_set(2)), DimensionError);
}
