#include <catch_amalgamated.hpp>

#include <cmath>

#include "ewit/linalg.hpp"
#include "ewit/states.hpp"

using namespace ewit;
using Catch::Matchers::WithinAbs;

namespace {

bool has_violation(const DensityValidation& v, const std::string& name) {
  for (const auto& x : v.violations)
    if (x.invariant == name) return true;
  return false;
}

double min_pt(const DensityMatrix& rho) {
  return min_eigenvalue(partial_transpose(rho.matrix, rho.dim_a, rho.dim_b, Subsystem::A));
}

}  // namespace

TEST_CASE("Horodecki alpha family", "[states]") {
  const auto mid = horodecki_alpha(2.5);
  // |01> (sigma+) and |10> (sigma-) carry the same weight at the symmetric point.
  CHECK_THAT(mid.matrix(1, 1).real(), WithinAbs(5.0 / 42.0, 1e-15));
  CHECK_THAT(mid.matrix(3, 3).real(), WithinAbs(5.0 / 42.0, 1e-15));
  const double plus_total = (mid.matrix(1, 1) + mid.matrix(5, 5) + mid.matrix(6, 6)).real();
  CHECK_THAT(plus_total, WithinAbs(5.0 / 14.0, 1e-15));

  const auto zero = horodecki_alpha(0.0);
  CHECK(zero.matrix(1, 1) == cplx(0.0));
  CHECK(zero.matrix(5, 5) == cplx(0.0));
  CHECK(zero.matrix(6, 6) == cplx(0.0));

  CHECK_THROWS_AS(horodecki_alpha(-0.1), DomainError);
  CHECK_THROWS_AS(horodecki_alpha(5.1), DomainError);
}

TEST_CASE("Horodecki alpha is the d=3 Choi state with p=2/7", "[states][property]") {
  for (int k = 0; k <= 10; ++k) {
    const double alpha = 0.5 * k;
    const ChoiParams params{3, 2.0 / 7.0, {alpha / 5.0, 1.0 - alpha / 5.0}};
    CHECK(max_abs_diff(horodecki_alpha(alpha).matrix, choi_state(params).matrix) <= 1e-12);
  }
}

TEST_CASE("UPB tiles state", "[states]") {
  const auto rho = upb_tiles();
  CHECK(rho.matrix(0, 0) == cplx(7.0 / 72.0));
  CHECK(rho.matrix(4, 4) == cplx(16.0 / 72.0));
  CHECK(rho.matrix(0, 2) == cplx(-2.0 / 72.0));
  CHECK_THAT(rho.matrix.trace().real(), WithinAbs(1.0, 1e-15));
  CHECK(validate_density(rho.matrix, 3, 3).ok());
  CHECK(min_pt(rho) >= -1e-12);  // bound entangled: PPT
}

TEST_CASE("Horodecki a family", "[states]") {
  const auto half = horodecki_a(0.5);
  CHECK_THAT(half.matrix(0, 0).real(), WithinAbs(0.5 / 5.0, 1e-15));
  CHECK_THAT(half.matrix(6, 8).real(), WithinAbs(0.0866025403784438597, 1e-15));
  CHECK_THAT(half.matrix(6, 6).real(), WithinAbs(0.75 / 5.0, 1e-15));

  const auto edge = horodecki_a(1.0 - 1e-12);
  CHECK(std::abs(edge.matrix(6, 8)) < 1e-6);

  for (int k = 1; k < 50; ++k) {
    const auto rho = horodecki_a(0.02 * k);
    CHECK(validate_density(rho.matrix, 3, 3).ok());
    CHECK(min_pt(rho) >= -1e-10);
  }
  CHECK_THROWS_AS(horodecki_a(0.0), DomainError);
  CHECK_THROWS_AS(horodecki_a(1.0), DomainError);
}

TEST_CASE("Choi states", "[states]") {
  SECTION("p = 0 is diagonal") {
    const auto rho = choi_state({4, 0.0, {0.2, 0.5, 0.3}});
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j)
        if (i != j) CHECK(rho.matrix(i, j) == cplx(0.0));
    CHECK_THAT(rho.matrix(1, 1).real(), WithinAbs(0.2 / 4.0, 1e-15));  // |0,1>: offset 1
    CHECK_THAT(rho.matrix(3, 3).real(), WithinAbs(0.3 / 4.0, 1e-15));  // |0,3>: offset 3
  }
  SECTION("|psi_00> contributes p/d to every |ii><jj|") {
    const auto rho = choi_state({3, 1.0 / 3.0, {0.5, 0.5}});
    CHECK_THAT(rho.matrix(0, 4).real(), WithinAbs(1.0 / 9.0, 1e-15));
    CHECK_THAT(rho.matrix(4, 8).real(), WithinAbs(1.0 / 9.0, 1e-15));
  }
  SECTION("parameter validation") {
    CHECK_THROWS_AS(choi_state({3, 0.4, {0.5, 0.5}}), DomainError);
    CHECK_THROWS_AS(choi_state({3, -0.1, {0.5, 0.5}}), DomainError);
    CHECK_THROWS_AS(choi_state({3, 0.1, {0.5, 0.6}}), DomainError);
    CHECK_THROWS_AS(choi_state({3, 0.1, {1.2, -0.2}}), DomainError);
    CHECK_THROWS_AS(choi_state({4, 0.1, {0.5, 0.5}}), DomainError);
  }
  SECTION("random draws are valid states") {
    Rng rng(8);
    for (std::size_t d = 3; d <= 5; ++d)
      for (int rep = 0; rep < 10; ++rep) CHECK(validate_density(choi_state(random_choi_params(d, rng)).matrix, d, d).ok());
  }
}

TEST_CASE("random product states", "[states]") {
  const auto s1 = random_product_state(3, 4, 99);
  const auto s2 = random_product_state(3, 4, 99);
  CHECK(s1.state.matrix == s2.state.matrix);
  CHECK(s1.a == s2.a);
  CHECK(random_product_state(3, 4, 100).state.matrix != s1.state.matrix);

  CHECK_THAT(trace_of_product(s1.state.matrix, s1.state.matrix).real(), WithinAbs(1.0, 1e-12));
  CHECK(min_pt(s1.state) >= -1e-12);
  CHECK(validate_density(s1.state.matrix, 3, 4).ok());
}

TEST_CASE("validate_density", "[states]") {
  CHECK(validate_density(CMatrix::identity(9) * cplx(1.0 / 9.0), 3, 3).ok());

  const std::vector<cplx> bad{2.0, -1.0};
  const auto r = validate_density(CMatrix::diagonal(bad), 2, 1);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.state.has_value());
  CHECK(has_violation(r, "psd"));
  CHECK_FALSE(has_violation(r, "trace"));  // 2 - 1 = 1

  const std::vector<cplx> worse{2.0, -2.0};
  const auto r2 = validate_density(CMatrix::diagonal(worse), 2, 1);
  CHECK(has_violation(r2, "psd"));
  CHECK(has_violation(r2, "trace"));
  for (const auto& v : r2.violations)
    if (v.invariant == "psd") CHECK_THAT(v.magnitude, WithinAbs(2.0, 1e-12));

  CMatrix skew = CMatrix::identity(2) * cplx(0.5);
  skew(0, 1) = 0.1;
  CHECK(has_violation(validate_density(skew, 2, 1), "hermitian"));

  CHECK(has_violation(validate_density(CMatrix::identity(4), 3, 3), "dimension"));
  CHECK(has_violation(validate_density(CMatrix(2, 3), 2, 1), "square"));
  CHECK_THROWS_AS(require_density(CMatrix::diagonal(bad), 2, 1), DomainError);
}

TEST_CASE("catalog constructors produce valid states", "[states][property]") {
  for (double alpha : {0.0, 1.3, 2.5, 4.0, 5.0}) CHECK(validate_density(horodecki_alpha(alpha).matrix, 3, 3).ok());
  CHECK(validate_density(upb_tiles().matrix, 3, 3).ok());
  for (double a : {0.01, 0.5, 0.99}) CHECK(validate_density(horodecki_a(a).matrix, 3, 3).ok());
}

TEST_CASE("family registry", "[states]") {
  std::vector<std::string> names;
  for (const auto& f : state_families()) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"horodecki-alpha", "upb-tiles", "horodecki-a", "choi"});

  FamilyArgs args;
  args.scalars["alpha"] = 4.0;
  CHECK(make_family_state("horodecki-alpha", args).matrix == horodecki_alpha(4.0).matrix);
  CHECK_THROWS_AS(make_family_state("horodecki-a", args), DomainError);  // missing a
  CHECK_THROWS_AS(make_family_state("werner", args), DomainError);

  FamilyArgs choi;
  choi.d = 3;
  choi.scalars["p"] = 0.25;
  choi.mu = {0.3, 0.7};
  CHECK(make_family_state("choi", choi).matrix == choi_state({3, 0.25, {0.3, 0.7}}).matrix);
}

TEST_CASE("mu list parsing", "[states]") {
  CHECK(parse_mu_list("0.3,0.7", 3) == std::vector<double>{0.3, 0.7});
  const auto inferred = parse_mu_list("0.3", 3);
  REQUIRE(inferred.size() == 2);
  CHECK_THAT(inferred[1], WithinAbs(0.7, 1e-15));
  const auto d4 = parse_mu_list("0.2,0.3", 4);
  REQUIRE(d4.size() == 3);
  CHECK_THAT(d4[2], WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(parse_mu_list("0.3,0.6", 3), DomainError);
  CHECK_THROWS_AS(parse_mu_list("0.3,0.7,0.1", 3), DomainError);
  CHECK_THROWS_AS(parse_mu_list("abc", 3), DomainError);
  CHECK_THROWS_AS(parse_mu_list("0.7,0.6", 4), DomainError);
}

TEST_CASE("density JSON loader", "[states]") {
  const auto rho = horodecki_a(0.3);
  const auto loaded = load_density_json(density_to_json(rho));
  CHECK(loaded.dim_a == 3);
  CHECK(loaded.dim_b == 3);
  CHECK(loaded.matrix == rho.matrix);

  CHECK_THROWS_AS(load_density_json(R"({"dA":2,"dB":1,"matrix":[[[2,0],[0,0]],[[0,0],[-1,0]]]})"), DomainError);
  CHECK_THROWS_AS(load_density_json(R"({"dA":2,"matrix":[]})"), DomainError);
  CHECK_THROWS_AS(load_density_json("not json"), DomainError);
  const auto ok = load_density_json(R"({"dA":2,"dB":1,"matrix":[[[0.5,0],[0,0.5]],[[0,-0.5],[0.5,0]]]})");
  CHECK(ok.matrix(0, 1) == cplx(0.0, 0.5));
}
