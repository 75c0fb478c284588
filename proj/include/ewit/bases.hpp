#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ewit/matrix.hpp"

namespace ewit {

enum class BasisKind {
  Generator,  // scaled SU(d) generators, d^2 - 1 operators
  Unit,       // Hermitian matrix-unit combinations, d^2 operators
};

std::string_view to_string(BasisKind kind);
/// Accepts "generator" and "unit"; throws DomainError otherwise.
BasisKind parse_basis_kind(std::string_view name);

/// An ordered set of Hermitian d x d operators. Immutable once built.
class OperatorBasis {
 public:
  OperatorBasis(std::size_t dim, BasisKind kind, std::vector<CMatrix> operators);

  std::size_t dim() const { return dim_; }
  BasisKind kind() const { return kind_; }
  std::size_t size() const { return operators_.size(); }
  const CMatrix& operator[](std::size_t i) const { return operators_[i]; }
  const std::vector<CMatrix>& operators() const { return operators_; }

 private:
  std::size_t dim_;
  BasisKind kind_;
  std::vector<CMatrix> operators_;
};

/// Generalized Gell-Mann generators of su(d) with Tr(g_i g_j) = 2 delta_ij.
/// Order: all symmetric u_{jk} (j<k lexicographic), all antisymmetric v_{jk},
/// then the diagonal w_1 .. w_{d-1}.
std::vector<CMatrix> su_generators(std::size_t d);

/// su_generators scaled by sqrt(d / (2(d-1))), so that sum_i <a|O_i|a>^2 = 1 on pure states.
OperatorBasis first_set(std::size_t d);

/// E_aa (a = 0..d-1), then (E_ab + E_ba)/sqrt2 for a<b, then i(E_ba - E_ab)/sqrt2 for a<b.
OperatorBasis unit_set(std::size_t d);

OperatorBasis make_basis(BasisKind kind, std::size_t d);

/// Expectation values Tr(O_i rho) for a single-party state.
std::vector<double> expectation_vector(const CMatrix& rho, const OperatorBasis& basis);

/// sum_i Tr(O_i rho)^2, the squared radius of rho's image in the single-particle feasible region.
double fr_norm(const CMatrix& rho, const OperatorBasis& basis);

}  // namespace ewit
