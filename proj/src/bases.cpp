#include "ewit/bases.hpp"

#include <cmath>
#include <string>

#include "ewit/error.hpp"

namespace ewit {

namespace {

void require_dim(std::size_t d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": dimension must be at least 2, got " + std::to_string(d));
}

CMatrix unit(std::size_t d, std::size_t r, std::size_t c, cplx value = 1.0) {
  CMatrix m(d, d);
  m(r, c) = value;
  return m;
}

}  // namespace

std::string_view to_string(BasisKind kind) { return kind == BasisKind::Generator ? "generator" : "unit"; }

BasisKind parse_basis_kind(std::string_view name) {
  if (name == "generator") return BasisKind::Generator;
  if (name == "unit") return BasisKind::Unit;
  throw DomainError("unknown basis '" + std::string(name) + "' (expected unit or generator)");
}

OperatorBasis::OperatorBasis(std::size_t dim, BasisKind kind, std::vector<CMatrix> operators)
    : dim_(dim), kind_(kind), operators_(std::move(operators)) {
  for (const auto& op : operators_) {
    if (op.rows() != dim_ || op.cols() != dim_) {
      throw DimensionError("operator basis of dimension " + std::to_string(dim_) + " given a " + op.shape_string() +
                           " operator");
    }
  }
}

std::vector<CMatrix> su_generators(std::size_t d) {
  require_dim(d, "su_generators");
  std::vector<CMatrix> out;
  out.reserve(d * d - 1);
  const cplx i{0.0, 1.0};
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) out.push_back(unit(d, j, k) + unit(d, k, j));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) out.push_back(unit(d, j, k, -i) + unit(d, k, j, i));
  for (std::size_t l = 1; l < d; ++l) {
    const double norm = -std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    CMatrix w(d, d);
    for (std::size_t k = 0; k < l; ++k) w(k, k) = norm;
    w(l, l) = -norm * static_cast<double>(l);
    out.push_back(std::move(w));
  }
  return out;
}

OperatorBasis first_set(std::size_t d) {
  auto ops = su_generators(d);
  const double scale = std::sqrt(static_cast<double>(d) / (2.0 * static_cast<double>(d - 1)));
  for (auto& op : ops) op *= scale;
  return OperatorBasis(d, BasisKind::Generator, std::move(ops));
}

OperatorBasis unit_set(std::size_t d) {
  require_dim(d, "unit_set");
  std::vector<CMatrix> ops;
  ops.reserve(d * d);
  const double h = 1.0 / std::sqrt(2.0);
  const cplx ih{0.0, h};
  for (std::size_t a = 0; a < d; ++a) ops.push_back(unit(d, a, a));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) ops.push_back(unit(d, a, b, h) + unit(d, b, a, h));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) ops.push_back(unit(d, b, a, ih) + unit(d, a, b, -ih));
  return OperatorBasis(d, BasisKind::Unit, std::move(ops));
}

OperatorBasis make_basis(BasisKind kind, std::size_t d) {
  return kind == BasisKind::Generator ? first_set(d) : unit_set(d);
}

std::vector<double> expectation_vector(const CMatrix& rho, const OperatorBasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw DimensionError("expectation_vector: state is " + rho.shape_string() + " but basis dimension is " +
                         std::to_string(basis.dim()));
  }
  std::vector<double> p;
  p.reserve(basis.size());
  for (const auto& op : basis.operators()) p.push_back(trace_of_product(op, rho).real());
  return p;
}

double fr_norm(const CMatrix& rho, const OperatorBasis& basis) {
  double s = 0.0;
  for (double x : expectation_vector(rho, basis)) s += x * x;
  return s;
}

}  // namespace ewit
