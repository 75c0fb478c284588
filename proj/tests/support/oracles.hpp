#pragma once

// Reference routines for tests. They deliberately go through Eigen (or plain
// enumeration) rather than the library code they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ewit/matrix.hpp"

namespace oracle {

inline Eigen::MatrixXcd to_eigen(const ewit::CMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Eigen::MatrixXd to_eigen(const ewit::RMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline std::vector<double> eigenvalues(const ewit::CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline std::vector<double> singular_values(const ewit::RMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& v = svd.singularValues();
  return {v.data(), v.data() + v.size()};
}

inline double nuclear_norm(const ewit::RMatrix& m) {
  double s = 0.0;
  for (double x : oracle::singular_values(m)) s += x;
  return s;
}

/// Brute-force partial transpose on subsystem A by explicit index enumeration
/// through a 4-index view: rho[(i,j),(k,l)] -> rho[(k,j),(i,l)].
inline ewit::CMatrix partial_transpose_a(const ewit::CMatrix& rho, std::size_t da, std::size_t db) {
  ewit::CMatrix out(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t c = 0; c < rho.cols(); ++c) {
      const std::size_t i = r / db, j = r % db, k = c / db, l = c % db;
      out(k * db + j, i * db + l) = rho(r, c);
    }
  (void)da;
  return out;
}

inline double min_pt_eigenvalue(const ewit::CMatrix& rho, std::size_t da, std::size_t db) {
  return oracle::eigenvalues(oracle::partial_transpose_a(rho, da, db)).front();
}

/// Tr(rho (Oa x Ob)) by forming the Kronecker product with Eigen.
inline std::complex<double> product_expectation(const ewit::CMatrix& rho, const ewit::CMatrix& oa,
                                                const ewit::CMatrix& ob) {
  const Eigen::MatrixXcd a = to_eigen(oa);
  const Eigen::MatrixXcd b = to_eigen(ob);
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return (to_eigen(rho) * k).trace();
}

}  // namespace oracle
