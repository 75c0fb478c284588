#include "ewit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ewit {

namespace {

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                         ", expected square");
  }
}

template <class T>
double defect(const Matrix<T>& m) {
  require_square(m.rows(), m.cols(), "hermiticity check");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, static_cast<double>(std::abs(m(i, j) - ewit::conj(m(j, i)))));
  return worst;
}

template <class T>
double real_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return x.real();
  } else {
    return x;
  }
}

// Tangent of the Jacobi rotation angle, t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)).
double rotation_tangent(double theta) {
  if (std::abs(theta) > 1e150) return 0.5 / theta;
  const double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  return theta < 0.0 ? -t : t;
}

// Cyclic two-sided Jacobi. `a` is overwritten; on return its diagonal holds the
// eigenvalues and `v` the matching eigenvectors (columns).
template <class T>
void jacobi_sweeps(Matrix<T>& a, Matrix<T>& v, const Tolerances& tol) {
  const std::size_t n = a.rows();
  v = Matrix<T>::identity(n);
  const double target = tol.jacobi_offdiag * a.frobenius_norm();

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= target) return;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double r = std::abs(apq);
        if (r < std::numeric_limits<double>::min()) continue;

        // conj(phase) rotates a_pq onto the positive real axis.
        const T phase_conj = ewit::conj(apq / r);
        const double theta = (real_of(a(q, q)) - real_of(a(p, p))) / (2.0 * r);
        const double t = rotation_tangent(theta);
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const T g_pp = c;
        const T g_pq = s;
        const T g_qp = -s * phase_conj;
        const T g_qq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k);
          const T aqk = a(q, k);
          a(p, k) = ewit::conj(g_pp) * apk + ewit::conj(g_qp) * aqk;
          a(q, k) = ewit::conj(g_pq) * apk + ewit::conj(g_qq) * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = real_of(a(p, p));
        a(q, q) = real_of(a(q, q));

        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
}

template <class T>
std::pair<std::vector<double>, Matrix<T>> eig_impl(const Matrix<T>& m, const Tolerances& tol) {
  require_square(m.rows(), m.cols(), "hermitian_eig");
  const double scale = std::max(1.0, m.max_abs());
  const double d = defect(m);
  if (d > tol.hermitian * scale) {
    throw SymmetryError("hermitian_eig: input deviates from its adjoint by " + std::to_string(d));
  }
  const std::size_t n = m.rows();
  Matrix<T> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + ewit::conj(m(j, i)));

  Matrix<T> v;
  jacobi_sweeps(a, v, tol);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return real_of(a(x, x)) < real_of(a(y, y)); });

  std::vector<double> values(n);
  Matrix<T> vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = real_of(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
  return {std::move(values), std::move(vectors)};
}

template <class T>
Matrix<T> psd_sqrt_impl(const Matrix<T>& m, const Tolerances& tol) {
  auto [values, vectors] = eig_impl(m, tol);
  const std::size_t n = values.size();
  for (double& lambda : values) {
    if (lambda < -tol.psd_error) {
      throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lambda) + " is negative");
    }
    lambda = lambda < 0.0 ? 0.0 : std::sqrt(lambda);
  }
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T s{};
      for (std::size_t k = 0; k < n; ++k) s += vectors(i, k) * values[k] * ewit::conj(vectors(j, k));
      out(i, j) = s;
      out(j, i) = ewit::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = real_of(out(i, i));
  return out;
}

template <class T>
Matrix<T> kron_impl(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

void require_bipartite(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, const char* what) {
  require_square(rho.rows(), rho.cols(), what);
  if (dim_a == 0 || dim_b == 0 || rho.rows() != dim_a * dim_b) {
    throw DimensionError(std::string(what) + ": matrix is " + rho.shape_string() + " but dA*dB = " +
                         std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
}

}  // namespace

double hermiticity_defect(const CMatrix& m) { return defect(m); }
double symmetry_defect(const RMatrix& m) { return defect(m); }

Spectrum hermitian_eig(const CMatrix& m, const Tolerances& tol) {
  auto [values, vectors] = eig_impl(m, tol);
  return Spectrum{std::move(values), std::move(vectors)};
}

SymmetricSpectrum symmetric_eig(const RMatrix& m, const Tolerances& tol) {
  auto [values, vectors] = eig_impl(m, tol);
  return SymmetricSpectrum{std::move(values), std::move(vectors)};
}

double min_eigenvalue(const CMatrix& m, const Tolerances& tol) {
  const auto spectrum = hermitian_eig(m, tol);
  return spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
}

RealSvd real_svd(const RMatrix& m, const Tolerances& tol) {
  if (m.rows() < m.cols()) {
    RealSvd t = real_svd(m.transpose(), tol);
    std::swap(t.u, t.v);
    return t;
  }
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  RMatrix w = m;
  RMatrix v = RMatrix::identity(n);
  constexpr double kOrthTol = 1e-15;

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += w(k, i) * w(k, i);
          beta += w(k, j) * w(k, j);
          gamma += w(k, i) * w(k, j);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kOrthTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double t = rotation_tangent((beta - alpha) / (2.0 * gamma));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          w(k, i) = c * wi - s * wj;
          w(k, j) = s * wi + c * wj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += w(k, j) * w(k, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  RealSvd out;
  out.singular_values.resize(n);
  out.u = RMatrix(rows, n);
  out.v = RMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    const double s = sigma[src];
    out.singular_values[c] = s;
    for (std::size_t k = 0; k < n; ++k) out.v(k, c) = v(k, src);
    if (s > 0.0)
      for (std::size_t k = 0; k < rows; ++k) out.u(k, c) = w(k, src) / s;
  }
  return out;
}

std::vector<double> singular_values(const RMatrix& m, const Tolerances& tol) {
  return real_svd(m, tol).singular_values;
}

double nuclear_norm(const RMatrix& m, const Tolerances& tol) {
  const auto s = singular_values(m, tol);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol) { return psd_sqrt_impl(m, tol); }
RMatrix psd_sqrt(const RMatrix& m, const Tolerances& tol) { return psd_sqrt_impl(m, tol); }

CMatrix kron(const CMatrix& a, const CMatrix& b) { return kron_impl(a, b); }
RMatrix kron(const RMatrix& a, const RMatrix& b) { return kron_impl(a, b); }

CMatrix partial_transpose(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, Subsystem which) {
  require_bipartite(rho, dim_a, dim_b, "partial_transpose");
  CMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
          const std::size_t row = i * dim_b + j;
          const std::size_t col = k * dim_b + l;
          out(row, col) = which == Subsystem::A ? rho(k * dim_b + j, i * dim_b + l) : rho(i * dim_b + l, k * dim_b + j);
        }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b, Subsystem traced_out) {
  require_bipartite(rho, dim_a, dim_b, "partial_trace");
  if (traced_out == Subsystem::B) {
    CMatrix out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t j = 0; j < dim_b; ++j) out(i, k) += rho(i * dim_b + j, k * dim_b + j);
    return out;
  }
  CMatrix out(dim_b, dim_b);
  for (std::size_t j = 0; j < dim_b; ++j)
    for (std::size_t l = 0; l < dim_b; ++l)
      for (std::size_t i = 0; i < dim_a; ++i) out(j, l) += rho(i * dim_b + j, i * dim_b + l);
  return out;
}

}  // namespace ewit
