#include "ewit/choi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ewit/error.hpp"

namespace ewit {

std::complex<double> v_k(std::span<const double> mu, std::size_t d, std::size_t k) {
  if (d < 2 || mu.size() != d - 1) {
    throw DimensionError("v_k: expected " + std::to_string(d < 2 ? 0 : d - 1) + " mu values, got " +
                         std::to_string(mu.size()));
  }
  std::complex<double> s{};
  for (std::size_t j = 1; j < d; ++j) {
    // Reduce j*k mod d before forming the angle so that w^{jk} is as exact as possible.
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / static_cast<double>(d);
    s += mu[j - 1] * std::polar(1.0, angle);
  }
  return s;
}

double detection_closed_form(const ChoiParams& params) {
  params.validate();
  const std::size_t d = params.d;
  const double p = params.p;
  double sum = 0.0;
  for (std::size_t k = 0; k < d; ++k) sum += std::abs(p + (1.0 - p) * v_k(params.mu, d, k));
  return 1.0 - (static_cast<double>(d - 1) * p + sum / static_cast<double>(d));
}

double ppt_pair_term(double product) {
  if (product <= 0.0) return 0.0;
  // Same value for product < 1 without the cancellation near product = 1.
  const double r = std::sqrt(product);
  return r / (1.0 + r);
}

double ppt_bound(std::span<const double> mu, std::size_t d) {
  if (d < 2 || mu.size() != d - 1) {
    throw DimensionError("ppt_bound: expected " + std::to_string(d < 2 ? 0 : d - 1) + " mu values, got " +
                         std::to_string(mu.size()));
  }
  double bound = 1.0;
  for (std::size_t k = 1; k < d; ++k) bound = std::min(bound, ppt_pair_term(mu[k - 1] * mu[d - k - 1]));
  return bound;
}

ChoiReport choi_report(const ChoiParams& params, const Tolerances& tol) {
  ChoiReport r;
  r.params = params;
  r.detection_lhs = detection_closed_form(params);
  r.ppt_bound = ppt_bound(params.mu, params.d);
  r.ppt = params.p <= r.ppt_bound + tol.ppt_bound;
  r.detected = r.detection_lhs < -tol.detection;
  return r;
}

double d3_detection(double p, double mu1) {
  const double a = 1.0 - 3.0 * p;
  const double b = (p - 1.0) * (1.0 - 2.0 * mu1);
  return 2.0 - 6.0 * p - std::sqrt(a * a + 3.0 * b * b);
}

bool d3_is_proved_separable(double p, double mu1) {
  if (mu1 <= 0.5 && p <= mu1 / (1.0 + mu1)) return true;
  if (mu1 >= 0.5 && p <= (1.0 - mu1) / (2.0 - mu1)) return true;
  return false;
}

double d4_detection(double p, double mu1, double mu3) {
  const double q = 1.0 - p;
  const double linear = std::abs(p + q * (1.0 - 2.0 * mu1 - 2.0 * mu3));
  const double radicand = p * p - 2.0 * p * q * (1.0 - mu1 - mu3) +
                          q * q * (1.0 - 2.0 * mu1 * (1.0 - mu1) - 2.0 * mu3 * (1.0 - mu3));
  return 0.25 * (3.0 - 12.0 * p - linear - 2.0 * std::sqrt(std::max(0.0, radicand)));
}

D4Constants d4_region_constants() {
  const double r2 = std::numbers::sqrt2;
  return D4Constants{(9.0 - 4.0 * r2) / 29.0, (9.0 + 4.0 * r2) / 29.0, (2641.0 - 1740.0 * r2) / 7053.0};
}

double d4_c2(double mu1, double mu3) {
  return ppt_pair_term(mu1 * mu3);
}

double d4_c3(double mu1, double mu3) {
  const double s = mu1 + mu3;
  return (2.0 * s - 1.0) / (2.0 * s);
}

double d4_b1(double mu3) { return 4.0 + 97.0 * mu3 - 28.0 * std::sqrt(mu3 + 12.0 * mu3 * mu3); }

double d4_b2(double mu3) {
  const double t = 3.0 * mu3 - 1.0;
  return (48.0 - 73.0 * mu3 - 4.0 * std::numbers::sqrt2 * std::sqrt(t * t)) / 71.0;
}

double d4_b3(double mu3) { return (4.0 - 7.0 * mu3 + std::sqrt(mu3 * (8.0 - 15.0 * mu3))) / 8.0; }

std::optional<std::vector<double>> d5_imv1_zero_mu(double mu3, double mu4, const Tolerances& tol) {
  const double r5 = std::sqrt(5.0);
  const double mu2 = (mu3 * (1.0 + r5) + 2.0 * (2.0 * mu4 - 1.0)) / (r5 - 3.0);
  const double mu1 = 0.5 * ((1.0 - r5) * mu2 + (r5 - 1.0) * mu3 + 2.0 * mu4);
  std::vector<double> mu{mu1, mu2, mu3, mu4};
  for (double& m : mu) {
    if (m < -tol.simplex || m > 1.0 + tol.simplex) return std::nullopt;
    m = std::clamp(m, 0.0, 1.0);
  }
  double sum = 0.0;
  for (double m : mu) sum += m;
  if (std::abs(sum - 1.0) > tol.simplex) return std::nullopt;
  return mu;
}

ChoiParams d5_imv1_zero(double mu3, double mu4, double p, const Tolerances& tol) {
  auto mu = d5_imv1_zero_mu(mu3, mu4, tol);
  if (!mu) {
    throw DomainError("d5_imv1_zero: (mu3, mu4) = (" + std::to_string(mu3) + ", " + std::to_string(mu4) +
                      ") puts mu_1 or mu_2 outside the simplex");
  }
  ChoiParams params{5, p, std::move(*mu)};
  params.validate(tol);
  return params;
}

}  // namespace ewit
