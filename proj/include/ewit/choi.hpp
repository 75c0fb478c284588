#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ewit/states.hpp"
#include "ewit/tolerances.hpp"

namespace ewit {

/// Closed-form detection and PPT data for the generalized Choi family.
struct ChoiReport {
  ChoiParams params;
  double detection_lhs = 0.0;
  double ppt_bound = 0.0;
  bool ppt = false;
  bool detected = false;
};

/// V_k = sum_{j=1}^{d-1} mu_j w^{jk}, w = exp(2 pi i / d).
std::complex<double> v_k(std::span<const double> mu, std::size_t d, std::size_t k);

/// 1 - [(d-1) p + (1/d) sum_{k=0}^{d-1} |p + (1-p) V_k|]; negative means detected.
double detection_closed_form(const ChoiParams& params);

/// m/(m-1) + sqrt(m/(m-1)^2) for 0 <= m <= 1, evaluated as sqrt(m)/(1+sqrt(m)); 0 for m <= 0.
double ppt_pair_term(double product);

/// Largest p for which the Choi state is PPT. The partial transpose splits into
/// 2x2 blocks coupling B-offsets k and d-k, so the bound is the minimum of
/// ppt_pair_term(mu_k mu_{d-k}) over k = 1..d-1; for k = d-k this is mu_k/(1+mu_k).
double ppt_bound(std::span<const double> mu, std::size_t d);

ChoiReport choi_report(const ChoiParams& params, const Tolerances& tol = kTol);

// --- d = 3 -------------------------------------------------------------------

/// 2 - 6p - [(1-3p)^2 + 3(p-1)^2 (1-2 mu1)^2]^{1/2}, three times detection_closed_form.
double d3_detection(double p, double mu1);

/// True inside the regions known to be separable:
/// mu1 <= 1/2 and p <= mu1/(1+mu1), or mu1 >= 1/2 and p <= (1-mu1)/(2-mu1).
bool d3_is_proved_separable(double p, double mu1);

// --- d = 4 -------------------------------------------------------------------

/// 1/4 {3 - 12p - |p + (1-p)(1-2mu1-2mu3)| - 2 sqrt(p^2 - 2p(1-p)(1-mu1-mu3)
///      + (1-p)^2 [1 - 2mu1(1-mu1) - 2mu3(1-mu3)])}
double d4_detection(double p, double mu1, double mu3);

struct D4Constants {
  double a1;  // (9 - 4 sqrt2) / 29
  double a2;  // (9 + 4 sqrt2) / 29
  double a3;  // (2641 - 1740 sqrt2) / 7053
};
D4Constants d4_region_constants();

/// Upper edge of the detected band, the PPT pair term for mu1 mu3.
double d4_c2(double mu1, double mu3);
/// (2(mu1+mu3) - 1) / (2(mu1+mu3)); where p + (1-p)(1-2mu1-2mu3) changes sign.
double d4_c3(double mu1, double mu3);
/// mu1 band edges of the first detected-region table as functions of mu3.
double d4_b1(double mu3);
double d4_b2(double mu3);
double d4_b3(double mu3);

// --- d = 5 -------------------------------------------------------------------

/// mu_1, mu_2 solved from Im V_1 = 0 and sum(mu) = 1, or nullopt when the
/// result leaves the simplex.
std::optional<std::vector<double>> d5_imv1_zero_mu(double mu3, double mu4, const Tolerances& tol = kTol);

/// As d5_imv1_zero_mu but returns d=5 ChoiParams with the given p, throwing
/// DomainError outside the simplex.
ChoiParams d5_imv1_zero(double mu3, double mu4, double p = 0.0, const Tolerances& tol = kTol);

}  // namespace ewit
