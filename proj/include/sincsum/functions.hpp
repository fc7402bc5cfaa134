#pragma once

#include <cmath>
#include <vector>

#include "sincsum/errors.hpp"
#include "sincsum/quadrature.hpp"
#include "sincsum/specfun.hpp"

namespace sincsum {

struct JacobiParams {
  double alpha;
  double beta;

  JacobiParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > -1.0) || !(b > -1.0))
      throw domain_error("JacobiParams: alpha and beta must both exceed -1");
  }

  double gamma() const { return 0.5 * (alpha + beta + 1.0); }
  JacobiParams swapped() const { return {beta, alpha}; }
};

// Evaluation points live on (-1, 1]; the hypergeometric argument (1-x)/2 is
// kept away from 1 so the series budget always suffices.
inline constexpr double eval_margin = 0.02;

// Point on (-1, 1] carried together with its angle, x = cos(theta).
struct EvalPoint {
  double x;
  double theta;

  static EvalPoint from_theta(double t) {
    if (!(std::abs(t) < pi)) throw domain_error("EvalPoint: |theta| must be below pi");
    return {std::cos(t), t};
  }
  static EvalPoint from_x(double xv) {
    if (!(xv > -1.0) || !(xv <= 1.0)) throw domain_error("EvalPoint: x must lie in (-1, 1]");
    return {xv, std::acos(xv)};
  }
};

// Hat-normalized Jacobi function, 2F1(nu + alpha + beta + 1, -nu; alpha + 1; (1-x)/2).
// Equals 1 at x = 1 for every nu, and the exact polynomial at non-negative
// integer degrees.
inline double jacobi_hat(double nu, const JacobiParams& p, double x) {
  if (!(x >= -1.0 + eval_margin) || !(x <= 1.0))
    throw domain_error("jacobi_hat: x outside the evaluation interval");
  return gauss_2f1(nu + p.alpha + p.beta + 1.0, -nu, p.alpha + 1.0, 0.5 * (1.0 - x));
}

// Hat-normalized Gegenbauer function, the alpha = beta = gamma - 1/2 Jacobi case.
inline double gegenbauer_hat(double nu, double gamma, double x) {
  if (!(gamma > -0.5)) throw domain_error("gegenbauer_hat: gamma must exceed -1/2");
  return jacobi_hat(nu, JacobiParams{gamma - 0.5, gamma - 0.5}, x);
}

// Legendre function of arbitrary real degree.
inline double legendre_p(double nu, double x) {
  return jacobi_hat(nu, JacobiParams{0.0, 0.0}, x);
}

// Legendre function through its singular cosine-transform integral over
// (0, theta); serves as a quadrature oracle for legendre_p.
inline double legendre_md(double nu, double theta) {
  if (!(theta > 0.0) || !(theta < pi))
    throw domain_error("legendre_md: theta must lie in (0, pi)");
  auto integrand = [nu, theta](double psi, double d) {
    const double dt = (d > 0.0) ? d : theta - psi;
    const double s = 2.0 * std::sin(0.5 * (theta + psi)) * std::sin(0.5 * dt);
    return std::cos((nu + 0.5) * psi) / std::sqrt(s);
  };
  const QuadResult q =
      integrate_de(integrand, {0.0, theta, SingularEnds::upper, 1e-11});
  return std::sqrt(2.0) / pi * q.value;
}

// Gegenbauer counterpart of legendre_md: the integral representation with an
// algebraic endpoint singularity of exponent gamma - 1, valid for gamma > 0.
inline double gegenbauer_md(double nu, double gamma, double theta) {
  if (!(gamma > 0.0)) throw domain_error("gegenbauer_md: gamma must be positive");
  if (!(theta > 0.0) || !(theta < pi))
    throw domain_error("gegenbauer_md: theta must lie in (0, pi)");
  auto integrand = [nu, gamma, theta](double psi, double d) {
    const double dt = (d > 0.0) ? d : theta - psi;
    const double s = 2.0 * std::sin(0.5 * (theta + psi)) * std::sin(0.5 * dt);
    return std::cos((nu + gamma) * psi) * std::pow(s, gamma - 1.0);
  };
  const QuadResult q =
      integrate_de(integrand, {0.0, theta, SingularEnds::upper, 1e-11});
  const double prefactor = std::pow(2.0, gamma) /
                           (beta_function(0.5, gamma) *
                            std::pow(std::sin(theta), 2.0 * gamma - 1.0));
  return prefactor * q.value;
}

// Hermite function of arbitrary real degree via the standard confluent
// hypergeometric combination.  Validated accuracy for |x| <= 5.
inline double hermite(double nu, double x) {
  const double x2 = x * x;
  const double even = inv_gamma(0.5 * (1.0 - nu)) * kummer_1f1(-0.5 * nu, 0.5, x2);
  const double odd = 2.0 * x * inv_gamma(-0.5 * nu) * kummer_1f1(0.5 * (1.0 - nu), 1.5, x2);
  return std::pow(2.0, nu) * std::sqrt(pi) * (even - odd);
}

// Gegenbauer hat function through its even/odd split about x = 0.  Stable for
// very large gamma with |x| small, where the (1-x)/2 series is unusable.
inline double gegenbauer_parity_form(double nu, double gamma, double x) {
  const double x2 = x * x;
  if (!(x2 < 1.0)) throw domain_error("gegenbauer_parity_form: |x| must be below 1");
  const double even = gamma_ratio(gamma + 0.5, 0.5 * (nu + 1.0) + gamma) *
                      inv_gamma(0.5 * (1.0 - nu)) *
                      gauss_2f1(-0.5 * nu, 0.5 * nu + gamma, 0.5, x2);
  const double odd = 2.0 * x * gamma_ratio(gamma + 0.5, 0.5 * nu + gamma) *
                     inv_gamma(-0.5 * nu) *
                     gauss_2f1(0.5 * (1.0 - nu), 0.5 * (nu + 1.0) + gamma, 1.5, x2);
  return std::sqrt(pi) * (even - odd);
}

// Finite-gamma stand-in for the Gegenbauer limit that defines the Hermite
// function; converges to hermite(nu, x) like 1/gamma and acts as its oracle.
inline double hermite_limit_oracle(double nu, double x, double gamma_large) {
  if (!(gamma_large >= 1e3))
    throw domain_error("hermite_limit_oracle: gamma_large must be at least 1e3");
  const double u = x / std::sqrt(gamma_large);
  return std::pow(2.0, nu) * std::pow(gamma_large, 0.5 * nu) *
         gegenbauer_parity_form(nu, gamma_large, u);
}

// Hat-normalized Jacobi values at integer degrees 0..n_max by the classical
// three-term recurrence with the hat normalization folded in.  x = 1 is the
// constant sequence 1 exactly.
inline std::vector<double> jacobi_hat_sequence(const JacobiParams& p, double x, int n_max) {
  if (n_max < 0) throw domain_error("jacobi_hat_sequence: n_max must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 1.0);
  if (n_max == 0 || x == 1.0) return out;
  const double a = p.alpha, b = p.beta;
  out[1] = 1.0 - 0.5 * (a + b + 2.0) / (a + 1.0) * (1.0 - x);
  double r_prev = 1.0 / (1.0 + a);  // ratio of hat normalizations at degree 1
  for (int n = 2; n <= n_max; ++n) {
    const double s = 2.0 * n + a + b;
    const double an = 2.0 * n * (n + a + b) * (s - 2.0);
    const double bn = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double dn = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double rn = n / (n + a);
    out[n] = rn * (bn * out[n - 1] - dn * r_prev * out[n - 2]) / an;
    r_prev = rn;
  }
  return out;
}

// Integer-degree recurrence oracle for jacobi_hat.
inline double jacobi_poly_recurrence(int n, const JacobiParams& p, double x) {
  if (n < 0) throw domain_error("jacobi_poly_recurrence: degree must be non-negative");
  return jacobi_hat_sequence(p, x, n).back();
}

// One-sided derivative of jacobi_hat(nu, p, .) at x = 1:
// nu (nu + 2 gamma) / (2 (1 + alpha)).
inline double jacobi_derivative_at_one(double nu, const JacobiParams& p) {
  return nu * (nu + 2.0 * p.gamma()) / (2.0 * (1.0 + p.alpha));
}

// Hermite values H_n(x) / sqrt(2^n n!) at degrees 0..m_max; bounded for fixed
// x, so products and tail sums stay inside double range.
inline std::vector<double> hermite_scaled_sequence(double x, int m_max) {
  if (m_max < 0) throw domain_error("hermite_scaled_sequence: m_max must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(m_max) + 1);
  out[0] = 1.0;
  if (m_max == 0) return out;
  out[1] = x * std::sqrt(2.0);
  for (int n = 1; n < m_max; ++n)
    out[n + 1] = x * std::sqrt(2.0 / (n + 1.0)) * out[n] -
                 std::sqrt(n / (n + 1.0)) * out[n - 1];
  return out;
}

}  // namespace sincsum
