#pragma once

#include <cmath>
#include <limits>

#include "sincsum/errors.hpp"

namespace sincsum {

inline constexpr double pi = 3.14159265358979323846;

namespace detail {

inline bool is_integer(double x) {
  return std::isfinite(x) && x == std::floor(x);
}

inline bool is_nonpositive_integer(double x) {
  return is_integer(x) && x <= 0.0;
}

}  // namespace detail

// sin(pi x) with exact argument reduction; exactly zero at integer x.
inline double sinpi(double x) {
  const double r = std::remainder(x, 2.0);  // in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  return std::sin(pi * r);
}

// sinc z = sin(pi z) / (pi z), with sinc 0 = 1.
inline double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double u2 = (pi * z) * (pi * z);
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
  }
  return sinpi(z) / (pi * z);
}

struct LnGamma {
  double log_abs;  // log |Gamma(x)|
  int sign;        // sign of Gamma(x), +1 or -1
};

// log |Gamma(x)| together with the sign of Gamma(x).
inline LnGamma ln_gamma_signed(double x) {
  if (detail::is_nonpositive_integer(x))
    throw pole_error("ln_gamma: pole at a non-positive integer");
  const int sign = (x > 0.0 || sinpi(x) > 0.0) ? 1 : -1;
  return {std::lgamma(x), sign};
}

inline double ln_gamma(double x) { return ln_gamma_signed(x).log_abs; }

// 1 / Gamma(x); zero at the poles of Gamma.
inline double inv_gamma(double x) {
  if (detail::is_nonpositive_integer(x)) return 0.0;
  const LnGamma g = ln_gamma_signed(x);
  return g.sign * std::exp(-g.log_abs);
}

// Gamma(a) / Gamma(b), evaluated in log space so that the ratio survives
// where the individual factors overflow.
//
//   b at a pole, a regular  -> exact 0
//   a at a pole, b regular  -> undefined, pole_error
//   both at poles           -> limit of Gamma(a+e)/Gamma(b+e) as e -> 0,
//                              i.e. (-1)^(a-b) Gamma(1-b) / Gamma(1-a)
inline double gamma_ratio(double a, double b) {
  const bool pa = detail::is_nonpositive_integer(a);
  const bool pb = detail::is_nonpositive_integer(b);
  if (pa && pb) {
    const long long diff = static_cast<long long>(a - b);
    const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(1.0 - b) - std::lgamma(1.0 - a));
  }
  if (pb) return 0.0;
  if (pa) throw pole_error("gamma_ratio: numerator pole with regular denominator");
  if (a == b) return 1.0;
  const LnGamma ga = ln_gamma_signed(a);
  const LnGamma gb = ln_gamma_signed(b);
  return ga.sign * gb.sign * std::exp(ga.log_abs - gb.log_abs);
}

// Euler beta function; arguments must avoid the Gamma poles.
inline double beta_function(double a, double b) {
  const LnGamma ga = ln_gamma_signed(a);
  const LnGamma gb = ln_gamma_signed(b);
  const LnGamma gab = ln_gamma_signed(a + b);
  return ga.sign * gb.sign * gab.sign *
         std::exp(ga.log_abs + gb.log_abs - gab.log_abs);
}

struct HypergeometricArgs {
  double a, b, c, z;
};

namespace detail {

inline constexpr int hyp_max_terms = 20000;

// Power series sum_k (a)_k (b)_k / (c)_k z^k / k! with compensated summation.
// Terminates early when a or b is a non-positive integer; a pole of c reached
// before termination is an error.
inline double hyp2f1_series(double a, double b, double c, double z) {
  double sum = 1.0, comp = 0.0, term = 1.0;
  int settled = 0;
  for (int k = 0; k < hyp_max_terms; ++k) {
    const double num = (a + k) * (b + k);
    if (num == 0.0) return sum;
    const double den = (c + k) * (k + 1);
    if (den == 0.0)
      throw pole_error("gauss_2f1: c at a non-positive integer before the series terminates");
    term *= num * z / den;
    if (term == 0.0) return sum;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) {
      if (++settled >= 2) return sum;
    } else {
      settled = 0;
    }
  }
  throw convergence_error("gauss_2f1: series exhausted its term budget");
}

inline constexpr double hyp_z_switch = 0.5;

// z restricted to [0, 1); applies the Euler transformation past the switch
// point so the tail of the series decays faster.
inline double hyp2f1_unit(double a, double b, double c, double z) {
  if (z <= hyp_z_switch) return hyp2f1_series(a, b, c, z);
  return std::pow(1.0 - z, c - a - b) * hyp2f1_series(c - a, c - b, c, z);
}

}  // namespace detail

// Gauss hypergeometric function 2F1(a, b; c; z) for z < 1.
// Terminating parameter choices are summed exactly as polynomials; z < 0 is
// mapped into [0, 1) by the Pfaff transformation.
inline double gauss_2f1(double a, double b, double c, double z) {
  if (!(z < 1.0)) throw domain_error("gauss_2f1: z >= 1 is outside the supported domain");
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    return detail::hyp2f1_series(a, b, c, z);
  if (z < 0.0)
    return std::pow(1.0 - z, -a) * detail::hyp2f1_unit(a, c - b, c, z / (z - 1.0));
  return detail::hyp2f1_unit(a, b, c, z);
}

inline double gauss_2f1(const HypergeometricArgs& h) {
  return gauss_2f1(h.a, h.b, h.c, h.z);
}

// Kummer confluent hypergeometric function 1F1(a; b; z) by direct series.
inline double kummer_1f1(double a, double b, double z) {
  double sum = 1.0, comp = 0.0, term = 1.0;
  int settled = 0;
  for (int k = 0; k < detail::hyp_max_terms; ++k) {
    const double num = a + k;
    if (num == 0.0) return sum;
    const double den = (b + k) * (k + 1);
    if (den == 0.0)
      throw pole_error("kummer_1f1: b at a non-positive integer before the series terminates");
    term *= num * z / den;
    if (term == 0.0) return sum;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) {
      if (++settled >= 2) return sum;
    } else {
      settled = 0;
    }
  }
  throw convergence_error("kummer_1f1: series exhausted its term budget");
}

// Divergence guard for the logarithmic singularity at m = 1.
inline constexpr double elliptic_m_max = 1.0 - 1e-12;

// Complete elliptic integral K as a function of the squared modulus m = k^2,
// by the arithmetic-geometric mean.  Negative m is handled through the
// imaginary-modulus transformation K(m) = K(m/(m-1)) / sqrt(1-m).
inline double elliptic_k(double m) {
  if (!(m <= elliptic_m_max))
    throw domain_error("elliptic_k: m at or beyond the m = 1 divergence");
  if (m < 0.0) return elliptic_k(m / (m - 1.0)) / std::sqrt(1.0 - m);
  double a = 1.0;
  double g = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - g) > 0.5e-16 * (a + g); ++i) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return pi / (a + g);
}

}  // namespace sincsum
