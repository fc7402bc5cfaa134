#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "sincsum/errors.hpp"
#include "sincsum/expansion.hpp"
#include "sincsum/functions.hpp"
#include "sincsum/quadrature.hpp"
#include "sincsum/specfun.hpp"

namespace sincsum {

// 4x4 matrix with entries in {-1/2, +1/2}, stored as doubled integers so the
// structural checks are exact.
struct UMatrix {
  std::array<std::array<int, 4>, 4> twice;

  constexpr double value(int i, int j) const { return 0.5 * twice[i][j]; }

  constexpr bool symmetric() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j)
        if (twice[i][j] != twice[j][i]) return false;
    return true;
  }

  // U * U = I, checked in integer arithmetic (entries doubled twice -> 4 I).
  constexpr bool involutory() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int s = 0;
        for (int k = 0; k < 4; ++k) s += twice[i][k] * twice[k][j];
        if (s != (i == j ? 4 : 0)) return false;
      }
    return true;
  }
};

inline constexpr UMatrix u_plus{{{{-1, -1, -1, 1}, {-1, -1, 1, -1}, {-1, 1, -1, -1}, {1, -1, -1, -1}}}};
inline constexpr UMatrix u_minus{{{{-1, 1, 1, -1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {-1, -1, -1, -1}}}};

// Three-angle invariant, product of four half-angle cosines.  Positive on the
// open domain sum |theta_i| < pi; its sign selects the closed form of G.
inline double eta3(double t1, double t2, double t3) {
  return 4.0 * std::cos(0.5 * (t1 + t2 + t3)) * std::cos(0.5 * (-t1 + t2 + t3)) *
         std::cos(0.5 * (t1 - t2 + t3)) * std::cos(0.5 * (t1 + t2 - t3));
}

// Algebraically equal polynomial form of eta3, kept as a cross check.
inline double eta3_sum_form(double t1, double t2, double t3) {
  const double c1 = std::cos(t1), c2 = std::cos(t2), c3 = std::cos(t3);
  return c1 * c1 + c2 * c2 + c3 * c3 + 2.0 * c1 * c2 * c3 - 1.0;
}

struct Eta4 {
  double plus;
  double minus;
};

// Four-angle invariants 4 prod cos(Phi_i) with Phi = theta U for the two
// involutions above.  Exchanging any theta_i -> -theta_i swaps the pair;
// theta_4 -> 0 sends both to eta3.
inline Eta4 eta4(const std::array<double, 4>& th) {
  auto apply = [&th](const UMatrix& u) {
    double prod = 4.0;
    for (int j = 0; j < 4; ++j) {
      double twice_phi = 0.0;
      for (int i = 0; i < 4; ++i) twice_phi += th[i] * u.twice[i][j];
      prod *= std::cos(0.5 * twice_phi);
    }
    return prod;
  };
  return {apply(u_plus), apply(u_minus)};
}

struct QuarticCoefficients {
  double a, b, c;
};

// Coefficients of the quartic A t^4 + B t^2 + C that carries the four-factor
// case after the half-angle substitution:
//   A = -eta3(t1 + t2, t3, t4),  C = -eta3(t1 - t2, t3, t4),
//   B = A + C + 4 sin^2 t1 sin^2 t2   (so B >= A + C always).
inline QuarticCoefficients abc_coefficients(const std::array<double, 4>& th) {
  const double a = -eta3(th[0] + th[1], th[2], th[3]);
  const double c = -eta3(th[0] - th[1], th[2], th[3]);
  const double s1 = std::sin(th[0]), s2 = std::sin(th[1]);
  return {a, a + c + 4.0 * s1 * s1 * s2 * s2, c};
}

// Combined invariants of a 3- or 4-angle tuple.
struct EtaInvariants {
  int n = 0;
  double eta3 = 0.0;
  double eta_plus = 0.0;
  double eta_minus = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};

inline EtaInvariants eta_invariants(std::span<const double> thetas) {
  EtaInvariants inv;
  inv.n = static_cast<int>(thetas.size());
  if (inv.n == 3) {
    inv.eta3 = eta3(thetas[0], thetas[1], thetas[2]);
    return inv;
  }
  if (inv.n == 4) {
    const std::array<double, 4> th{thetas[0], thetas[1], thetas[2], thetas[3]};
    const Eta4 e = eta4(th);
    const QuarticCoefficients q = abc_coefficients(th);
    inv.eta_plus = e.plus;
    inv.eta_minus = e.minus;
    inv.a = q.a;
    inv.b = q.b;
    inv.c = q.c;
    return inv;
  }
  throw invalid_spec_error("eta_invariants: defined for 3 or 4 angles");
}

enum class GKind { zero, finite, delta, boundary };

struct GValue {
  GKind kind;
  double value = 0.0;      // finite case
  double support_x = 0.0;  // delta case: location in the first cosine
  double weight = 0.0;     // delta case
};

// Classification refuses to pick a branch when an invariant sits this close
// to zero.
inline constexpr double eta_boundary_tol = 1e-9;

inline constexpr std::array<double, 5> default_abel_grid{0.90, 0.93, 0.96, 0.98, 0.99};

// Abel-damped series sum_n (-1)^n (2n + 2 gamma) t^n f_n at fixed t.
inline double g_abel_oracle(const FamilySpec& spec, double t, int n_max) {
  if (!spec.is_trig())
    throw invalid_spec_error("g_abel_oracle: defined for the trigonometric families only");
  if (!(t > 0.0 && t < 1.0)) throw domain_error("g_abel_oracle: t must lie in (0, 1)");
  const auto f = family_samples(spec, n_max);
  double sum = 0.0, comp = 0.0, tn = 1.0, sign = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double term = sign * (2.0 * n + 2.0 * spec.gamma) * tn * f[n];
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    sign = -sign;
    tn *= t;
    if (tn == 0.0) break;
  }
  return sum;
}

struct AbelExtrapolation {
  double value;
  double spread;
  bool ill_conditioned;
};

inline constexpr double abel_spread_warn = 1e-2;

// Polynomial extrapolation of the Abel sums to t = 1 in the variable 1 - t
// (Neville).  The spread compares against the extrapolation without the
// coarsest grid point.
inline AbelExtrapolation g_abel_extrapolate(const FamilySpec& spec,
                                            std::span<const double> t_grid, int n_max) {
  if (t_grid.size() < 3)
    throw invalid_spec_error("g_abel_extrapolate: at least 3 grid points required");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] < 1.0))
      throw domain_error("g_abel_extrapolate: grid points must lie in (0, 1)");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw invalid_spec_error("g_abel_extrapolate: grid must increase strictly");
  }
  const std::size_t m = t_grid.size();
  std::vector<double> s(m), p(m);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = 1.0 - t_grid[i];
    p[i] = g_abel_oracle(spec, t_grid[i], n_max);
  }
  double without_coarsest = p[m - 1];
  for (std::size_t k = 1; k < m; ++k) {
    if (k == m - 1) without_coarsest = p[1];
    for (std::size_t i = 0; i + k < m; ++i)
      p[i] = p[i + 1] + (p[i + 1] - p[i]) * s[i + k] / (s[i] - s[i + k]);
  }
  const double spread = std::abs(p[0] - without_coarsest);
  return {p[0], spread, spread > abel_spread_warn};
}

inline AbelExtrapolation g_abel_extrapolate(const FamilySpec& spec, int n_max = 6000) {
  return g_abel_extrapolate(spec, std::span<const double>(default_abel_grid), n_max);
}

namespace detail {

// 2F1(1/2, 1/2; 1; z) for z < 1 through the arithmetic-geometric mean.
inline double hyp_half(double z) { return 2.0 / pi * elliptic_k(z); }

}  // namespace detail

// Four-factor closed-form value as a function of the two invariants alone;
// invariant under exchanging them.  Requires both magnitudes above the
// boundary tolerance.
inline double g4_entry(double eta_plus, double eta_minus) {
  if (std::abs(eta_plus) <= eta_boundary_tol || std::abs(eta_minus) <= eta_boundary_tol)
    throw domain_error("g4_entry: invariant at the classification boundary");
  if (eta_plus > 0.0 && eta_minus > 0.0) return 0.0;
  if (eta_plus < 0.0 && eta_minus < 0.0)
    return 2.0 / (pi * std::sqrt(-eta_plus)) *
           detail::hyp_half((eta_plus - eta_minus) / eta_plus);
  if (eta_plus > 0.0)
    return 2.0 / (pi * std::sqrt(eta_plus)) * detail::hyp_half(eta_minus / eta_plus);
  return 2.0 / (pi * std::sqrt(eta_minus)) * detail::hyp_half(eta_plus / eta_minus);
}

// Closed forms of G = sum (-1)^n (2n + 2 gamma) f_n over the angle tuple.
// The one- and two-factor values are point masses and are reported as delta
// descriptors; three and four factors give numbers switched by the sign of
// the eta invariants.  Closed forms exist for gamma = 1/2; every other gamma
// is routed to the Abel extrapolation.
inline GValue g_closed(double gamma, std::span<const double> thetas) {
  const int n = static_cast<int>(thetas.size());
  if (n < 1 || n > 4) throw invalid_spec_error("g_closed: 1 to 4 angles supported");

  if (gamma != 0.5) {
    std::vector<double> th(thetas.begin(), thetas.end());
    const AbelExtrapolation a = g_abel_extrapolate(FamilySpec::gegenbauer(gamma, th));
    return {GKind::finite, a.value, 0.0, 0.0};
  }

  switch (n) {
    case 1:
      return {GKind::delta, 0.0, -1.0, 2.0};
    case 2:
      return {GKind::delta, 0.0, -std::cos(thetas[1]), 2.0};
    case 3: {
      const double e = eta3(thetas[0], thetas[1], thetas[2]);
      if (std::abs(e) <= eta_boundary_tol) return {GKind::boundary};
      if (e > 0.0) return {GKind::zero};
      return {GKind::finite, 2.0 / (pi * std::sqrt(-e)), 0.0, 0.0};
    }
    default: {
      const Eta4 e = eta4({thetas[0], thetas[1], thetas[2], thetas[3]});
      if (std::abs(e.plus) <= eta_boundary_tol || std::abs(e.minus) <= eta_boundary_tol)
        return {GKind::boundary};
      if (e.plus > 0.0 && e.minus > 0.0) return {GKind::zero};
      return {GKind::finite, g4_entry(e.plus, e.minus), 0.0, 0.0};
    }
  }
}

// Generating-function kernel g_t(x) = sum (2n+1) t^n P_n(x) in closed form.
inline double generating_gt(double t, double x) {
  if (!(std::abs(t) < 1.0)) throw domain_error("generating_gt: |t| must be below 1");
  if (!(std::abs(x) <= 1.0)) throw domain_error("generating_gt: |x| must be at most 1");
  const double q = 1.0 - 2.0 * t * x + t * t;
  return (1.0 - t * t) / (q * std::sqrt(q));
}

// Smoothed pairing of the one-factor G against a test function:
// integral of g_t(x) phi(x) over [-1, 1].  As t decreases to -1 the value
// approaches 2 phi(-1); for phi = 1 it equals 2 at every t.
template <class Phi>
double delta_pairing(Phi&& phi, double t) {
  if (!(std::abs(t) < 1.0)) throw domain_error("delta_pairing: |t| must be below 1");
  auto f = [&phi, t](double x) { return generating_gt(t, x) * phi(x); };
  return integrate_de(f, {-1.0, 1.0, SingularEnds::lower, 1e-10}).value;
}

enum class GTag { zero, s1, s2, s3 };

struct Table1Row {
  std::array<int, 3> abc_signs{};  // signs of A, B, C
  std::array<int, 2> eta_signs{};  // signs of eta+, eta-
  GTag tag = GTag::zero;
  bool boundary = false;
};

// Sign classification of a four-angle tuple.  The (A, B, C) signs determine
// the sign multiset of {eta+, eta-}: equal etas when A C > 0 (negative pair
// for B > 0, positive for B < 0), mixed when A C < 0; which of the two etas
// carries which sign is not a function of (A, B, C).  (+, -, +) cannot occur
// because B >= A + C.
inline Table1Row table1_classify(const std::array<double, 4>& thetas) {
  const QuarticCoefficients q = abc_coefficients(thetas);
  const Eta4 e = eta4(thetas);
  Table1Row row;
  const double floor_abs = std::min({std::abs(q.a), std::abs(q.b), std::abs(q.c),
                                     std::abs(e.plus), std::abs(e.minus)});
  if (floor_abs <= eta_boundary_tol) {
    row.boundary = true;
    return row;
  }
  auto sgn = [](double v) { return v > 0.0 ? 1 : -1; };
  row.abc_signs = {sgn(q.a), sgn(q.b), sgn(q.c)};
  row.eta_signs = {sgn(e.plus), sgn(e.minus)};

  if (row.abc_signs[0] > 0 && row.abc_signs[1] < 0 && row.abc_signs[2] > 0)
    throw domain_error("table1_classify: (+, -, +) contradicts B >= A + C");

  const bool mixed_abc = row.abc_signs[0] * row.abc_signs[2] < 0;
  const bool mixed_eta = row.eta_signs[0] * row.eta_signs[1] < 0;
  bool consistent;
  if (mixed_abc)
    consistent = mixed_eta;
  else
    consistent = !mixed_eta && row.eta_signs[0] == -row.abc_signs[1];
  if (!consistent)
    throw domain_error("table1_classify: eta signs inconsistent with the (A, B, C) row");

  if (row.eta_signs[0] > 0 && row.eta_signs[1] > 0)
    row.tag = GTag::zero;
  else if (row.eta_signs[0] < 0 && row.eta_signs[1] < 0)
    row.tag = GTag::s1;
  else if (row.eta_signs[0] > 0)
    row.tag = GTag::s2;
  else
    row.tag = GTag::s3;
  return row;
}

// |LHS - RHS| of the product-to-integral addition identity at integer degree:
// C_n(cos a) C_n(cos b) against its sin^(2 gamma - 1)-weighted average over
// the composed angle.  gamma = 1/2 is the plain Legendre average.
inline double addition_identity_check(int n, double gamma, double alpha, double beta) {
  if (n < 0) throw domain_error("addition_identity_check: degree must be non-negative");
  if (!(gamma > 0.0)) throw domain_error("addition_identity_check: gamma must be positive");
  const JacobiParams p{gamma - 0.5, gamma - 0.5};
  const double lhs = jacobi_poly_recurrence(n, p, std::cos(alpha)) *
                     jacobi_poly_recurrence(n, p, std::cos(beta));
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  auto f = [&](double w, double d) {
    const double sin_w = (d > 0.0) ? std::sin(d) : std::sin(w);
    double com = ca * cb + sa * sb * std::cos(w);
    com = std::min(1.0, std::max(-1.0, com));
    return std::pow(sin_w, 2.0 * gamma - 1.0) * jacobi_poly_recurrence(n, p, com);
  };
  const QuadResult q = integrate_de(f, {0.0, pi, SingularEnds::both, 1e-11});
  const double rhs = q.value / beta_function(0.5, gamma);
  return std::abs(lhs - rhs);
}

}  // namespace sincsum
