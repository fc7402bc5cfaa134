#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sincsum/errors.hpp"
#include "sincsum/functions.hpp"
#include "sincsum/specfun.hpp"

namespace sincsum {

enum class FamilyKind {
  legendre,
  gegenbauer,
  jacobi_pair,
  jacobi_product,
  hermite_single,
  hermite_pair,
};

enum class Acceleration { none, cesaro, wynn_epsilon };

struct TruncationConfig {
  int n_max = 4000;
  Acceleration acceleration = Acceleration::wynn_epsilon;
  double tail_tol = 1e-8;

  void validate() const {
    if (n_max < 8) throw invalid_spec_error("TruncationConfig: n_max must be at least 8");
    if (!(tail_tol > 0.0)) throw invalid_spec_error("TruncationConfig: tail_tol must be positive");
  }
};

struct AngleTuple {
  std::vector<double> thetas;

  explicit AngleTuple(std::vector<double> t) : thetas(std::move(t)) {
    for (double th : thetas)
      if (!(std::abs(th) < pi))
        throw invalid_spec_error("AngleTuple: each |theta| must be below pi");
  }
};

// Membership in the open domain sum |theta_i| < pi.
inline bool in_domain(std::span<const double> thetas) {
  double s = 0.0;
  for (double t : thetas) s += std::abs(t);
  return s < pi;
}

inline bool in_domain(const AngleTuple& t) { return in_domain(std::span<const double>(t.thetas)); }

// A product family f_nu together with everything needed to sample it at
// integer degrees.  Trigonometric kinds store angles (x_i = cos theta_i);
// Hermite kinds store coordinates directly.
struct FamilySpec {
  FamilyKind kind;
  double gamma;                      // coefficient parameter; (alpha+beta+1)/2 for Jacobi kinds
  std::vector<JacobiParams> params;  // one per factor, trigonometric kinds only
  std::vector<double> points;        // angles (radians) or Hermite coordinates
  int epsilon = 0;                   // subsequence offset of the single-Hermite case

  static FamilySpec legendre(std::vector<double> thetas) {
    check_angles(thetas);
    FamilySpec s{FamilyKind::legendre, 0.5, {}, std::move(thetas), 0};
    s.params.assign(s.points.size(), JacobiParams{0.0, 0.0});
    return s;
  }

  static FamilySpec gegenbauer(double gamma, std::vector<double> thetas) {
    check_angles(thetas);
    if (!(gamma > -0.5)) throw invalid_spec_error("FamilySpec: gegenbauer gamma must exceed -1/2");
    FamilySpec s{FamilyKind::gegenbauer, gamma, {}, std::move(thetas), 0};
    s.params.assign(s.points.size(), JacobiParams{gamma - 0.5, gamma - 0.5});
    return s;
  }

  // Two factors with the parameter pair exchanged between them.
  static FamilySpec jacobi_pair(const JacobiParams& p, double theta_x, double theta_y) {
    std::vector<double> th{theta_x, theta_y};
    check_angles(th);
    FamilySpec s{FamilyKind::jacobi_pair, p.gamma(), {p, p.swapped()}, std::move(th), 0};
    return s;
  }

  // Arbitrary factor list sharing one gamma; combinations outside the valid
  // table remain constructible and are only flagged by paper_valid().
  static FamilySpec jacobi_product(std::vector<JacobiParams> ps, std::vector<double> thetas) {
    if (ps.empty() || ps.size() != thetas.size())
      throw invalid_spec_error("FamilySpec: factor parameters and points must match and be non-empty");
    check_angles(thetas);
    const double g = ps.front().gamma();
    for (const JacobiParams& p : ps)
      if (std::abs(p.gamma() - g) > 1e-12)
        throw invalid_spec_error("FamilySpec: all factors must share one gamma = (alpha+beta+1)/2");
    FamilySpec s{FamilyKind::jacobi_product, g, std::move(ps), std::move(thetas), 0};
    return s;
  }

  static FamilySpec hermite_single(double x, int epsilon) {
    if (!(x > 0.0)) throw invalid_spec_error("FamilySpec: single-Hermite case requires x > 0");
    if (epsilon != 0 && epsilon != 1)
      throw invalid_spec_error("FamilySpec: epsilon must be 0 or 1");
    return FamilySpec{FamilyKind::hermite_single, 0.0, {}, {x}, epsilon};
  }

  static FamilySpec hermite_pair(double x, double y) {
    if (!(x + y > 0.0)) throw invalid_spec_error("FamilySpec: Hermite pair requires x + y > 0");
    return FamilySpec{FamilyKind::hermite_pair, 0.0, {}, {x, y}, 0};
  }

  // Hermite products H_{k nu + epsilon}; only k N = 2 admits the expansion,
  // every other combination is rejected.
  static FamilySpec hermite_product(int k, std::span<const double> xs, int epsilon = 0) {
    const int n = static_cast<int>(xs.size());
    if (k * n != 2)
      throw invalid_spec_error("FamilySpec: Hermite products require k * N = 2, i.e. (k, N) = (2, 1) or (1, 2)");
    if (k == 2) return hermite_single(xs[0], epsilon);
    if (epsilon != 0)
      throw invalid_spec_error("FamilySpec: the Hermite pair admits no subsequence offset");
    return hermite_pair(xs[0], xs[1]);
  }

  int factors() const { return static_cast<int>(points.size()); }

  bool is_trig() const {
    return kind == FamilyKind::legendre || kind == FamilyKind::gegenbauer ||
           kind == FamilyKind::jacobi_pair || kind == FamilyKind::jacobi_product;
  }

  bool is_hermite() const { return !is_trig(); }

  // Whether the factor combination is inside the table of combinations for
  // which the expansion is established.
  bool paper_valid() const {
    if (kind != FamilyKind::jacobi_product) return true;
    const int n = factors();
    if (n == 1) return true;
    if (n == 2)
      return params[0].alpha == params[1].beta && params[0].beta == params[1].alpha;
    for (const JacobiParams& p : params)
      if (p.alpha != p.beta) return false;
    return true;
  }

  bool in_domain() const {
    if (kind == FamilyKind::hermite_single) return points[0] > 0.0;
    if (kind == FamilyKind::hermite_pair) return points[0] + points[1] > 0.0;
    return sincsum::in_domain(std::span<const double>(points));
  }

 private:
  static void check_angles(const std::vector<double>& thetas) {
    if (thetas.empty()) throw invalid_spec_error("FamilySpec: at least one point is required");
    for (double t : thetas)
      if (!(std::abs(t) < pi))
        throw invalid_spec_error("FamilySpec: each |theta| must be below pi");
  }
};

// Expansion coefficient with the removable singularity at nu = n filled:
//   c = sinc(nu - n) - sin(pi (nu - n)) / (pi (nu + n + 2 gamma)).
// Equals the Kronecker delta at integer nu.
inline double coeff_c(double nu, int n, double gamma) {
  const double mirror = nu + n + 2.0 * gamma;
  const double sp = sinpi(nu - n);
  if (mirror == 0.0) {
    if (sp != 0.0) throw pole_error("coeff_c: nu + n + 2 gamma = 0");
    // nu, n integers force 2 gamma integral here; the term's limit is (-1)^(2 gamma).
    const long long tg = std::llround(-nu - n);
    return sinc(nu - n) - ((tg % 2 == 0) ? 1.0 : -1.0);
  }
  return sinc(nu - n) - sp / (pi * mirror);
}

// Direct evaluation of f_nu at real degree.
inline double family_value(const FamilySpec& spec, double nu) {
  switch (spec.kind) {
    case FamilyKind::hermite_single: {
      const double deg = 2.0 * nu + spec.epsilon;
      return std::exp2(-2.0 * nu) * inv_gamma(nu + 1.0) * hermite(deg, spec.points[0]);
    }
    case FamilyKind::hermite_pair:
      return std::exp2(-nu) * inv_gamma(nu + 1.0) * hermite(nu, spec.points[0]) *
             hermite(nu, spec.points[1]);
    default: {
      double v = gamma_ratio(nu + 2.0 * spec.gamma, nu + 1.0);
      for (int i = 0; i < spec.factors(); ++i)
        v *= jacobi_hat(nu, spec.params[i], std::cos(spec.points[i]));
      return v;
    }
  }
}

// Integer-degree samples f_0 .. f_{n_max}, generated by stable recurrences.
inline std::vector<double> family_samples(const FamilySpec& spec, int n_max) {
  if (n_max < 0) throw domain_error("family_samples: n_max must be non-negative");
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> f(len);

  switch (spec.kind) {
    case FamilyKind::hermite_single: {
      const int eps = spec.epsilon;
      const auto h = hermite_scaled_sequence(spec.points[0], 2 * n_max + eps);
      const double pref = std::pow(2.0, 0.5 * eps);
      double rho = 1.0;  // sqrt((2n+eps)!) / (2^n n!)
      for (int n = 0; n <= n_max; ++n) {
        f[n] = pref * rho * h[2 * n + eps];
        rho *= std::sqrt((2.0 * n + eps + 1.0) * (2.0 * n + eps + 2.0)) / (2.0 * (n + 1.0));
      }
      return f;
    }
    case FamilyKind::hermite_pair: {
      const auto hx = hermite_scaled_sequence(spec.points[0], n_max);
      const auto hy = hermite_scaled_sequence(spec.points[1], n_max);
      for (int n = 0; n <= n_max; ++n) f[n] = hx[n] * hy[n];
      return f;
    }
    default: {
      const double tg = 2.0 * spec.gamma;
      if (detail::is_nonpositive_integer(tg))
        throw pole_error("family_samples: normalization pole at 2 gamma a non-positive integer");
      const LnGamma g0 = ln_gamma_signed(tg);
      double norm = g0.sign * std::exp(g0.log_abs);  // Gamma(2 gamma)
      std::vector<std::vector<double>> seqs;
      seqs.reserve(spec.factors());
      for (int i = 0; i < spec.factors(); ++i)
        seqs.push_back(jacobi_hat_sequence(spec.params[i], std::cos(spec.points[i]), n_max));
      for (int n = 0; n <= n_max; ++n) {
        double v = norm;
        for (const auto& s : seqs) v *= s[n];
        f[n] = v;
        norm *= (n + tg) / (n + 1.0);
      }
      return f;
    }
  }
}

// Coefficient used by the truncated expansion of the given family.
inline double expansion_coefficient(const FamilySpec& spec, double nu, int n) {
  return spec.is_hermite() ? sinc(nu - n) : coeff_c(nu, n, spec.gamma);
}

struct SumResult {
  double value;     // accelerated sum (or the fallback when acceleration broke down)
  double est_tail;  // difference of the last two acceleration stages
  double raw;       // plain truncated partial sum
  bool fallback = false;
};

namespace detail {

struct AccelOutcome {
  double value;
  double est;
  bool ok;
};

// Wynn epsilon table over a window of partial sums.  Returns the even-column
// estimate with the smallest last-stage movement; reports failure when the
// first column already produces near-zero differences.
inline AccelOutcome wynn_epsilon_window(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 2) return {s.empty() ? 0.0 : s[0], 0.0, !s.empty()};
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> curr(s);
  double best = s[n - 1];
  double best_est = std::abs(s[n - 1] - s[n - 2]);
  double last_even = s[n - 1];
  bool have_stage = false;
  for (int k = 1; curr.size() > 1; ++k) {
    std::vector<double> next(curr.size() - 1);
    for (std::size_t i = 0; i + 1 < curr.size(); ++i) {
      const double d = curr[i + 1] - curr[i];
      if (std::abs(d) < 1e-300)
        return have_stage ? AccelOutcome{best, best_est, true}
                          : AccelOutcome{s[n - 1], 0.0, false};
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = std::move(curr);
    curr = std::move(next);
    if (k % 2 == 0) {
      const double v = curr.back();
      const double est = std::abs(v - last_even);
      if (!have_stage || est <= best_est) {
        best = v;
        best_est = est;
      }
      last_even = v;
      have_stage = true;
    }
  }
  return {best, best_est, have_stage};
}

// Iterated adjacent averaging of the partial-sum window.
inline AccelOutcome cesaro_window(std::vector<double> w) {
  if (w.empty()) return {0.0, 0.0, false};
  double prev = w.back();
  double est = 0.0;
  const int rounds = std::min<int>(20, static_cast<int>(w.size()) - 1);
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
    w.pop_back();
    est = std::abs(w.back() - prev);
    prev = w.back();
  }
  return {w.back(), est, true};
}

inline constexpr int accel_window = 64;

// Shared tail machinery: feeds partial sums through a ring buffer and applies
// the configured acceleration to the final window.
class PartialSumAccumulator {
 public:
  explicit PartialSumAccumulator(const TruncationConfig& t)
      : cfg_(t), ring_(accel_window, 0.0) {}

  // Returns true while further terms are wanted.
  bool add(double term) {
    const double y = term - comp_;
    const double s = sum_ + y;
    comp_ = (s - sum_) - y;
    sum_ = s;
    ring_[count_ % accel_window] = sum_;
    ++count_;
    if (std::abs(term) <= 1e-3 * cfg_.tail_tol * std::max(1.0, std::abs(sum_)))
      ++settled_;
    else
      settled_ = 0;
    return settled_ < 32;
  }

  SumResult finish() const {
    const std::size_t have = std::min<std::size_t>(count_, accel_window);
    std::vector<double> window(have);
    for (std::size_t i = 0; i < have; ++i)
      window[i] = ring_[(count_ - have + i) % accel_window];

    SumResult out{sum_, 0.0, sum_, false};
    switch (cfg_.acceleration) {
      case Acceleration::none:
        out.est_tail = have >= 2 ? std::abs(window[have - 1] - window[have - 2]) : 0.0;
        return out;
      case Acceleration::cesaro: {
        const AccelOutcome a = cesaro_window(window);
        out.value = a.value;
        out.est_tail = a.est;
        return out;
      }
      case Acceleration::wynn_epsilon: {
        const AccelOutcome a = wynn_epsilon_window(window);
        if (a.ok) {
          out.value = a.value;
          out.est_tail = a.est;
          return out;
        }
        const AccelOutcome c = cesaro_window(window);
        out.value = c.value;
        out.est_tail = c.est;
        out.fallback = true;
        return out;
      }
    }
    return out;
  }

 private:
  TruncationConfig cfg_;
  std::vector<double> ring_;
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t count_ = 0;
  int settled_ = 0;
};

}  // namespace detail

// Truncated expansion sum_{n=0}^{n_max} c_n f_n with acceleration.  Points
// outside the domain are summed as-is; the result is then whatever the
// truncated series does there.
inline SumResult sampling_sum(const FamilySpec& spec, double nu,
                              const TruncationConfig& t = {}) {
  t.validate();
  const auto f = family_samples(spec, t.n_max);
  detail::PartialSumAccumulator acc(t);
  for (int n = 0; n <= t.n_max; ++n)
    if (!acc.add(expansion_coefficient(spec, nu, n) * f[n])) break;
  return acc.finish();
}

// Symmetric two-sided sinc expansion over n in [-n_max, n_max], defined for
// the trigonometric families with 2 gamma a positive integer.  Samples at
// n <= -2 gamma mirror the non-negative ones with an alternating parity sign;
// the strip -2 gamma < n < 0 vanishes through the normalization.
inline SumResult bilateral_sinc_sum(const FamilySpec& spec, double nu,
                                    const TruncationConfig& t = {}) {
  t.validate();
  if (!spec.is_trig())
    throw invalid_spec_error("bilateral_sinc_sum: defined for the trigonometric families only");
  const double tg = 2.0 * spec.gamma;
  const long long tgi = std::llround(tg);
  if (tgi < 1 || std::abs(tg - static_cast<double>(tgi)) > 1e-9)
    throw invalid_spec_error("bilateral_sinc_sum: 2 gamma must be a positive integer");

  const auto f = family_samples(spec, t.n_max);
  const double mirror_sign = (tgi % 2 == 0) ? -1.0 : 1.0;  // (-1)^(2 gamma - 1)
  detail::PartialSumAccumulator acc(t);
  bool more = acc.add(sinc(nu) * f[0]);
  for (int k = 1; k <= t.n_max && more; ++k) {
    double term = sinc(nu - k) * f[k];
    if (k >= tgi) term += mirror_sign * sinc(nu + k) * f[k - tgi];
    more = acc.add(term);
  }
  return acc.finish();
}

// |f_nu - sampling_sum|, the quantity every validation bound constrains.
inline double residual(const FamilySpec& spec, double nu, const TruncationConfig& t = {}) {
  return std::abs(family_value(spec, nu) - sampling_sum(spec, nu, t).value);
}

}  // namespace sincsum
