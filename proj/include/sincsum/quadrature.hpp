#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <type_traits>
#include <vector>

#include "sincsum/errors.hpp"
#include "sincsum/specfun.hpp"

namespace sincsum {

enum class SingularEnds { none, lower, upper, both };

struct IntegrandSpec {
  double lower;
  double upper;
  SingularEnds singular_ends = SingularEnds::none;
  double abs_tol = 1e-10;
};

struct QuadResult {
  double value;
  double err_est;
};

namespace detail {

// Integrands may take (x) or (x, d).  d encodes the distance to the nearer
// endpoint: d > 0 means the node lies in the upper half and d = upper - x
// exactly; d < 0 means the lower half with |d| = x - lower.  The two-argument
// form lets integrands with endpoint singularities avoid the cancellation in
// recomputing that distance from x.
template <class F>
double call_integrand(F& f, double x, double d) {
  if constexpr (std::is_invocable_v<F&, double, double>) {
    return f(x, d);
  } else {
    return f(x);
  }
}

template <class F>
inline constexpr bool takes_distance = std::is_invocable_v<F&, double, double>;

}  // namespace detail

// Tanh-sinh (double-exponential) quadrature.  Handles algebraic endpoint
// singularities with exponent > -1; the error estimate is the difference of
// the last two refinement levels.
template <class F>
QuadResult integrate_de(F&& f, const IntegrandSpec& spec) {
  if (!(spec.lower < spec.upper))
    throw domain_error("integrate_de: interval must satisfy lower < upper");
  if (!(spec.abs_tol > 0.0)) throw domain_error("integrate_de: abs_tol must be positive");

  const double half = 0.5 * (spec.upper - spec.lower);
  constexpr double t_max = 3.9;
  constexpr int max_level = 12;

  auto level_sum = [&](double h) {
    double sum = 0.0, comp = 0.0;
    const long long k_max = static_cast<long long>(t_max / h);
    for (long long k = -k_max; k <= k_max; ++k) {
      const double t = k * h;
      const double u = 0.5 * pi * std::sinh(t);
      const double eu = std::exp(-std::abs(u));
      const double sech = 2.0 * eu / (1.0 + eu * eu);
      const double w = half * 0.5 * pi * std::cosh(t) * sech * sech;
      const double dist = half * 2.0 * (eu * eu) / (1.0 + eu * eu);
      const double x = (t >= 0.0) ? spec.upper - dist : spec.lower + dist;
      if constexpr (!detail::takes_distance<F>) {
        if (x == spec.upper || x == spec.lower) continue;  // node rounded onto an endpoint
      }
      const double d = (t >= 0.0) ? dist : -dist;
      const double term = w * detail::call_integrand(f, x, d);
      const double y = term - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
    return h * sum;
  };

  double h = 1.0;
  double prev = level_sum(h);
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const double curr = level_sum(h);
    err = std::abs(curr - prev);
    prev = curr;
    if (level >= 2 && err <= spec.abs_tol) return {curr, err};
  }
  throw convergence_error("integrate_de: tolerance not met at the maximum refinement level");
}

namespace detail {

// 15-point Kronrod nodes / weights with the embedded 7-point Gauss rule.
inline constexpr double gk15_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double gk15_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk15_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15_panel(F& f, double a, double b, double& value, double& err) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double ik = 0.0, ig = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = hw * gk15_x[j];
    const double f1 = call_integrand(f, mid - dx, 0.0);
    if (j == 7) {
      ik += gk15_wk[7] * f1;
      ig += gk15_wg[3] * f1;
      break;
    }
    const double f2 = call_integrand(f, mid + dx, 0.0);
    ik += gk15_wk[j] * (f1 + f2);
    if (j % 2 == 1) ig += gk15_wg[j / 2] * (f1 + f2);
  }
  value = hw * ik;
  err = std::abs(hw * (ik - ig));
}

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature for continuous integrands.
template <class F>
QuadResult integrate_adaptive(F&& f, const IntegrandSpec& spec) {
  if (!(spec.lower < spec.upper))
    throw domain_error("integrate_adaptive: interval must satisfy lower < upper");
  if (!(spec.abs_tol > 0.0)) throw domain_error("integrate_adaptive: abs_tol must be positive");

  constexpr int max_panels = 4000;
  std::priority_queue<detail::Panel> panels;
  detail::Panel p0{spec.lower, spec.upper, 0.0, 0.0};
  detail::gk15_panel(f, p0.a, p0.b, p0.value, p0.err);
  double total_err = p0.err;
  panels.push(p0);

  int count = 1;
  while (total_err > spec.abs_tol) {
    if (count >= max_panels)
      throw convergence_error("integrate_adaptive: subdivision budget exhausted");
    const detail::Panel worst = panels.top();
    panels.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.err);
    detail::gk15_panel(f, right.a, right.b, right.value, right.err);
    total_err += left.err + right.err;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  double value = 0.0, comp = 0.0, err = 0.0;
  while (!panels.empty()) {
    const detail::Panel p = panels.top();
    panels.pop();
    const double y = p.value - comp;
    const double s = value + y;
    comp = (s - value) - y;
    value = s;
    err += p.err;
  }
  return {value, err};
}

}  // namespace sincsum
