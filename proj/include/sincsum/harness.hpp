#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sincsum/errors.hpp"
#include "sincsum/expansion.hpp"
#include "sincsum/gseries.hpp"

namespace sincsum {

// Deterministic RNG: one fixed engine plus explicit bit-to-double mappings,
// so record values depend only on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double exponential() { return -std::log1p(-uniform01()); }
  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

// Uniform draw from the solid simplex sum |theta_i| <= total, signs uniform.
inline std::vector<double> sample_angles_in_domain(Rng& rng, int n, double total) {
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  double sum = 0.0;
  for (double& v : g) {
    v = rng.exponential();
    sum += v;
  }
  std::vector<double> th(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) th[i] = g[i] / sum * total * (rng.coin() ? 1.0 : -1.0);
  return th;
}

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 20250802ull;
  int samples = 0;                             // 0 -> scenario default
  std::optional<TruncationConfig> truncation;  // unset -> scenario default
  std::map<std::string, double> tolerances;    // per-check bound overrides

  void validate() const {
    if (samples < 0) throw invalid_spec_error("ScenarioConfig: samples must be at least 1");
    for (const auto& [k, v] : tolerances)
      if (!(v > 0.0))
        throw invalid_spec_error("ScenarioConfig: tolerance '" + k + "' must be positive");
    if (truncation) truncation->validate();
  }
};

struct ReportRecord {
  std::string scenario;
  std::string case_id;
  std::vector<std::pair<std::string, std::string>> inputs;  // preformatted key/value
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
};

enum class ReportFormat { csv, json };

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class InputsBuilder {
 public:
  InputsBuilder& add(const std::string& key, double v) {
    kv_.emplace_back(key, fmt17(v));
    return *this;
  }
  InputsBuilder& add(const std::string& key, int v) {
    kv_.emplace_back(key, std::to_string(v));
    return *this;
  }
  InputsBuilder& add(const std::string& key, const std::string& v) {
    kv_.emplace_back(key, "\"" + v + "\"");
    return *this;
  }
  InputsBuilder& add(const std::string& key, std::span<const double> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += fmt17(v[i]);
    }
    s += "]";
    kv_.emplace_back(key, std::move(s));
    return *this;
  }
  std::vector<std::pair<std::string, std::string>> take() { return std::move(kv_); }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

inline std::string inputs_json(const ReportRecord& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    if (i) s += ",";
    s += "\"" + r.inputs[i].first + "\":" + r.inputs[i].second;
  }
  s += "}";
  return s;
}

class CaseTimer {
 public:
  CaseTimer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string case_name(const char* prefix, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%03d", prefix, i);
  return buf;
}

}  // namespace detail

struct ScenarioInfo {
  std::string name;
  std::string summary;
  bool expected_failure = false;
  std::vector<std::string> covers;
  std::function<std::vector<ReportRecord>(const ScenarioConfig&)> run;
};

namespace detail {

inline double bound_for(const ScenarioConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.tolerances.find(key);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

inline TruncationConfig truncation_for(const ScenarioConfig& cfg, int default_n_max) {
  if (cfg.truncation) return *cfg.truncation;
  TruncationConfig t;
  t.n_max = default_n_max;
  return t;
}

inline ReportRecord make_record(const std::string& scenario, std::string case_id,
                                InputsBuilder& in, double measured, double bound,
                                bool pass, const CaseTimer& timer) {
  ReportRecord r;
  r.scenario = scenario;
  r.case_id = std::move(case_id);
  r.inputs = in.take();
  r.measured = measured;
  r.bound = bound;
  r.pass = pass;
  r.wall_time_ms = timer.ms();
  return r;
}

// --- scenarios -----------------------------------------------------------

inline std::vector<ReportRecord> scenario_legendre_sinc(const ScenarioConfig& cfg) {
  const int per_n = cfg.samples > 0 ? cfg.samples : 50;
  const TruncationConfig trunc = truncation_for(cfg, 4000);
  const double tol = bound_for(cfg, "residual", 1e-6);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  for (int n_factors = 1; n_factors <= 4; ++n_factors) {
    for (int i = 0; i < per_n; ++i) {
      const double nu = rng.uniform(0.1, 4.9);
      const auto th = sample_angles_in_domain(rng, n_factors, pi - 0.3);
      CaseTimer timer;
      const FamilySpec spec = FamilySpec::legendre(th);
      const double f = family_value(spec, nu);
      const double res = std::abs(f - sampling_sum(spec, nu, trunc).value);
      const double bound = tol * std::max(1.0, std::abs(f));
      InputsBuilder in;
      in.add("factors", n_factors).add("nu", nu).add("thetas", std::span<const double>(th));
      out.push_back(make_record(cfg.name, case_name(("n" + std::to_string(n_factors)).c_str(), i),
                                in, res, bound, res <= bound, timer));
    }
  }
  return out;
}

inline std::vector<ReportRecord> scenario_prop1_jacobi(const ScenarioConfig& cfg) {
  const int per_pair = cfg.samples > 0 ? cfg.samples : 30;
  const TruncationConfig trunc = truncation_for(cfg, 4000);
  const double tol = bound_for(cfg, "residual", 1e-5);
  const std::array<std::pair<double, double>, 3> param_set{
      {{0.3, -0.2}, {1.5, 0.5}, {0.0, 0.7}}};
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  int idx = 0;
  for (const auto& [alpha, beta] : param_set) {
    const JacobiParams p{alpha, beta};
    for (int i = 0; i < per_pair; ++i) {
      const bool pair_case = (i % 2) == 1;
      const double nu = rng.uniform(0.1, 4.9);
      const auto th = sample_angles_in_domain(rng, pair_case ? 2 : 1, pi - 0.3);
      CaseTimer timer;
      const FamilySpec spec = pair_case
                                  ? FamilySpec::jacobi_pair(p, th[0], th[1])
                                  : FamilySpec::jacobi_product({p}, {th[0]});
      const double res = residual(spec, nu, trunc);
      InputsBuilder in;
      in.add("alpha", alpha).add("beta", beta).add("form", pair_case ? "pair" : "single");
      in.add("nu", nu).add("thetas", std::span<const double>(th));
      out.push_back(make_record(cfg.name, case_name("case", idx++), in, res, tol,
                                res <= tol, timer));
    }
  }
  return out;
}

inline std::vector<ReportRecord> scenario_gegenbauer_multi(const ScenarioConfig& cfg) {
  const int per_combo = cfg.samples > 0 ? cfg.samples : 5;
  const TruncationConfig trunc = truncation_for(cfg, 4000);
  const double tol_resid = bound_for(cfg, "residual", 1e-5);
  const double tol_bilat = bound_for(cfg, "bilateral", 1e-6);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  int idx = 0;
  for (const double gamma : {0.75, 1.0, 1.5}) {
    for (const int n_factors : {3, 4}) {
      for (int i = 0; i < per_combo; ++i) {
        const double nu = rng.uniform(0.1, 4.9);
        const auto th = sample_angles_in_domain(rng, n_factors, pi - 0.3);
        CaseTimer timer;
        const FamilySpec spec = FamilySpec::gegenbauer(gamma, th);
        const double res = residual(spec, nu, trunc);
        InputsBuilder in;
        in.add("gamma", gamma).add("factors", n_factors).add("nu", nu);
        in.add("thetas", std::span<const double>(th));
        out.push_back(make_record(cfg.name, case_name("resid", idx++), in, res, tol_resid,
                                  res <= tol_resid, timer));
      }
    }
  }
  idx = 0;
  for (const double gamma : {0.5, 1.0, 1.5}) {  // 2 gamma in {1, 2, 3}
    for (int i = 0; i < 2 * per_combo; ++i) {
      const int n_factors = 2 + (i % 2);
      const double nu = rng.uniform(0.1, 4.9);
      const auto th = sample_angles_in_domain(rng, n_factors, pi - 0.3);
      CaseTimer timer;
      const FamilySpec spec = FamilySpec::gegenbauer(gamma, th);
      const double uni = sampling_sum(spec, nu, trunc).value;
      const double bil = bilateral_sinc_sum(spec, nu, trunc).value;
      const double dev = std::abs(uni - bil);
      InputsBuilder in;
      in.add("gamma", gamma).add("factors", n_factors).add("nu", nu);
      in.add("thetas", std::span<const double>(th));
      out.push_back(make_record(cfg.name, case_name("bilat", idx++), in, dev, tol_bilat,
                                dev <= tol_bilat, timer));
    }
  }
  return out;
}

inline std::vector<ReportRecord> scenario_g3_closed(const ScenarioConfig& cfg) {
  const int per_part = cfg.samples > 0 ? cfg.samples : 20;
  const int n_max = truncation_for(cfg, 6000).n_max;
  const double tol_rel = bound_for(cfg, "rel_dev", 1e-2);
  const double tol_interior = bound_for(cfg, "interior", 1e-3);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  for (int i = 0; i < per_part; ++i) {
    std::vector<double> th(3);
    double e = 0.0;
    do {
      for (double& t : th) t = rng.uniform(-pi, pi);
      e = eta3(th[0], th[1], th[2]);
    } while (!(e <= -0.05));
    CaseTimer timer;
    const GValue closed = g_closed(0.5, th);
    const AbelExtrapolation abel = g_abel_extrapolate(FamilySpec::legendre(th), n_max);
    const double rel = std::abs(closed.value - abel.value) / std::abs(closed.value);
    InputsBuilder in;
    in.add("thetas", std::span<const double>(th)).add("eta3", e);
    in.add("closed", closed.value).add("abel", abel.value);
    out.push_back(make_record(cfg.name, case_name("closed", i), in, rel, tol_rel,
                              rel <= tol_rel, timer));
  }
  for (int i = 0; i < per_part; ++i) {
    const auto th = sample_angles_in_domain(rng, 3, pi - 0.3);
    CaseTimer timer;
    const AbelExtrapolation abel = g_abel_extrapolate(FamilySpec::legendre(th), n_max);
    const double dev = std::abs(abel.value);
    InputsBuilder in;
    in.add("thetas", std::span<const double>(th));
    out.push_back(make_record(cfg.name, case_name("interior", i), in, dev, tol_interior,
                              dev <= tol_interior, timer));
  }
  return out;
}

inline std::vector<ReportRecord> scenario_g4_table2(const ScenarioConfig& cfg) {
  const int per_class = cfg.samples > 0 ? cfg.samples : 5;
  const int n_max = truncation_for(cfg, 6000).n_max;
  const double tol_rel = bound_for(cfg, "rel_dev", 1e-2);
  const double tol_swap = bound_for(cfg, "swap", 1e-9);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  const std::array<const char*, 4> class_names{"pp", "mm", "pm", "mp"};
  std::array<int, 4> found{0, 0, 0, 0};
  int guard = 0;
  while ((found[0] < per_class || found[1] < per_class || found[2] < per_class ||
          found[3] < per_class) &&
         ++guard < 2000000) {
    std::vector<double> th(4);
    for (double& t : th) t = rng.uniform(-pi, pi);
    const Eta4 e = eta4({th[0], th[1], th[2], th[3]});
    if (std::abs(e.plus) < 0.08 || std::abs(e.minus) < 0.08) continue;
    const int which = (e.plus > 0 && e.minus > 0)   ? 0
                      : (e.plus < 0 && e.minus < 0) ? 1
                      : (e.plus > 0)                ? 2
                                                    : 3;
    if (found[which] >= per_class) continue;
    const int i = found[which]++;
    CaseTimer timer;
    const GValue closed = g_closed(0.5, th);
    const AbelExtrapolation abel = g_abel_extrapolate(FamilySpec::legendre(th), n_max);
    const double rel = std::abs(closed.value - abel.value) / std::max(std::abs(closed.value), 1.0);
    InputsBuilder in;
    in.add("thetas", std::span<const double>(th));
    in.add("eta_plus", e.plus).add("eta_minus", e.minus);
    in.add("closed", closed.value).add("abel", abel.value);
    out.push_back(make_record(cfg.name, case_name(class_names[which], i), in, rel, tol_rel,
                              rel <= tol_rel, timer));
    if (which == 1) {
      CaseTimer swap_timer;
      const double direct = g4_entry(e.plus, e.minus);
      const double swapped = g4_entry(e.minus, e.plus);
      const double dev = std::abs(direct - swapped) / std::abs(direct);
      InputsBuilder sin_;
      sin_.add("eta_plus", e.plus).add("eta_minus", e.minus);
      out.push_back(make_record(cfg.name, case_name("mm_swap", i), sin_, dev, tol_swap,
                                dev <= tol_swap, swap_timer));
    }
  }
  if (guard >= 2000000)
    throw convergence_error("g4_table2: sampling failed to populate every sign class");
  return out;
}

inline std::vector<ReportRecord> scenario_table1_sweep(const ScenarioConfig& cfg) {
  const int samples = cfg.samples > 0 ? cfg.samples : 100000;
  Rng rng(cfg.seed);
  CaseTimer timer;
  int forbidden = 0, mismatches = 0, boundary = 0;
  double max_b_dev = 0.0, max_disc_dev = 0.0, max_b_below = -1e300;
  for (int i = 0; i < samples; ++i) {
    std::array<double, 4> th;
    for (double& t : th) t = rng.uniform(-pi, pi);
    const Eta4 e = eta4(th);
    const QuarticCoefficients q = abc_coefficients(th);
    max_b_dev = std::max(max_b_dev, std::abs(q.b + e.plus + e.minus));
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    const double dd = e.plus - e.minus;
    max_disc_dev = std::max(max_disc_dev, std::abs(disc - dd * dd));
    max_b_below = std::max(max_b_below, (q.a + q.c) - q.b);
    if (q.a > 0.0 && q.b < 0.0 && q.c > 0.0) ++forbidden;
    try {
      const Table1Row row = table1_classify(th);
      if (row.boundary) ++boundary;
    } catch (const domain_error&) {
      ++mismatches;
    }
  }
  std::vector<ReportRecord> out;
  auto push = [&](const char* id, double measured, double bound) {
    InputsBuilder in;
    in.add("samples", samples);
    out.push_back(make_record(cfg.name, id, in, measured, bound, measured <= bound, timer));
  };
  push("forbidden_sign_pattern_count", forbidden, 0.0);
  push("b_identity_max_dev", max_b_dev, bound_for(cfg, "b_identity", 1e-10));
  push("discriminant_identity_max_dev", max_disc_dev, bound_for(cfg, "discriminant", 1e-9));
  push("a_plus_c_minus_b_max", max_b_below, 0.0);
  push("row_mapping_mismatches", mismatches, 0.0);
  push("boundary_skipped", boundary, static_cast<double>(samples));
  return out;
}

inline std::vector<ReportRecord> scenario_delta_smoothing(const ScenarioConfig& cfg) {
  const std::array<double, 3> t_grid{-0.9, -0.99, -0.999};
  const std::array<double, 3> limit_bounds{
      bound_for(cfg, "coarse", 0.5), bound_for(cfg, "middle", 0.1),
      bound_for(cfg, "finest", 1e-2)};
  const double tol_norm = bound_for(cfg, "norm", 1e-9);
  std::vector<ReportRecord> out;
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    CaseTimer timer;
    const double norm = delta_pairing([](double) { return 1.0; }, t_grid[ti]);
    const double dev = std::abs(norm - 2.0);
    InputsBuilder in;
    in.add("t", t_grid[ti]).add("phi", "one");
    out.push_back(make_record(cfg.name, case_name("norm", static_cast<int>(ti)), in, dev,
                              tol_norm, dev <= tol_norm, timer));
  }
  struct Probe {
    const char* name;
    double (*phi)(double);
    double limit;  // 2 phi(-1)
  };
  const std::array<Probe, 3> probes{{{"x", [](double x) { return x; }, -2.0},
                                     {"x2", [](double x) { return x * x; }, 2.0},
                                     {"cos", [](double x) { return std::cos(x); },
                                      2.0 * std::cos(1.0)}}};
  int idx = 0;
  for (const Probe& probe : probes) {
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      CaseTimer timer;
      const double v = delta_pairing(probe.phi, t_grid[ti]);
      const double dev = std::abs(v - probe.limit);
      InputsBuilder in;
      in.add("t", t_grid[ti]).add("phi", probe.name).add("limit", probe.limit);
      out.push_back(make_record(cfg.name, case_name("limit", idx++), in, dev,
                                limit_bounds[ti], dev <= limit_bounds[ti], timer));
    }
  }
  return out;
}

inline std::vector<ReportRecord> scenario_hermite_pair(const ScenarioConfig& cfg) {
  const int per_case = cfg.samples > 0 ? cfg.samples : 5;
  const TruncationConfig trunc = truncation_for(cfg, 150000);
  const double tol = bound_for(cfg, "residual", 1e-4);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  int idx = 0;
  for (const int eps : {0, 1}) {
    for (const double x : {0.5, 1.5}) {
      for (int i = 0; i < per_case; ++i) {
        const double nu = rng.uniform(0.1, 4.9);
        CaseTimer timer;
        const FamilySpec spec = FamilySpec::hermite_single(x, eps);
        const double res = residual(spec, nu, trunc);
        InputsBuilder in;
        in.add("form", "single").add("x", x).add("epsilon", eps).add("nu", nu);
        out.push_back(make_record(cfg.name, case_name("single", idx++), in, res, tol,
                                  res <= tol, timer));
      }
    }
  }
  for (int i = 0; i < 2 * per_case; ++i) {
    const double x = rng.uniform(0.2, 2.0);
    const double y = rng.uniform(-x + 0.1, 2.0);
    const double nu = rng.uniform(0.1, 4.9);
    CaseTimer timer;
    const FamilySpec spec = FamilySpec::hermite_pair(x, y);
    const double res = residual(spec, nu, trunc);
    InputsBuilder in;
    in.add("form", "pair").add("x", x).add("y", y).add("nu", nu);
    out.push_back(make_record(cfg.name, case_name("pair", i), in, res, tol, res <= tol, timer));
  }
  {
    CaseTimer timer;
    int wrong = 0;
    const std::array<double, 1> one{0.7};
    const std::array<double, 2> two{0.7, 0.4};
    const std::array<double, 3> three{0.7, 0.4, 0.2};
    auto rejects = [](auto&& fn) {
      try {
        fn();
        return false;
      } catch (const invalid_spec_error&) {
        return true;
      }
    };
    if (!rejects([&] { FamilySpec::hermite_product(1, std::span<const double>(one)); })) ++wrong;
    if (!rejects([&] { FamilySpec::hermite_product(2, std::span<const double>(two)); })) ++wrong;
    if (!rejects([&] { FamilySpec::hermite_product(3, std::span<const double>(one)); })) ++wrong;
    if (!rejects([&] { FamilySpec::hermite_product(1, std::span<const double>(three)); })) ++wrong;
    if (rejects([&] { FamilySpec::hermite_product(2, std::span<const double>(one)); })) ++wrong;
    if (rejects([&] { FamilySpec::hermite_product(1, std::span<const double>(two)); })) ++wrong;
    InputsBuilder in;
    in.add("combos", std::string("(1,1),(2,2),(3,1),(1,3) rejected; (2,1),(1,2) accepted"));
    out.push_back(make_record(cfg.name, "constructor_rule", in, wrong, 0.0, wrong == 0, timer));
  }
  return out;
}

inline std::vector<ReportRecord> scenario_necessity_fail(const ScenarioConfig& cfg) {
  const int cases = cfg.samples > 0 ? cfg.samples : 20;
  TruncationConfig trunc = truncation_for(cfg, 4000);
  const double threshold = bound_for(cfg, "residual", 1e-2);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  std::vector<double> res_single, res_double;
  int reproduced = 0;
  for (int i = 0; i < cases; ++i) {
    const double nu = rng.uniform(0.1, 4.9);
    const auto th = sample_angles_in_domain(rng, 3, pi - 0.3);
    CaseTimer timer;
    const std::vector<JacobiParams> ps(3, JacobiParams{0.5, 0.0});
    const FamilySpec spec = FamilySpec::jacobi_product(ps, th);
    const double r1 = residual(spec, nu, trunc);
    TruncationConfig doubled = trunc;
    doubled.n_max *= 2;
    const double r2 = residual(spec, nu, doubled);
    res_single.push_back(r1);
    res_double.push_back(r2);
    const double measured = std::min(r1, r2);
    const bool fail_reproduced = measured > threshold;
    reproduced += fail_reproduced ? 1 : 0;
    InputsBuilder in;
    in.add("nu", nu).add("thetas", std::span<const double>(th));
    in.add("residual_nmax", r1).add("residual_2nmax", r2);
    out.push_back(make_record(cfg.name, case_name("case", i), in, measured, threshold,
                              fail_reproduced, timer));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  {
    CaseTimer timer;
    const double fraction = static_cast<double>(reproduced) / cases;
    const double deficit = std::max(0.0, 0.9 - fraction);
    InputsBuilder in;
    in.add("fraction_reproduced", fraction);
    out.push_back(make_record(cfg.name, "zz_aggregate_fraction", in, deficit, 0.0,
                              deficit <= 0.0, timer));
  }
  {
    CaseTimer timer;
    const double ratio = median(res_single) / std::max(median(res_double), 1e-300);
    const double decay = std::max(0.0, ratio - 1.1);
    InputsBuilder in;
    in.add("median_nmax", median(res_single)).add("median_2nmax", median(res_double));
    out.push_back(make_record(cfg.name, "zz_aggregate_doubling", in, decay, 0.0,
                              decay <= 0.0, timer));
  }
  return out;
}

inline std::vector<ReportRecord> scenario_outside_domain_fail(const ScenarioConfig& cfg) {
  const int cases = cfg.samples > 0 ? cfg.samples : 12;
  TruncationConfig trunc = truncation_for(cfg, 4000);
  const double threshold = bound_for(cfg, "residual", 1e-3);
  Rng rng(cfg.seed);
  std::vector<ReportRecord> out;
  int reproduced = 0;
  std::vector<double> res_single, res_double;
  for (int i = 0; i < cases; ++i) {
    const double total = pi + 0.2;
    const double u = rng.uniform(0.3, 0.7);
    const std::vector<double> th{u * total, (1.0 - u) * total};
    const double nu = rng.uniform(0.1, 4.9);
    CaseTimer timer;
    const FamilySpec spec = FamilySpec::legendre(th);
    const double r1 = residual(spec, nu, trunc);
    TruncationConfig doubled = trunc;
    doubled.n_max *= 2;
    const double r2 = residual(spec, nu, doubled);
    res_single.push_back(r1);
    res_double.push_back(r2);
    const double measured = std::min(r1, r2);
    const bool fail_reproduced = measured > threshold;
    reproduced += fail_reproduced ? 1 : 0;
    InputsBuilder in;
    in.add("nu", nu).add("thetas", std::span<const double>(th));
    in.add("residual_nmax", r1).add("residual_2nmax", r2);
    out.push_back(make_record(cfg.name, case_name("case", i), in, measured, threshold,
                              fail_reproduced, timer));
  }
  {
    CaseTimer timer;
    const double fraction = static_cast<double>(reproduced) / cases;
    const double deficit = std::max(0.0, 0.9 - fraction);
    InputsBuilder in;
    in.add("fraction_reproduced", fraction);
    out.push_back(make_record(cfg.name, "zz_aggregate_fraction", in, deficit, 0.0,
                              deficit <= 0.0, timer));
  }
  return out;
}

}  // namespace detail

inline const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = [] {
    std::vector<ScenarioInfo> r;
    r.push_back({"prop1_jacobi",
                 "single and exchanged-pair Jacobi expansions over three parameter pairs",
                 false,
                 {"table3:single", "table3:pair-swap"},
                 detail::scenario_prop1_jacobi});
    r.push_back({"gegenbauer_multi",
                 "3- and 4-factor Gegenbauer expansions plus one/two-sided sum agreement",
                 false,
                 {"table3:gegenbauer-multi", "remark:bilateral"},
                 detail::scenario_gegenbauer_multi});
    r.push_back({"legendre_sinc",
                 "Legendre products, 1 to 4 factors, accelerated residuals",
                 false,
                 {"table3:legendre"},
                 detail::scenario_legendre_sinc});
    r.push_back({"g3_closed",
                 "three-angle closed form against the Abel extrapolation",
                 false,
                 {"gseries:n3"},
                 detail::scenario_g3_closed});
    r.push_back({"g4_table2",
                 "four-angle closed forms per sign class, plus exchange symmetry",
                 false,
                 {"table2:pp", "table2:mm", "table2:pm", "table2:mp"},
                 detail::scenario_g4_table2});
    r.push_back({"table1_sweep",
                 "randomized sign-classification sweep with the quartic identities",
                 false,
                 {"table1"},
                 detail::scenario_table1_sweep});
    r.push_back({"delta_smoothing",
                 "smoothed pairings of the one-factor point mass against test functions",
                 false,
                 {"gseries:n1", "gseries:n2"},
                 detail::scenario_delta_smoothing});
    r.push_back({"hermite_pair",
                 "Hermite single/pair expansions and the k N = 2 constructor rule",
                 false,
                 {"hermite"},
                 detail::scenario_hermite_pair});
    r.push_back({"necessity_fail",
                 "asymmetric three-factor Jacobi products, expected residual blow-up",
                 true,
                 {"table3:necessity"},
                 detail::scenario_necessity_fail});
    r.push_back({"outside_domain_fail",
                 "two-factor Legendre outside the angle domain, expected residual floor",
                 true,
                 {"outside-domain"},
                 detail::scenario_outside_domain_fail});
    return r;
  }();
  return registry;
}

inline const ScenarioInfo& find_scenario(const std::string& name) {
  for (const ScenarioInfo& s : scenario_registry())
    if (s.name == name) return s;
  throw invalid_spec_error("unknown scenario: " + name);
}

inline std::vector<ReportRecord> run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const ScenarioInfo& info = find_scenario(cfg.name);
  std::vector<ReportRecord> records = info.run(cfg);
  std::stable_sort(records.begin(), records.end(),
                   [](const ReportRecord& a, const ReportRecord& b) {
                     return a.case_id < b.case_id;
                   });
  return records;
}

// Byte-stable report writer: fixed field order, 17-significant-digit floats,
// LF line endings.
inline void emit_report(std::span<const ReportRecord> records, ReportFormat format,
                        const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
  if (format == ReportFormat::csv) {
    os << "scenario,case_id,inputs_json,measured,bound,pass,wall_time_ms\n";
    for (const ReportRecord& r : records) {
      std::string ij = detail::inputs_json(r);
      std::string quoted = "\"";
      for (char c : ij) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
      }
      quoted += "\"";
      os << r.scenario << ',' << r.case_id << ',' << quoted << ','
         << detail::fmt17(r.measured) << ',' << detail::fmt17(r.bound) << ','
         << (r.pass ? "true" : "false") << ',' << detail::fmt17(r.wall_time_ms) << '\n';
    }
  } else {
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const ReportRecord& r = records[i];
      std::string ij = detail::inputs_json(r);
      std::string escaped;
      for (char c : ij) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += c;
      }
      os << "  {\"scenario\":\"" << r.scenario << "\",\"case_id\":\"" << r.case_id
         << "\",\"inputs_json\":\"" << escaped << "\",\"measured\":" << detail::fmt17(r.measured)
         << ",\"bound\":" << detail::fmt17(r.bound) << ",\"pass\":" << (r.pass ? "true" : "false")
         << ",\"wall_time_ms\":" << detail::fmt17(r.wall_time_ms) << "}"
         << (i + 1 < records.size() ? "," : "") << "\n";
    }
    os << "]\n";
  }
  if (!os.good()) throw std::runtime_error("emit_report: write to '" + path + "' failed");
}

}  // namespace sincsum
