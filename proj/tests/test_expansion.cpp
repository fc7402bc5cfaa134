#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sincsum/expansion.hpp"

using namespace sincsum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_domain_angles(std::mt19937_64& gen, int n, double margin) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> g(n + 1);
  double sum = 0.0;
  for (double& v : g) {
    v = -std::log1p(-u01(gen));
    sum += v;
  }
  std::vector<double> th(n);
  for (int i = 0; i < n; ++i)
    th[i] = g[i] / sum * (pi - margin) * (u01(gen) < 0.5 ? -1.0 : 1.0);
  return th;
}

}  // namespace

TEST_CASE("coeff_c interpolation property") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 10; ++n) {
      const double c = coeff_c(static_cast<double>(m), n, 0.75);
      CHECK(c == (m == n ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("coeff_c half-integer identity") {
  // 2 gamma = 1: c = sinc(nu - n) + sinc(nu + n + 1)
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> nd(0.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    const double nu = nd(gen);
    const int n = i % 12;
    CHECK_THAT(coeff_c(nu, n, 0.5),
               WithinAbs(sinc(nu - n) + sinc(nu + n + 1.0), 1e-13));
  }
}

TEST_CASE("coeff_c pole handling") {
  CHECK_THROWS_AS(coeff_c(-4.5, 2, 1.25), pole_error);      // nu + n + 2 gamma = 0, sine nonzero
  CHECK_THAT(coeff_c(-5.0, 2, 1.5), WithinAbs(1.0, 1e-14));   // removable double zero, odd 2 gamma
  CHECK_THAT(coeff_c(-6.0, 2, 2.0), WithinAbs(-1.0, 1e-14));  // even 2 gamma flips the sign
}

TEST_CASE("family spec validation") {
  CHECK_THROWS_AS(FamilySpec::legendre({}), invalid_spec_error);
  CHECK_THROWS_AS(FamilySpec::legendre({3.2}), invalid_spec_error);
  CHECK_THROWS_AS(FamilySpec::gegenbauer(-0.6, {1.0}), invalid_spec_error);
  CHECK_THROWS_AS(FamilySpec::hermite_single(-0.5, 0), invalid_spec_error);
  CHECK_THROWS_AS(FamilySpec::hermite_single(0.5, 2), invalid_spec_error);
  CHECK_THROWS_AS(FamilySpec::hermite_pair(0.3, -0.5), invalid_spec_error);
  CHECK_THROWS_AS(
      FamilySpec::jacobi_product({JacobiParams{0.5, 0.0}, JacobiParams{0.0, 0.0}}, {0.5, 0.4}),
      invalid_spec_error);

  const std::array<double, 2> two{0.7, 0.4};
  CHECK_THROWS_AS(FamilySpec::hermite_product(2, std::span<const double>(two)),
                  invalid_spec_error);
  CHECK_NOTHROW(FamilySpec::hermite_product(1, std::span<const double>(two)));
}

TEST_CASE("paper validity flags") {
  CHECK(FamilySpec::legendre({0.5, 0.4, 0.3}).paper_valid());
  CHECK(FamilySpec::gegenbauer(1.5, {0.5, 0.4, 0.3}).paper_valid());
  CHECK(FamilySpec::jacobi_pair(JacobiParams{0.5, 0.0}, 0.5, 0.4).paper_valid());
  CHECK(FamilySpec::jacobi_product({JacobiParams{0.5, 0.0}}, {0.5}).paper_valid());
  const std::vector<JacobiParams> unswapped(2, JacobiParams{0.5, 0.0});
  CHECK_FALSE(FamilySpec::jacobi_product(unswapped, {0.5, 0.4}).paper_valid());
  const std::vector<JacobiParams> asym(3, JacobiParams{0.5, 0.0});
  CHECK_FALSE(FamilySpec::jacobi_product(asym, {0.5, 0.4, 0.3}).paper_valid());
  const std::vector<JacobiParams> sym(3, JacobiParams{0.25, 0.25});
  CHECK(FamilySpec::jacobi_product(sym, {0.5, 0.4, 0.3}).paper_valid());
}

TEST_CASE("in_domain predicate") {
  CHECK(in_domain(std::vector<double>{pi / 6, pi / 6, pi / 6}));
  CHECK_FALSE(in_domain(std::vector<double>{pi / 2, pi / 2, pi / 2}));
  for (double t : {0.3, 1.0, 1.5}) {
    CHECK(in_domain(std::vector<double>{t, -t}));
  }
  CHECK_THROWS_AS(AngleTuple({0.5, 3.5}), invalid_spec_error);
}

TEST_CASE("family_value closed cases") {
  // single Legendre at integer degree: the normalization is exactly 1
  const FamilySpec leg = FamilySpec::legendre({1.0});
  CHECK_THAT(family_value(leg, 3.0), WithinRel(legendre_p(3.0, std::cos(1.0)), 1e-13));

  // Hermite pair at nu = 1
  const FamilySpec hp = FamilySpec::hermite_pair(0.8, 0.5);
  CHECK_THAT(family_value(hp, 1.0), WithinRel(0.8, 1e-12));

  // pair reduces to the single factor when the second point sits at 1
  const JacobiParams p{0.3, -0.2};
  const FamilySpec pair = FamilySpec::jacobi_pair(p, 0.9, 0.0);
  const FamilySpec single = FamilySpec::jacobi_product({p}, {0.9});
  CHECK_THAT(family_value(pair, 1.7), WithinRel(family_value(single, 1.7), 1e-13));
}

TEST_CASE("interpolation exactness at integer degrees") {
  std::mt19937_64 gen(19);
  std::vector<FamilySpec> specs;
  specs.push_back(FamilySpec::legendre(random_domain_angles(gen, 2, 0.3)));
  specs.push_back(FamilySpec::gegenbauer(1.25, random_domain_angles(gen, 3, 0.3)));
  specs.push_back(FamilySpec::jacobi_pair(JacobiParams{0.3, -0.2}, 0.8, 0.6));
  specs.push_back(FamilySpec::hermite_single(0.9, 1));
  specs.push_back(FamilySpec::hermite_pair(0.8, 0.5));
  for (const FamilySpec& spec : specs) {
    for (int m = 0; m <= 20; ++m) {
      const double direct = family_value(spec, m);
      const double summed = sampling_sum(spec, m, {1000, Acceleration::wynn_epsilon, 1e-8}).value;
      CHECK_THAT(summed, WithinAbs(direct, 1e-10 * (1.0 + std::abs(direct))));
    }
  }
}

TEST_CASE("sampling_sum single Legendre against direct evaluation") {
  const FamilySpec spec = FamilySpec::legendre({1.0});
  const double direct = legendre_p(0.5, std::cos(1.0));
  const SumResult s = sampling_sum(spec, 0.5);
  CHECK_THAT(s.value, WithinAbs(direct, 1e-6));
}

TEST_CASE("sampling_sum multi-factor Gegenbauer") {
  const FamilySpec spec = FamilySpec::gegenbauer(1.0, {0.5, 0.6, 0.7});
  const double direct = family_value(spec, 0.5);
  CHECK_THAT(sampling_sum(spec, 0.5).value, WithinAbs(direct, 1e-5));
}

TEST_CASE("swap rule leaves the pair expansion unchanged") {
  const JacobiParams p{0.3, -0.2};
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> nd(0.1, 4.9);
  for (int i = 0; i < 5; ++i) {
    const double nu = nd(gen);
    const auto th = random_domain_angles(gen, 2, 0.3);
    const FamilySpec a = FamilySpec::jacobi_pair(p, th[0], th[1]);
    const FamilySpec b = FamilySpec::jacobi_pair(p.swapped(), th[1], th[0]);
    const double va = sampling_sum(a, nu).value;
    const double vb = sampling_sum(b, nu).value;
    CHECK_THAT(va, WithinAbs(vb, 1e-12 * (1.0 + std::abs(va))));
  }
}

TEST_CASE("pair at the unit point equals the single-factor run exactly") {
  const JacobiParams p{0.7, 0.2};
  const FamilySpec pair = FamilySpec::jacobi_pair(p, 0.9, 0.0);
  const FamilySpec single = FamilySpec::jacobi_product({p}, {0.9});
  for (double nu : {0.4, 1.3, 2.9}) {
    CHECK(sampling_sum(pair, nu).value == sampling_sum(single, nu).value);
  }
}

TEST_CASE("bilateral and unilateral sums agree for integer 2 gamma") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> nd(0.1, 4.9);
  for (double gamma : {0.5, 1.0, 1.5}) {
    for (int i = 0; i < 4; ++i) {
      const double nu = nd(gen);
      const auto th = random_domain_angles(gen, 2, 0.3);
      const FamilySpec spec = FamilySpec::gegenbauer(gamma, th);
      const double uni = sampling_sum(spec, nu).value;
      const double bil = bilateral_sinc_sum(spec, nu).value;
      CHECK_THAT(bil, WithinAbs(uni, 1e-6 * (1.0 + std::abs(uni))));
    }
  }
  // integer degree recovers the family value exactly through the bilateral path
  const FamilySpec spec = FamilySpec::legendre({0.8});
  CHECK_THAT(bilateral_sinc_sum(spec, 2.0).value,
             WithinAbs(family_value(spec, 2.0), 1e-12));
  CHECK_THROWS_AS(bilateral_sinc_sum(FamilySpec::gegenbauer(0.75, {0.5}), 0.5),
                  invalid_spec_error);
  CHECK_THROWS_AS(bilateral_sinc_sum(FamilySpec::hermite_pair(0.8, 0.5), 0.5),
                  invalid_spec_error);
}

TEST_CASE("residual stays small inside the domain") {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> nd(0.1, 4.9);
  // swapped Jacobi pair, the headline case
  const JacobiParams p{0.3, -0.2};
  for (int i = 0; i < 4; ++i) {
    const double nu = nd(gen);
    const auto th = random_domain_angles(gen, 2, 0.3);
    CHECK(residual(FamilySpec::jacobi_pair(p, th[0], th[1]), nu) <= 1e-5);
  }
  CHECK(residual(FamilySpec::jacobi_pair(p, 0.9, 0.7), 1.3) <= 1e-5);
}

TEST_CASE("outside-domain witness: residual persists under doubling") {
  const FamilySpec spec = FamilySpec::legendre({1.8, pi + 0.2 - 1.8});
  const double r1 = residual(spec, 1.7, {4000, Acceleration::wynn_epsilon, 1e-8});
  const double r2 = residual(spec, 1.7, {8000, Acceleration::wynn_epsilon, 1e-8});
  CHECK(r1 > 1e-3);
  CHECK(r2 > 1e-3);
}

TEST_CASE("acceleration modes") {
  const FamilySpec spec = FamilySpec::legendre({1.0});
  const double direct = legendre_p(0.7, std::cos(1.0));
  TruncationConfig t;
  t.acceleration = Acceleration::none;
  const SumResult raw = sampling_sum(spec, 0.7, t);
  t.acceleration = Acceleration::cesaro;
  const SumResult ces = sampling_sum(spec, 0.7, t);
  t.acceleration = Acceleration::wynn_epsilon;
  const SumResult wyn = sampling_sum(spec, 0.7, t);
  CHECK(std::abs(wyn.value - direct) <= std::abs(raw.value - direct));
  CHECK(std::abs(ces.value - direct) <= std::abs(raw.value - direct) * 10.0);
  CHECK(std::abs(wyn.value - direct) < 1e-8);
  CHECK(wyn.est_tail >= 0.0);
  CHECK(raw.raw == raw.value);
}

TEST_CASE("truncation config validation") {
  TruncationConfig t;
  t.n_max = 4;
  CHECK_THROWS_AS(t.validate(), invalid_spec_error);
  t.n_max = 100;
  t.tail_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), invalid_spec_error);
}

TEST_CASE("hermite single family matches its sinc expansion") {
  const FamilySpec spec = FamilySpec::hermite_single(0.5, 0);
  const TruncationConfig t{150000, Acceleration::wynn_epsilon, 1e-8};
  for (double nu : {0.6, 2.3}) {
    CHECK(residual(spec, nu, t) <= 1e-4);
  }
}
