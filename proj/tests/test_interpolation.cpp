#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vex/fields.hpp"
#include "vex/interpolation.hpp"
#include "vex/spaces.hpp"

using namespace vex;

namespace {

GridPtr small_box(int res = 32) {
  return Grid::lattice(Domain::box(2, point(0, 0), point(1, 1), res));
}

ScalarField indicator(const GridPtr& g, double radius, double amp = 1.0) {
  FieldFamily fam;
  fam.kind = FieldFamily::Kind::IndicatorBall;
  fam.center = point(0.5, 0.5);
  fam.outer = radius;
  fam.amp = amp;
  return fam.instantiate(g);
}

}  // namespace

TEST_CASE("k functional on indicators: min{||chi||, t}") {
  auto g = small_box();
  auto p0 = ExponentFamily::constant(1.5).instantiate(g);
  auto f = indicator(g, 0.3);
  const double nrm = luxemburg_norm(f, p0).value;

  for (double scale : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    const double t = scale * nrm;
    CHECK(k_functional_linf(f, p0, t) ==
          doctest::Approx(std::min(nrm, t)).epsilon(1e-5));
  }
}

TEST_CASE("k functional endpoint cases") {
  auto g = small_box();
  auto p0 = ExponentFamily::constant(2.0).instantiate(g);

  // constant field: objective linear in s, optimum at an endpoint
  const double c = 1.7;
  auto f = ScalarField::constant(g, c);
  const double nrm = luxemburg_norm(f, p0).value;
  for (double t : {0.1, 0.7, 1.3, 10.0})
    CHECK(k_functional_linf(f, p0, t) ==
          doctest::Approx(std::min(c * t, nrm)).epsilon(1e-5));

  // large t recovers the strong norm
  FieldFamily rand;
  rand.kind = FieldFamily::Kind::Random;
  rand.amp = 2.0;
  rand.seed = 5;
  auto fr = rand.instantiate(g);
  const double nr = luxemburg_norm(fr, p0).value;
  CHECK(k_functional_linf(fr, p0, 1e6) == doctest::Approx(nr).epsilon(1e-6));
}

TEST_CASE("k profile invariants") {
  auto g = small_box();
  auto p0 = ExponentFamily::constant(1.5).instantiate(g);
  FieldFamily rand;
  rand.kind = FieldFamily::Kind::Random;
  rand.amp = 3.0;
  rand.seed = 11;
  auto f = rand.instantiate(g);

  const double nrm = luxemburg_norm(f, p0).value;
  const double fmax = f.max_abs();

  std::vector<double> ts, ks;
  for (int i = 0; i <= 40; ++i) {
    ts.push_back(std::pow(10.0, -3.0 + 5.0 * i / 40.0));
    ks.push_back(k_functional_linf(f, p0, ts.back()));
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(ks[i] <= nrm * (1.0 + 1e-9));
    CHECK(ks[i] <= ts[i] * fmax * (1.0 + 1e-9));
    if (i > 0) {
      CHECK(ks[i] >= ks[i - 1] * (1.0 - 1e-9));              // nondecreasing
      CHECK(ks[i] / ts[i] <= ks[i - 1] / ts[i - 1] * (1.0 + 1e-9));  // K/t down
    }
    if (i > 1) {
      // concavity on the grid within slack
      const double slope_a = (ks[i - 1] - ks[i - 2]) / (ts[i - 1] - ts[i - 2]);
      const double slope_b = (ks[i] - ks[i - 1]) / (ts[i] - ts[i - 1]);
      CHECK(slope_b <= slope_a + 1e-9);
    }
  }
}

TEST_CASE("theta norm of indicators equals the strong norm of the target space") {
  auto g = small_box();
  const double theta = 0.5;
  auto p = ExponentFamily::constant(2.0).instantiate(g);
  auto p0 = ExponentFamily::constant(1.0).instantiate(g);  // (1-theta) p
  auto f = indicator(g, 0.3);

  auto prof = theta_norm(f, p0, theta);
  const double target = luxemburg_norm(f, p).value;  // ||chi||_{p0}^{1-theta}
  CHECK(prof.norm_value == doctest::Approx(target).epsilon(1e-3));
  CHECK(prof.argmax_t ==
        doctest::Approx(luxemburg_norm(f, p0).value).epsilon(0.05));

  // homogeneity of degree one
  auto f2 = f.map([](double v) { return 2.0 * v; });
  auto prof2 = theta_norm(f2, p0, theta);
  CHECK(prof2.norm_value == doctest::Approx(2.0 * prof.norm_value).epsilon(1e-6));
}

TEST_CASE("interpolation identity on a small suite") {
  auto g = small_box();
  const double theta = 0.4;
  auto p = ExponentFamily::constant(2.0).instantiate(g);

  std::vector<ScalarField> suite;
  suite.push_back(indicator(g, 0.25));
  suite.push_back(indicator(g, 0.45));
  suite.push_back(indicator(g, 0.25, 10.0));   // scaled copy
  suite.push_back(indicator(g, 0.25, 100.0));  // scaled copy

  auto rep = interpolation_identity_check(suite, p, theta);
  REQUIRE(rep.ratios.size() == 4);
  // indicator chain: ratios near 1 (weak norm carries its lambda-grid gap)
  for (double r : rep.ratios) CHECK(r == doctest::Approx(1.0).epsilon(0.02));
  // scaling leaves the ratio unchanged
  CHECK(rep.ratios[2] == doctest::Approx(rep.ratios[0]).epsilon(1e-4));
  CHECK(rep.ratios[3] == doctest::Approx(rep.ratios[0]).epsilon(1e-4));
  CHECK(rep.containment < 1.1);
}

TEST_CASE("infimum lemma closed cases") {
  // alpha=beta=1, delta=1, t=1: minimum 1 at R=1
  auto r = infimum_formula(1.0, 1.0, 1.0, 1.0);
  CHECK(r.numeric == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.formula == doctest::Approx(1.0));
  CHECK(r.argmin == doctest::Approx(1.0).epsilon(1e-4));

  // t -> 0 with delta = 1: unconstrained branch, ratio in [1, 1 + alpha/beta]
  auto r2 = infimum_formula(1.0, 1.0, 1.0, 1e-6);
  CHECK(r2.formula == doctest::Approx(1e-3));
  CHECK(r2.numeric / r2.formula >= 1.0 - 1e-6);
  CHECK(r2.numeric / r2.formula <= 2.0 + 1e-6);

  // constrained branch: R0 < delta, ratio exactly alpha/beta
  auto r3 = infimum_formula(1.0, 2.0, 2.0, 10.0);
  CHECK(r3.formula == doctest::Approx(0.25));
  CHECK(r3.numeric / r3.formula == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r3.argmin == doctest::Approx(2.0).epsilon(1e-6));

  CHECK_THROWS_AS(infimum_formula(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("infimum envelope over a parameter sample") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double delta : {0.1, 1.0, 10.0}) {
        for (int i = 0; i < 7; ++i) {
          const double t = std::pow(10.0, -3.0 + i);
          auto res = infimum_formula(alpha, beta, delta, t);
          const auto [lo, hi] = infimum_envelope(alpha, beta);
          const double ratio = res.numeric / res.formula;
          CHECK(ratio >= lo * (1.0 - 1e-6));
          CHECK(ratio <= hi * (1.0 + 1e-6));
          // argmin < 1 iff t > 1 and delta < 1 (up to golden precision)
          const bool below = res.argmin < 1.0 - 1e-6;
          const bool above = res.argmin > 1.0 + 1e-6;
          if (below) CHECK((t > 1.0 && delta < 1.0));
          if (above) CHECK(!(t > 1.0 && delta < 1.0));
        }
      }
    }
  }
}

TEST_CASE("tail kernel norm: constant exponent closed form") {
  TailKernelSpec spec;
  spec.dim = 3;
  spec.alpha = 1.0;
  spec.p = ExponentFamily::constant(2.0);
  spec.p_inf = 2.0;
  spec.r_max = 1e4;

  const double n = 3.0, a = 1.0, pp = 2.0;  // p' = 2
  std::vector<double> ratios;
  for (double delta : {0.01, 0.1, 1.0, 10.0}) {
    spec.delta = delta;
    spec.r_max = std::max(1e4, 1e3 * delta * 10.0);
    auto res = tail_kernel_norm(spec);
    const double expect =
        std::pow(sphere_area(3) / ((n - a) * pp - n), 1.0 / pp) *
        std::pow(delta, (n - (n - a) * pp) / pp);
    CHECK(res.lhs == doctest::Approx(expect).epsilon(1e-3));
    ratios.push_back(res.lhs / res.rhs);
  }
  // the ratio is independent of delta for constant p
  for (double r : ratios)
    CHECK(r == doctest::Approx(ratios.front()).epsilon(1e-3));

  // integrability edge: p^+ >= n/alpha rejected on construction
  TailKernelSpec bad = spec;
  bad.delta = 0.1;
  bad.p = ExponentFamily::constant(3.0);
  bad.p_inf = 3.0;
  CHECK_THROWS_AS(tail_kernel_norm(bad), std::invalid_argument);
}

TEST_CASE("tail kernel norm: log-holder decay profile") {
  TailKernelSpec spec;
  spec.dim = 3;
  spec.alpha = 1.0;
  spec.p = ExponentFamily::bump(1.8, 0.4);  // p(0)=1.8, p_inf = 2.2
  spec.p_inf = 2.2;

  std::vector<double> ratios;
  for (double delta : {0.01, 0.1, 1.0, 10.0}) {
    spec.delta = delta;
    spec.r_max = std::max(1e4, 1e3 * delta * 10.0);
    auto res = tail_kernel_norm(spec);
    ratios.push_back(res.lhs / res.rhs);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  CHECK(hi / lo < 3.0);  // two-sided estimate: bounded ratio across scales
}
