#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "nsk/errors.hpp"
#include "nsk/profile.hpp"
#include "nsk/spectrum.hpp"

using namespace nsk;
using namespace nsk::testing;

namespace {

const FluidModel kModel = numexample_model();
const ShockData kShock = numexample_shock(kModel);

// Distance between two unordered pairs.
double set_distance(Complex a1, Complex a2, Complex b1, Complex b2) {
  return std::min(std::max(std::abs(a1 - b1), std::abs(a2 - b2)), std::max(std::abs(a1 - b2), std::abs(a2 - b1)));
}

// Number of right-half-plane roots of a real quartic from the first column of its Routh array.
int routh_hurwitz_rhp(const std::array<double, 5>& a) {
  std::vector<std::vector<double>> rows{{a[0], a[2], a[4]}, {a[1], a[3], 0.0}};
  for (int r = 2; r < 5; ++r) {
    const auto& p = rows[r - 2];
    const auto& q = rows[r - 1];
    std::vector<double> row(3, 0.0);
    for (int j = 0; j + 1 < 3; ++j) row[j] = (q[0] * p[j + 1] - p[0] * q[j + 1]) / q[0];
    rows.push_back(row);
  }
  int changes = 0;
  for (int r = 1; r < 5; ++r) changes += (rows[r][0] > 0.0) != (rows[r - 1][0] > 0.0);
  return changes;
}

}  // namespace

TEST_CASE("dispersion roots") {
  for (EndState e : {EndState::Minus, EndState::Plus}) {
    const DispersionPair z = dispersion_roots(kShock, kModel, e, 0.0);
    CHECK(z.l1 == Complex(0.0, 0.0));
    CHECK(z.l2 == Complex(0.0, 0.0));
  }
  const DispersionPair r = dispersion_roots(kShock, kModel, EndState::Plus, 0.5);
  CHECK(r.delta_tilde == doctest::Approx(-4.0766666666666667).epsilon(1e-13));
  CHECK(set_distance(r.l1, r.l2, {-0.15, 0.51393815353844894}, {-0.15, -1.5051375425825922}) < 1e-13);
  CHECK(dispersion_residual(kShock, kModel, EndState::Plus, 0.5, r.l1) <= 1e-10);
  CHECK(dispersion_residual(kShock, kModel, EndState::Plus, 0.5, r.l2) <= 1e-10);
  // a negative discriminant: equal real parts -xi^2 mu / (2V)
  CHECK(r.l1.real() == doctest::Approx(-0.25 * 1.2 / 2.0).epsilon(1e-13));
  CHECK(r.l2.real() == doctest::Approx(-0.25 * 1.2 / 2.0).epsilon(1e-13));
}

TEST_CASE("dispersion roots: closed form, residuals and symmetry") {
  ShockSampler sampler(17);
  for (int trial = 0; trial < 40; ++trial) {
    const FluidModel m = sampler.model();
    const ShockData sh = trial % 2 ? sampler.backward(m) : sampler.forward(m);
    for (EndState e : {EndState::Minus, EndState::Plus}) {
      const double xi = sampler.uniform(-3.0, 3.0);
      const DispersionPair q = dispersion_roots(sh, m, e, xi);
      const DispersionPair c = dispersion_closed_form(sh, m, e, xi);
      CHECK(set_distance(q.l1, q.l2, c.l1, c.l2) <= 1e-10 * std::max(1.0, std::abs(q.l1) + std::abs(q.l2)));
      CHECK(dispersion_residual(sh, m, e, xi, q.l1) <= 1e-9);
      CHECK(dispersion_residual(sh, m, e, xi, q.l2) <= 1e-9);
      // lambda(-xi) = conj(lambda(xi)) as a set of roots
      const DispersionPair mirror = dispersion_roots(sh, m, e, -xi);
      CHECK(set_distance(mirror.l1, mirror.l2, std::conj(q.l1), std::conj(q.l2)) <=
            1e-12 * std::max(1.0, std::abs(q.l1) + std::abs(q.l2)));
      if (q.delta_tilde > 0.0) {
        // real radical: branch 1 carries the + sign, and the labels survive the mirror
        CHECK(q.l1.real() >= q.l2.real());
        CHECK(std::abs(mirror.l1 - std::conj(q.l1)) <= 1e-12 * std::max(1.0, std::abs(q.l1)));
      }
    }
  }
}

TEST_CASE("Fredholm borders stay in the left half-plane") {
  const SpectrumReport rep = fredholm_borders(kShock, kModel, -3.0, 3.0, 601);
  REQUIRE(rep.xi_grid.size() == 601);
  CHECK(rep.xi_grid.front() == -3.0);
  CHECK(rep.xi_grid.back() == 3.0);
  CHECK(rep.xi_grid[300] == 0.0);
  CHECK(rep.max_re <= 1e-12);
  double min_abs = 1e300;
  std::size_t argmin = 0;
  for (int e = 0; e < 2; ++e) {
    for (int b = 0; b < 2; ++b) {
      const auto& curve = rep.curves[e][b];
      REQUIRE(curve.size() == 601);
      for (std::size_t k = 0; k < curve.size(); ++k) {
        const double xi = rep.xi_grid[k];
        if (std::abs(xi) >= 0.01) CHECK(curve[k].real() <= -1e-12 * xi * xi);
        if (std::abs(curve[k]) < min_abs) {
          min_abs = std::abs(curve[k]);
          argmin = k;
        }
      }
    }
  }
  CHECK(min_abs == 0.0);
  CHECK(rep.xi_grid[argmin] == 0.0);
  CHECK(rep.m_value == doctest::Approx(oracle::kM15).epsilon(1e-12));
  REQUIRE(rep.power_law_check.has_value());
  CHECK(rep.power_law_check->passes);

  // random shocks of both families
  ShockSampler sampler(8);
  for (int trial = 0; trial < 20; ++trial) {
    const FluidModel m = sampler.model();
    const ShockData sh = trial % 2 ? sampler.backward(m) : sampler.forward(m);
    CHECK(fredholm_borders(sh, m, -5.0, 5.0, 201).max_re <= 1e-12);
  }
  const std::string csv = spectrum_csv(rep);
  CHECK(csv.rfind("xi,re_l1_minus,im_l1_minus,re_l2_minus,im_l2_minus,re_l1_plus,im_l1_plus,re_l2_plus,im_l2_plus\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 602);
  CHECK(csv.find("\n0,0,0,0,0,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("quartic coefficients and roots") {
  const auto z = quartic_coeffs(kShock, kModel, EndState::Plus, 0.0);
  CHECK(z[3] == Complex(0.0, 0.0));
  CHECK(z[4] == Complex(0.0, 0.0));

  const auto a = quartic_coeffs(kShock, kModel, EndState::Plus, 10.0);
  const double ref[5] = {1.0, -0.11894392668529719, -1.2684190437825184, 1.9823987780882864, 10.0};
  for (int k = 0; k < 5; ++k) {
    CHECK(a[k].imag() == 0.0);
    CHECK(a[k].real() == doctest::Approx(ref[k]).epsilon(1e-13));
  }
  const auto roots = quartic_roots(a);
  const Complex expect[4] = {{-1.3535458411522766, -0.96540128194998918},
                             {-1.3535458411522766, 0.96540128194998918},
                             {1.4130178044949252, -1.2732686881013855},
                             {1.4130178044949252, 1.2732686881013855}};
  for (const Complex& e : expect) {
    double nearest = 1e300;
    for (const Complex& got : roots) nearest = std::min(nearest, std::abs(got - e));
    CHECK(nearest < 1e-12);
  }

  // complex lambda: coefficients become complex, roots still satisfy the quartic
  const auto c = quartic_coeffs(kShock, kModel, EndState::Minus, Complex(1.0, 2.0));
  CHECK(c[3].imag() != 0.0);
  for (const Complex& th : quartic_roots(c)) {
    Complex sum = 0.0, scale = 0.0;
    for (int k = 0; k < 5; ++k) {
      sum = sum * th + c[k];
      scale = scale * std::abs(th) + std::abs(c[k]);
    }
    CHECK(std::abs(sum) <= 1e-12 * std::abs(scale));
  }
}

TEST_CASE("consistent splitting") {
  const struct {
    EndState which;
    Complex roots[4];
  } cases[] = {{EndState::Plus,
                {{-4.3112271257860514, -3.4215148767030293},
                 {-4.3112271257860514, 3.4215148767030293},
                 {4.3706990891287, -3.729267077281216},
                 {4.3706990891287, 3.729267077281216}}},
               {EndState::Minus,
                {{-8.8298120239289938, -6.452506142540035},
                 {-8.8298120239289938, 6.452506142540035},
                 {9.1308888383511523, -7.7126766717095285},
                 {9.1308888383511523, 7.7126766717095285}}}};
  for (const auto& c : cases) {
    const Splitting sp = consistent_splitting(kShock, kModel, c.which, 100.0);
    CHECK(sp.n_stable == 2);
    CHECK(sp.n_unstable == 2);
    CHECK(sp.n_center == 0);
    CHECK(sp.sign_pattern_ok);
    CHECK(sp.max_residual <= 1e-12);
    for (const Complex& expect : c.roots) {
      double nearest = 1e300;
      for (const Complex& got : sp.roots) nearest = std::min(nearest, std::abs(got - expect));
      CHECK(nearest < 1e-11 * std::abs(expect));
    }
  }
  CHECK((consistent_splitting(kShock, kModel, EndState::Plus, 100.0).sign_pattern ==
         std::array<int, 5>{1, -1, -1, 1, 1}));
  // A degenerate (non-physical) configuration whose quartic is biquadratic with all roots on the
  // imaginary axis: s = 0 and a negative viscosity.
  ShockData still = kShock;
  still.speed = 0.0;
  const TabulatedCallable negative{{[](double) { return -10.0; }}};
  const FluidModel odd(PowerLaw{1.0, -5.0 / 3.0}, negative, PowerLaw{10.0, -7.0}, Frame::Lagrangian);
  CHECK_THROWS_AS(consistent_splitting(still, odd, EndState::Plus, 1.0), CenterRootError);
  CHECK_THROWS_AS(consistent_splitting(kShock, kModel, EndState::Plus, 0.0), std::invalid_argument);
}

TEST_CASE("splitting on random shocks, checked against Routh-Hurwitz") {
  ShockSampler sampler(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FluidModel m = trial % 4 ? sampler.model() : numexample_model();
    const bool backward = trial % 2 == 0;
    const ShockData sh = backward ? sampler.backward(m) : sampler.forward(m);
    const double probe = 100.0 * (1.0 + std::abs(sh.speed));
    for (EndState e : {EndState::Minus, EndState::Plus}) {
      const Splitting sp = consistent_splitting(sh, m, e, probe);
      CHECK(sp.n_stable == 2);
      CHECK(sp.n_unstable == 2);
      CHECK(sp.sign_pattern_ok);
      std::array<double, 5> real{};
      for (int k = 0; k < 5; ++k) real[k] = quartic_coeffs(sh, m, e, probe)[k].real();
      CHECK(routh_hurwitz_rhp(real) == sp.n_unstable);
    }
  }
}

TEST_CASE("point condition") {
  CHECK(point_condition_m(kModel, 1.5) == doctest::Approx(oracle::kM15).epsilon(1e-13));
  CHECK(point_condition_m(kModel, 1.5) < 0.0);
  CHECK_THROWS_AS(point_condition_m(kModel, 1e-4), DomainError);

  ShockSampler sampler(77);
  for (int trial = 0; trial < 50; ++trial) {
    const double gamma = sampler.uniform(1.0, 8.0), beta = sampler.uniform(-6.0, 3.0);
    const double v = sampler.uniform(0.2, 4.0);
    const FluidModel m = power_law_model({1.0, -gamma}, {1.0, 0.0}, {1.0, -beta - 5.0});
    const double mval = point_condition_m(m, v);
    const double closed = (-gamma * (beta + 5.0) + gamma * (gamma + 1.0)) * std::pow(v, -gamma - beta - 7.0);
    CHECK((mval > 0.0) == (gamma - beta - 4.0 > 0.0));
    CHECK(std::abs(mval - closed) <= 1e-10 * std::abs(closed));
    const auto check = power_law_check(m, v);
    REQUIRE(check.has_value());
    CHECK(check->passes);
    CHECK(check->gamma == doctest::Approx(gamma));
    CHECK(check->beta == doctest::Approx(beta));

    // constant capillarity: M = kappa p'' > 0 for any convex pressure
    const FluidModel flat = power_law_model({sampler.uniform(0.5, 2.0), -gamma}, {1.0, 0.0},
                                            {sampler.uniform(0.5, 5.0), 0.0});
    CHECK(point_condition_m(flat, v) > 0.0);
  }
  const TabulatedCallable one{{[](double) { return 1.0; }}};
  CHECK_FALSE(power_law_check(FluidModel(PowerLaw{1.0, -1.4}, PowerLaw{1.0, 0.0}, one, Frame::Lagrangian), 1.0));
}

TEST_CASE("energy diagnostics") {
  SUBCASE("constant state") {
    ProfileSolution rest;
    rest.step = 1e-3;
    for (int k = 0; k < 20; ++k) {
      rest.y_grid.push_back(k * 1e-3);
      rest.v_samples.push_back(1.5);
      rest.q_samples.push_back(0.0);
      rest.u_samples.push_back(0.0);
      rest.h_samples.push_back(0.0);
    }
    const EnergyDiagnostics d = energy_diagnostics(rest, kShock, kModel);
    for (std::size_t k = 0; k < rest.size(); ++k) {
      CHECK(d.f1[k] == doctest::Approx(-oracle::kDpAt15).epsilon(1e-14));
      // f(V-) vanishes only to rounding, so the profile derivatives are ~1e-16
      CHECK(std::abs(d.f2[k]) < 1e-14);
      CHECK(std::abs(d.f3[k]) < 1e-14);
    }
  }
  SUBCASE("M > 0: f1 bounded below, f2 and f3 pinched by |V'|") {
    const FluidModel m = power_law_model({1.0, -1.4}, {1.0, 0.0}, {1.0, 0.0});
    REQUIRE(point_condition_m(m, 2.5) > 0.0);
    const ShockData sh = build_shock(m, 2.5, 2.48, 0.0, ShockFamily::Lax1Backward);
    ShootOptions opts;  // the node is approached slowly at this amplitude
    opts.step = 1e-2;
    const ProfileSolution sol = shoot_profile(sh, m, opts);
    REQUIRE(sol.converged);
    REQUIRE(sol.monotone);
    const EnergyDiagnostics d = energy_diagnostics(sol, sh, m);
    CHECK(d.min_f1 > 0.0);
    CHECK(d.negative_f2 == 0);
    CHECK(d.negative_f3 == 0);
    CHECK(d.min_f2_ratio > 0.0);
    CHECK(d.min_f3_ratio > 0.0);
    CHECK(std::isfinite(d.max_f2_ratio));
    CHECK(std::isfinite(d.max_f3_ratio));
  }
  SUBCASE("M < 0: f3 changes sign and is reported") {
    const ShockData sh = build_shock(kModel, 2.5, 2.48, 0.0, ShockFamily::Lax1Backward);
    REQUIRE(point_condition_m(kModel, 2.5) < 0.0);
    const ProfileSolution sol = shoot_profile(sh, kModel);
    REQUIRE(sol.converged);
    const EnergyDiagnostics d = energy_diagnostics(sol, sh, kModel);
    CHECK(d.min_f1 > 0.0);
    CHECK(d.negative_f3 > 0);
  }
  SUBCASE("vanishing f1 is rejected") {
    ProfileSolution bad;
    bad.step = 1e-3;
    bad.y_grid = {0.0};
    bad.v_samples = {1.5};
    bad.q_samples = {0.0};
    bad.u_samples = {0.0};
    bad.h_samples = {0.0};
    const TabulatedCallable flat_p{{[](double v) { return -v; }, [](double) { return 0.0; },
                                    [](double) { return 0.0; }, [](double) { return 0.0; }}};
    const FluidModel m(flat_p, PowerLaw{1.0, 0.0}, PowerLaw{1.0, 0.0}, Frame::Lagrangian);
    CHECK_THROWS_AS(energy_diagnostics(bad, kShock, m), SmallDenominatorError);
  }
}
