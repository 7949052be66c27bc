#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <doctest.h>

#include "airylab/fourier.hpp"
#include "airylab/grid.hpp"
#include "airylab/window.hpp"

using namespace airylab;

namespace {

constexpr double kPi = std::numbers::pi;

WaveField random_field(const Grid& g, Representation rep, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexVector a(g.size());
  for (auto& z : a) z = {d(rng), d(rng)};
  return WaveField(g, rep, std::move(a));
}

// (2 pi sigma^2)^(-1/4) exp(-(x-x0)^2 / 4 sigma^2 + i p0 x / hbar)
Complex gauss_x(double x, double x0, double p0, double s, double hbar) {
  return std::pow(2 * kPi * s * s, -0.25) * std::exp(-(x - x0) * (x - x0) / (4 * s * s)) *
         std::polar(1.0, p0 * x / hbar);
}

Complex gauss_p(double p, double x0, double p0, double s, double hbar) {
  const double k = (p - p0) / hbar;
  return std::pow(2 * kPi * hbar, -0.5) * std::pow(2 * kPi * s * s, -0.25) *
         std::sqrt(4 * kPi * s * s) * std::exp(-s * s * k * k) * std::polar(1.0, -(p - p0) * x0 / hbar);
}

}  // namespace

TEST_CASE("grid: construction and validation") {
  const Grid g = make_grid(1024, -10.0, 30.0, 0.5);
  CHECK(g.size() == 1024);
  CHECK(g.dx() == doctest::Approx(40.0 / 1024));
  CHECK(g.dp() == doctest::Approx(2 * kPi * 0.5 / 40.0));
  CHECK(g.p_max() == doctest::Approx(kPi * 0.5 / g.dx()));
  CHECK(g.x(0) == -10.0);
  CHECK(g.p(512) == 0.0);
  CHECK(g.p(0) == doctest::Approx(-g.p_max()));
  const auto ps = g.p_values();
  for (std::size_t j = 1; j < ps.size(); ++j) CHECK(ps[j] > ps[j - 1]);

  try {
    make_grid(100, -1, 1);
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("power of two") != std::string::npos);
  }
  CHECK_THROWS_AS(make_grid(4, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, -1, 1, 0.0), std::invalid_argument);
  CHECK(is_power_of_two(8));
  CHECK_FALSE(is_power_of_two(12));
}

TEST_CASE("grid: wavefield invariants") {
  const Grid g = make_grid(16, -1, 1);
  CHECK_THROWS_AS(WaveField(g, Representation::Position, ComplexVector(8)), std::invalid_argument);
  const WaveField a(g, Representation::Position, ComplexVector(16, Complex(0, 2)));
  CHECK(a.density()[3] == 4.0);
  const WaveField b(make_grid(16, -1, 2), Representation::Position, ComplexVector(16));
  CHECK_THROWS_AS(require_compatible(a, b), std::invalid_argument);
  CHECK_THROWS_AS(require_same_hbar(g, PhysParams{2.0, 1.0}), std::invalid_argument);
  CHECK(representation_from_string("momentum") == Representation::Momentum);
  CHECK_THROWS(representation_from_string("k-space"));
}

TEST_CASE("fourier: Gaussian against the closed-form transform") {
  for (double hbar : {1.0, 0.37}) {
    const Grid g = make_grid(2048, -30.0, 34.0, hbar);
    const double x0 = 1.5, p0 = 0.8 * hbar, s = 1.3;
    ComplexVector a(g.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = gauss_x(g.x(k), x0, p0, s, hbar);
    const WaveField mom = fourier(WaveField(g, Representation::Position, a, 0.25), Representation::Momentum);
    CHECK(mom.rep == Representation::Momentum);
    CHECK(mom.time == 0.25);
    double err = 0;
    for (std::size_t j = 0; j < mom.size(); ++j) {
      err = std::max(err, std::abs(mom.amplitudes[j] - gauss_p(g.p(j), x0, p0, s, hbar)));
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("fourier: round trip and Parseval on random fields") {
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {8u, 64u, 1024u, 8192u}) {
    for (double hbar : {1.0, 2.5}) {
      const Grid g = make_grid(n, -7.0, 3.0, hbar);
      const WaveField f = random_field(g, Representation::Position, rng);
      const WaveField F = fourier(f, Representation::Momentum);
      const WaveField back = fourier(F, Representation::Position);
      CHECK(relative_distance(back, f, Window::rect()) < 1e-14);
      CHECK(norm(F) == doctest::Approx(norm(f)).epsilon(1e-13));
      // Unitarity: inner products are preserved too.
      const WaveField h = random_field(g, Representation::Position, rng);
      const Complex ip_x = inner_product(f, h);
      const Complex ip_p = inner_product(F, fourier(h, Representation::Momentum));
      CHECK(std::abs(ip_x - ip_p) < 1e-12 * std::abs(ip_x) + 1e-12);
    }
  }
}

TEST_CASE("fourier: precondition and helpers") {
  const Grid g = make_grid(32, -1, 1);
  std::mt19937_64 rng(7);
  const WaveField f = random_field(g, Representation::Position, rng);
  CHECK_THROWS_AS(fourier(f, Representation::Position), std::invalid_argument);
  CHECK(to_representation(f, Representation::Position).amplitudes == f.amplitudes);

  const WaveField h = random_field(g, Representation::Position, rng);
  CHECK(std::abs(inner_product(f, h) - std::conj(inner_product(h, f))) < 1e-13);

  // projective_distance ignores a global complex factor; relative_distance does not.
  WaveField scaled = f;
  for (auto& z : scaled.amplitudes) z *= Complex(-0.3, 2.0);
  CHECK(projective_distance(scaled, f, Window::tukey()) < 1e-14);
  CHECK(relative_distance(scaled, f, Window::tukey()) > 1.0);
  CHECK(projective_distance(h, f, Window::rect()) > 0.5);
  CHECK(relative_sup_distance(f, f, Window::rect()) == 0.0);
}

TEST_CASE("window: shapes and guard band") {
  const Window t = Window::tukey(0.5, 0.8);
  CHECK(t.weight(0.5) == 1.0);
  CHECK(t.weight(0.25) == 1.0);
  CHECK(t.weight(0.05) == 0.0);
  CHECK(t.weight(0.1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t.weight(0.175) == doctest::Approx(0.5));
  CHECK(t.weight(0.3) == doctest::Approx(t.weight(0.7)));

  const Window p = Window::planck(0.5, 0.8);
  CHECK(p.weight(0.175) == doctest::Approx(0.5));
  CHECK(p.weight(0.11) < 1e-5);
  CHECK(p.weight(0.11) > 0.0);
  CHECK(p.weight(0.05) == 0.0);

  const Window r = Window::rect(0.5);
  CHECK(r.weight(0.3) == 1.0);
  CHECK(r.weight(0.2) == 0.0);

  CHECK_THROWS_AS(Window::tukey(0.9, 0.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Window::tukey(0.0, 0.5).validate(), std::invalid_argument);
  CHECK(window_kind_from_string("planck") == WindowKind::Planck);
  CHECK_THROWS(window_kind_from_string("hann"));

  const Grid g = make_grid(64, 0, 1);
  ComplexVector a(64, 0.0);
  a[32] = 1.0;
  CHECK(leakage_outside(WaveField(g, Representation::Position, a), Window::tukey(0.5, 0.8)) == 0.0);
  a[2] = 1.0;
  CHECK(leakage_outside(WaveField(g, Representation::Position, a), Window::tukey(0.5, 0.8)) ==
        doctest::Approx(0.5));
}
