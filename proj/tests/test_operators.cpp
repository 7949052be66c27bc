#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "airylab/fourier.hpp"
#include "airylab/operators.hpp"
#include "airylab/states.hpp"

using namespace airylab;

namespace {

constexpr double kPi = std::numbers::pi;

const PhysParams kPhys{0.8, 1.4};

Grid test_grid() { return make_grid(2048, -40.0, 40.0, kPhys.hbar); }

// Freely evolved Gaussian, closed form.
Complex gauss_evolved(double x, const GaussianParams& g, double tau, const PhysParams& ph) {
  const double h = ph.hbar, m = ph.m;
  const Complex a = 1.0 + Complex(0.0, h * tau / (2 * m * g.sigma * g.sigma));
  const double xc = g.x0 + g.p0 * tau / m;
  const Complex gauss = std::exp(-(x - xc) * (x - xc) / (4 * g.sigma * g.sigma * a));
  const double ph_ = (g.p0 * (x - g.x0) - g.p0 * g.p0 * tau / (2 * m)) / h;
  return std::pow(2 * kPi * g.sigma * g.sigma, -0.25) / std::sqrt(a) * gauss * std::polar(1.0, ph_);
}

}  // namespace

TEST_CASE("operators: free evolution of a Gaussian matches the closed form") {
  const Grid g = test_grid();
  const GaussianParams gp{-3.0, 1.1, 1.5};
  const WaveField f0 = gaussian_packet(gp, g, kPhys);
  for (double tau : {0.5, 3.0, -2.0}) {
    const WaveField f = free_evolve(f0, tau, kPhys);
    CHECK(f.time == tau);
    // The packet is centred on x0, so compare up to the global phase exp(i p0 x0 / hbar).
    const Complex global = std::polar(1.0, gp.p0 * gp.x0 / kPhys.hbar);
    double err = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      err = std::max(err, std::abs(f.amplitudes[k] - global * gauss_evolved(g.x(k), gp, tau, kPhys)));
    }
    CAPTURE(tau);
    CHECK(err < 1e-12);
  }
}

TEST_CASE("operators: free evolution is a unitary group") {
  const Grid g = test_grid();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const WaveField f = gaussian_packet({u(rng), u(rng), 1.0 + 0.5 * u(rng)}, g, kPhys);
  const WaveField a = free_evolve(free_evolve(f, 0.7, kPhys), 1.1, kPhys);
  const WaveField b = free_evolve(f, 1.8, kPhys);
  CHECK(relative_distance(a, b, Window::rect()) < 1e-13);
  CHECK(norm(a) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(relative_distance(free_evolve(b, -1.8, kPhys), f, Window::rect()) < 1e-13);
}

TEST_CASE("operators: translation and boost act on Gaussian labels") {
  const Grid g = test_grid();
  const GaussianParams gp{0.5, -0.4, 1.2};
  const WaveField f = gaussian_packet(gp, g, kPhys);

  const double a = 2.37;  // not a lattice multiple
  const WaveField moved = translate(f, a);
  const WaveField expect = gaussian_packet({gp.x0 + a, gp.p0, gp.sigma}, g, kPhys);
  CHECK(projective_distance(moved, expect, Window::rect()) < 1e-12);

  // exp(i v K(t) / hbar): x0 -> x0 - v t, p0 -> p0 - m v.
  const BoostParams b{0.6, 1.5};
  const WaveField boosted = boost(f, b, kPhys);
  const WaveField expect_b =
      gaussian_packet({gp.x0 - b.v * b.t, gp.p0 - kPhys.m * b.v, gp.sigma}, g, kPhys);
  CHECK(projective_distance(boosted, expect_b, Window::rect()) < 1e-12);
  CHECK(norm(boosted) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("operators: generators and expectation values") {
  const Grid g = test_grid();
  const GaussianParams gp{1.3, 0.9, 1.1};
  const WaveField f = gaussian_packet(gp, g, kPhys);
  const double h = kPhys.hbar, m = kPhys.m;
  CHECK(expectation(Generator::x(), f, kPhys) == doctest::Approx(gp.x0).epsilon(1e-12));
  CHECK(expectation(Generator::p(), f, kPhys) == doctest::Approx(gp.p0).epsilon(1e-12));
  const double p2 = gp.p0 * gp.p0 + h * h / (4 * gp.sigma * gp.sigma);
  CHECK(expectation(Generator::hamiltonian(), f, kPhys) == doctest::Approx(p2 / (2 * m)).epsilon(1e-12));
  CHECK(expectation(Generator::p2_half(), f, kPhys) == doctest::Approx(p2 / 2).epsilon(1e-12));
  const double p3 = gp.p0 * gp.p0 * gp.p0 + 3 * gp.p0 * h * h / (4 * gp.sigma * gp.sigma);
  CHECK(expectation(Generator::p3_sixth(), f, kPhys) == doctest::Approx(p3 / 6).epsilon(1e-12));
  CHECK(expectation(Generator::boost(0.4), f, kPhys) == doctest::Approx(0.4 * gp.p0 - m * gp.x0).epsilon(1e-12));

  // Output keeps the input representation.
  const WaveField fm = to_representation(f, Representation::Momentum);
  CHECK(apply_generator(Generator::x(), fm, kPhys).rep == Representation::Momentum);
  CHECK(apply_generator(Generator::p(), f, kPhys).rep == Representation::Position);
}

TEST_CASE("operators: canonical commutator on a probe") {
  const Grid g = test_grid();
  const WaveField f = gaussian_packet({0.2, 0.3, 1.0}, g, kPhys);
  const WaveField xp = apply_generator(Generator::x(), apply_generator(Generator::p(), f, kPhys), kPhys);
  const WaveField px = apply_generator(Generator::p(), apply_generator(Generator::x(), f, kPhys), kPhys);
  double err = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    err = std::max(err, std::abs(xp.amplitudes[k] - px.amplitudes[k] - Complex(0, kPhys.hbar) * f.amplitudes[k]));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("operators: disentangled exponential is a one-parameter unitary group") {
  const Grid g = test_grid();
  const WaveField f = gaussian_packet({-1.0, 0.5, 1.3}, g, kPhys);
  const double eps = 0.9, t = 0.3;
  const WaveField a = zassenhaus_rhs(zassenhaus_rhs(f, 0.4, eps, t, kPhys), 0.25, eps, t, kPhys);
  const WaveField b = zassenhaus_rhs(f, 0.65, eps, t, kPhys);
  CHECK(relative_distance(a, b, Window::rect()) < 1e-12);
  CHECK(norm(b) == doctest::Approx(1.0).epsilon(1e-13));
  // Generator check: (U(v) - U(-v)) / 2iv -> (K + eps H) / hbar.
  const double v = 1e-4;
  const WaveField up = zassenhaus_rhs(f, v, eps, t, kPhys);
  const WaveField dn = zassenhaus_rhs(f, -v, eps, t, kPhys);
  const WaveField k = apply_generator(Generator::boost(t), f, kPhys);
  const WaveField h = apply_generator(Generator::hamiltonian(), f, kPhys);
  double err = 0, scale = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Complex d = (up.amplitudes[i] - dn.amplitudes[i]) / Complex(0, 2 * v);
    const Complex gen = (k.amplitudes[i] + eps * h.amplitudes[i]) / kPhys.hbar;
    err = std::max(err, std::abs(d - gen));
    scale = std::max(scale, std::abs(gen));
  }
  CHECK(err < 1e-6 * scale);
}

TEST_CASE("operators: multipliers") {
  const Grid g = make_grid(64, -1.0, 1.0);
  const WaveField f(g, Representation::Position, ComplexVector(64, 1.0));
  const WaveField m = apply_position_multiplier(f, [](double x) { return Complex(x, 0.0); });
  CHECK(m.amplitudes[5] == Complex(g.x(5), 0.0));
  const WaveField fm = to_representation(f, Representation::Momentum);
  const WaveField pm = apply_momentum_multiplier(fm, [](double) { return Complex(0.0, 1.0); });
  CHECK(std::abs(pm.amplitudes[32] - Complex(0.0, 1.0) * fm.amplitudes[32]) < 1e-15);
  CHECK(pm.rep == Representation::Momentum);
}
