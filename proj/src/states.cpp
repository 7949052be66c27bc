#include "airylab/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "airylab/airy.hpp"

namespace airylab {
namespace {

constexpr double kPi = std::numbers::pi;

// Ai(z) is below the smallest subnormal double well before z = 200.
double airy_or_zero(double z) {
  if (z > kAiryDomain) return 0.0;
  if (z < -kAiryDomain) {
    throw std::domain_error("Airy argument " + std::to_string(z) +
                            " beyond the supported oscillatory range; shrink the grid");
  }
  return airy_ai(z).value;
}

void require_finite(const CoherentParams& c) {
  if (!(std::isfinite(c.eps) && std::isfinite(c.xi) && std::isfinite(c.t))) {
    throw std::invalid_argument("coherent-state parameters must be finite");
  }
}

}  // namespace

WaveField gaussian_packet(const GaussianParams& g, const Grid& grid, const PhysParams& phys) {
  require_same_hbar(grid, phys);
  if (!(g.sigma >= 4.0 * grid.dx())) {
    throw std::invalid_argument("gaussian_packet: sigma = " + std::to_string(g.sigma) +
                                " is under-resolved (needs sigma >= 4 dx = " +
                                std::to_string(4.0 * grid.dx()) + ")");
  }
  if (g.x0 - 8.0 * g.sigma < grid.x_min() || g.x0 + 8.0 * g.sigma > grid.x_max()) {
    throw std::invalid_argument("gaussian_packet: support x0 +- 8 sigma leaves the grid");
  }
  const double amp = std::pow(2.0 * kPi * g.sigma * g.sigma, -0.25);
  ComplexVector a(grid.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = grid.x(k);
    const double u = (x - g.x0) / g.sigma;
    a[k] = std::polar(amp * std::exp(-0.25 * u * u), g.p0 * x / phys.hbar);
  }
  return WaveField(grid, Representation::Position, std::move(a), 0.0);
}

WaveField xi_eigenstate_x(double xi, double t, const Grid& grid, const PhysParams& phys) {
  require_same_hbar(grid, phys);
  if (t == 0.0) {
    throw std::invalid_argument(
        "xi_eigenstate_x: t = 0 is a position eigenstate; use perelomov_state with eps = 0 "
        "in the momentum representation");
  }
  const double amp = 1.0 / std::sqrt(2.0 * kPi * phys.hbar * std::abs(t));
  ComplexVector a(grid.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = grid.x(k);
    a[k] = std::polar(amp, (phys.m * x * x / (2.0 * t) + xi * x / t) / phys.hbar);
  }
  return WaveField(grid, Representation::Position, std::move(a), t);
}

double perelomov_momentum_phase(const CoherentParams& c, double p, const PhysParams& phys) {
  const double m = phys.m;
  return (p * c.xi / m - c.t * p * p / (2.0 * m) - c.eps * p * p * p / (6.0 * m * m)) /
         phys.hbar;
}

double perelomov_momentum_prefactor(const PhysParams& phys) {
  return 1.0 / (2.0 * kPi * phys.hbar * std::sqrt(phys.m));
}

double perelomov_ray_position(const CoherentParams& c, double p, const PhysParams& phys) {
  const double m = phys.m;
  return c.t * p / m + c.eps * p * p / (2.0 * m * m) - c.xi / m;
}

WaveField perelomov_state(const CoherentParams& c, Representation rep, const Grid& grid,
                          const PhysParams& phys) {
  require_same_hbar(grid, phys);
  require_finite(c);
  const double hbar = phys.hbar;
  const double m = phys.m;
  ComplexVector a(grid.size());

  if (rep == Representation::Momentum) {
    const double amp = perelomov_momentum_prefactor(phys);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = std::polar(amp, perelomov_momentum_phase(c, grid.p(j), phys));
    }
    return WaveField(grid, rep, std::move(a), c.t);
  }

  if (c.eps == 0.0) {
    if (c.t == 0.0) {
      throw std::invalid_argument(
          "perelomov_state: eps = 0, t = 0 is a position eigenstate (distributional); "
          "build it in the momentum representation");
    }
    // Gaussian integral of the momentum amplitudes; same normalization as eps != 0.
    const double amp = 1.0 / (2.0 * kPi * hbar * std::sqrt(std::abs(c.t)));
    const double fresnel = -(c.t > 0.0 ? 1.0 : -1.0) * kPi / 4.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double shifted = grid.x(k) + c.xi / m;
      a[k] = std::polar(amp, fresnel + m * shifted * shifted / (2.0 * hbar * c.t));
    }
    return WaveField(grid, rep, std::move(a), c.t);
  }

  const double scale = std::cbrt(2.0 * hbar * m * m / c.eps);  // signed
  const double amp =
      std::abs(scale) / (std::sqrt(2.0 * kPi * hbar) * hbar * std::sqrt(m));
  const double drift = c.t * c.t / (2.0 * c.eps);
  const double phase0 = -m * c.t * c.t * c.t / (3.0 * c.eps * c.eps * hbar);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = grid.x(k);
    const double z = -scale / hbar * (x + c.xi / m + drift);
    const double phase = phase0 - (c.xi + m * x) * c.t / (c.eps * hbar);
    a[k] = std::polar(1.0, phase) * (amp * airy_or_zero(z));
  }
  return WaveField(grid, rep, std::move(a), c.t);
}

double berry_balazs_eps(double B, const PhysParams& phys) {
  if (B == 0.0) throw std::invalid_argument("berry_balazs_eps: B must be nonzero");
  return -2.0 * phys.m * phys.m / (B * B * B);
}

WaveField berry_balazs_initial(double B, const Grid& grid, const PhysParams& phys) {
  require_same_hbar(grid, phys);
  if (B == 0.0 || !std::isfinite(B)) {
    throw std::invalid_argument("berry_balazs_initial: B must be finite and nonzero");
  }
  const double k_scale = B / std::cbrt(phys.hbar * phys.hbar);
  // Most negative argument on the grid sets the fastest oscillation.
  const double z_edge = std::min(k_scale * grid.x_min(), k_scale * grid.x_max());
  if (z_edge < 0.0) {
    const double wavenumber = std::abs(k_scale) * std::sqrt(-z_edge);
    const double wavelength = 2.0 * kPi / wavenumber;
    if (grid.dx() > 0.25 * wavelength) {
      throw std::invalid_argument(
          "berry_balazs_initial: dx = " + std::to_string(grid.dx()) +
          " does not resolve the Airy oscillation at the grid edge (local wavelength " +
          std::to_string(wavelength) + ")");
    }
  }
  ComplexVector a(grid.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = airy_or_zero(k_scale * grid.x(k));
  return WaveField(grid, Representation::Position, std::move(a), 0.0);
}

}  // namespace airylab
