#pragma once

#include "airylab/grid.hpp"

namespace airylab {

/// Labels of the accelerating coherent state |eps, xi; t>.
///
/// eps is an inverse acceleration (time^2/length); xi is the eigenvalue of
/// K(t) + eps*H and has units of mass*length; t is the time label.
struct CoherentParams {
  double eps = 1.0;
  double xi = 0.0;
  double t = 0.0;
};

/// Normalizable probe: exp(i p0 x / hbar) exp(-(x - x0)^2 / (4 sigma^2)), unit L2 norm.
struct GaussianParams {
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma = 1.0;
};

/// Unit-normalized Gaussian in the position representation.
/// Throws if sigma < 4 dx or if the packet (x0 +- 8 sigma) does not fit inside the grid.
WaveField gaussian_packet(const GaussianParams& g, const Grid& grid, const PhysParams& phys);

/// K(t) eigenstate (2 pi hbar |t|)^(-1/2) exp((i/hbar)(m x^2 / 2t + xi x / t)) in position.
/// t = 0 is rejected: that state is a position eigenstate; build it with
/// perelomov_state(eps = 0, t = 0) in the momentum representation instead.
WaveField xi_eigenstate_x(double xi, double t, const Grid& grid, const PhysParams& phys);

/// Phase of the momentum amplitude, (1/hbar)(p xi/m - t p^2/2m - eps p^3/6m^2).
double perelomov_momentum_phase(const CoherentParams& c, double p, const PhysParams& phys);

/// Prefactor of the momentum amplitude, 1 / (2 pi hbar sqrt(m)).
double perelomov_momentum_prefactor(const PhysParams& phys);

/// Stationary-phase position reached by momentum p: x = t p/m + eps p^2/(2 m^2) - xi/m.
double perelomov_ray_position(const CoherentParams& c, double p, const PhysParams& phys);

/// |eps, xi; t> on the grid.
///
/// Momentum: the pure-phase amplitudes sampled on the p lattice (any eps).
/// Position: the closed Airy form obtained from the momentum amplitudes through the
/// transform convention of fourier():
///
///   psi(x) = (2 pi hbar)^(-1/2) (hbar sqrt m)^(-1) |2 hbar m^2/eps|^(1/3)
///            exp(-(i/hbar)((xi + m x) t/eps + m t^3/(3 eps^2)))
///            Ai(-(1/hbar) cbrt(2 hbar m^2/eps) (x + xi/m + t^2/(2 eps)))
///
/// with the real (signed) cube root in the argument, so eps < 0 is supported.
/// eps = 0 in position is delegated to xi_eigenstate_x-style closed form scaled to the
/// same normalization; eps = 0 with t = 0 in position is rejected (distributional).
WaveField perelomov_state(const CoherentParams& c, Representation rep, const Grid& grid,
                          const PhysParams& phys);

/// Ai(B x / hbar^(2/3)) sampled in position, time 0.
/// Throws if dx exceeds a quarter of the local Airy wavelength at the oscillating edge.
WaveField berry_balazs_initial(double B, const Grid& grid, const PhysParams& phys);

/// eps of the accelerating family whose Ai argument matches berry_balazs_initial(B):
/// -2 m^2 / B^3.
double berry_balazs_eps(double B, const PhysParams& phys);

}  // namespace airylab
