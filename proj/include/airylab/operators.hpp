#pragma once

#include <functional>

#include "airylab/grid.hpp"
#include "airylab/states.hpp"
#include "airylab/window.hpp"

namespace airylab {

/// Generators of the free-particle algebras: x, p, p^2/2, p^3/6, H = p^2/2m and the
/// Galilean boost K(t) = t p - m x, which carries its own time parameter.
struct Generator {
  enum class Tag { X, P, P2Half, P3Sixth, H, K };
  Tag tag = Tag::X;
  double t = 0.0;  ///< only meaningful for K

  static Generator x() { return {Tag::X, 0.0}; }
  static Generator p() { return {Tag::P, 0.0}; }
  static Generator p2_half() { return {Tag::P2Half, 0.0}; }
  static Generator p3_sixth() { return {Tag::P3Sixth, 0.0}; }
  static Generator hamiltonian() { return {Tag::H, 0.0}; }
  static Generator boost(double t) { return {Tag::K, t}; }
};

/// Velocity and frame time of a Galilean boost exp(i v K(t) / hbar).
struct BoostParams {
  double v = 0.0;
  double t = 0.0;
};

/// Applies the generator. x acts in position, every function of p acts in momentum;
/// K(t) combines both with one transform pair. The result is returned in the input's
/// representation.
WaveField apply_generator(const Generator& g, const WaveField& field, const PhysParams& phys);

/// Multiplies the momentum amplitudes by f(p); result in the input's representation.
WaveField apply_momentum_multiplier(const WaveField& field,
                                    const std::function<Complex(double)>& f);

/// Multiplies the position amplitudes by f(x); result in the input's representation.
WaveField apply_position_multiplier(const WaveField& field,
                                    const std::function<Complex(double)>& f);

/// psi(x) -> psi(x - a) through the momentum phase exp(-i p a / hbar); any real a.
WaveField translate(const WaveField& field, double a);

/// exp(i v K(t) / hbar) = exp(-i m v^2 t / 2 hbar) exp(-i v m x / hbar) exp(i v t p / hbar).
WaveField boost(const WaveField& field, const BoostParams& b, const PhysParams& phys);

/// Exact free propagator exp(-i H tau / hbar), diagonal in momentum. Advances field.time.
WaveField free_evolve(const WaveField& field, double tau, const PhysParams& phys);

/// exp(-i eps p^3 / 6 hbar m^2 - i t p^2 / 2 hbar m + i xi p / hbar m), diagonal in momentum.
WaveField apply_displacement_U(const WaveField& field, const CoherentParams& c,
                               const PhysParams& phys);

/// Right-hand side of the disentangled boost-plus-evolution exponential,
///   exp(-i m eps v^3 / 3 hbar) exp(i v eps H / hbar) exp(i v K(t) / hbar) exp(i v^2 eps p / 2 hbar),
/// applied right to left. It equals exp(i v (K(t) + eps H) / hbar).
WaveField zassenhaus_rhs(const WaveField& field, double v, double eps, double t,
                         const PhysParams& phys);

/// <psi| G |psi>_w / <psi|psi>_w (real part), evaluated in position.
double expectation(const Generator& g, const WaveField& field, const PhysParams& phys,
                   const Window& w = Window::rect());

}  // namespace airylab
