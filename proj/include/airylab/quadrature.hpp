#pragma once

#include <array>
#include <stdexcept>

#include "airylab/grid.hpp"

namespace airylab {

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
};

/// Thrown when an integral does not reach its tolerance; carries the achieved estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// \int_{-inf}^{inf} dp exp(i (c3 p^3 + c2 p^2 + c1 p)) exp(-damping p^2).
///
/// The real line is deformed onto two rays leaving the inflection point
/// -c2/(3 c3) (or the origin) into the sectors where the integrand decays, and
/// each ray is integrated with adaptive Gauss-Kronrod 7-15. The integrand is
/// always evaluated in its full polynomial form.
///
/// Requires damping >= 0, and c3 != 0 when damping == 0.
QuadratureResult cubic_phase_integral(double c3, double c2, double c1, double damping);

/// Dampings used for the eta -> 0 extrapolation.
inline constexpr std::array<double, 3> kExtrapolationDampings{1e-2, 1e-3, 1e-4};

/// eta -> 0 limit of cubic_phase_integral from the three kExtrapolationDampings,
/// by quadratic polynomial extrapolation. Works for c3 == 0 (Fresnel integrals) too.
/// The error estimate scales the gap between the quadratic and linear extrapolants by
/// 10 * eta_max (the expected ratio of their truncation errors, with margin) and adds the
/// quadrature estimates; throws QuadratureError if it exceeds `tolerance`.
QuadratureResult cubic_phase_integral_limit(double c3, double c2, double c1,
                                            double tolerance = 1e-7);

}  // namespace airylab
