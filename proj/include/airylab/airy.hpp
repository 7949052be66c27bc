#pragma once

namespace airylab {

struct AiryResult {
  double value = 0.0;
  double est_error = 0.0;  ///< Bound on |value - Ai(z)| for the method used.
};

/// Largest |z| accepted by airy_ai.
inline constexpr double kAiryDomain = 200.0;

/// Branch points. On [kAirySeriesLower, kAirySeriesUpper] the two-series Maclaurin form is
/// summed in extended precision. On (kAirySeriesUpper, kAiryAsymptoticUpper] a saddle-point
/// integral is summed by the trapezoid rule. Beyond, the large-argument expansions are
/// truncated at their smallest term.
inline constexpr double kAirySeriesUpper = 1.0;
inline constexpr double kAirySeriesLower = -8.0;
inline constexpr double kAiryAsymptoticUpper = 10.0;

/// Ai(0) = 3^(-2/3) / Gamma(2/3).
inline constexpr double kAiryAiZero = 0.355028053887817239260063186004183;

/// Real-argument Airy function Ai(z) for |z| <= kAiryDomain, absolute accuracy about 1e-13
/// (relative near the origin). Throws std::domain_error outside the domain.
AiryResult airy_ai(double z);

/// Maclaurin two-series form only; valid for moderate |z|. Exposed for the crossover tests.
AiryResult airy_ai_series(double z);
/// Large-|z| expansion only (exponential form for z > 0, oscillatory for z < 0).
AiryResult airy_ai_asymptotic(double z);
/// exp(-zeta)/pi * \int_0^inf exp(-sqrt(z) s^2) cos(s^3/3) ds by the trapezoid rule; z > 0.
AiryResult airy_ai_saddle(double z);

}  // namespace airylab
