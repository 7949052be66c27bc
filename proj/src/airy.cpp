#include "airylab/airy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace airylab {
namespace {

// Extended-precision Ai(0); the double constant's rounding is amplified by the partial sums.
constexpr long double kAiZeroLong = 0.355028053887817239260063186004183L;
// -Ai'(0) = 3^(-1/3) / Gamma(1/3).
constexpr long double kAiryDerivZero = 0.258819403792806798405183560189203L;

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

AiryResult airy_ai_series(double z) {
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  const long double zl = z;
  const long double z3 = zl * zl * zl;
  long double f = 1.0L, g = zl;
  long double tf = 1.0L, tg = zl;
  long double abs_sum = std::fabs(kAiZeroLong * tf) + std::fabs(kAiryDerivZero * tg);
  int k = 0;
  for (; k < 200; ++k) {
    const long double kk = 3.0L * k;
    tf *= z3 / ((kk + 2.0L) * (kk + 3.0L));
    tg *= z3 / ((kk + 3.0L) * (kk + 4.0L));
    f += tf;
    g += tg;
    abs_sum += std::fabs(kAiZeroLong * tf) + std::fabs(kAiryDerivZero * tg);
    if (std::fabs(tf) <= eps * std::fabs(f) && std::fabs(tg) <= eps * std::fabs(g) &&
        kk + 3.0L > std::fabs(zl) * std::sqrt(std::fabs(zl))) {
      break;
    }
  }
  const long double value = kAiZeroLong * f - kAiryDerivZero * g;
  const double out = static_cast<double>(value);
  // Rounding in every accumulated term, the neglected tail (bounded by the last terms),
  // and the final conversion to double.
  const double rounding = static_cast<double>(abs_sum * eps * (k + 4));
  const double tail = static_cast<double>(2.0L * (std::fabs(kAiZeroLong * tf) +
                                                   std::fabs(kAiryDerivZero * tg)));
  return {out, rounding + tail + 0.5 * kEps * std::abs(out)};
}

AiryResult airy_ai_asymptotic(double z) {
  const double x = std::abs(z);
  if (x == 0.0) throw std::domain_error("airy_ai_asymptotic requires z != 0");
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double root_pi = std::sqrt(std::numbers::pi);
  const double quarter = std::pow(x, 0.25);

  // u_k = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k) u_{k-1}; term_k = u_k / zeta^k.
  // Summation stops at the smallest term; the first omitted term bounds the remainder.
  if (z > 0.0) {
    double sum = 1.0;
    double term = 1.0;
    double omitted = 0.0;
    for (int k = 1; k < 200; ++k) {
      const double next = term * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                          ((2.0 * k - 1.0) * 216.0 * k) / zeta;
      if (std::abs(next) >= std::abs(term)) {
        omitted = std::abs(next);
        break;
      }
      sum += (k % 2 == 1 ? -next : next);
      term = next;
      omitted = std::abs(next);
      if (std::abs(next) < 1e-3 * kEps) break;
    }
    const double prefactor = std::exp(-zeta) / (2.0 * root_pi * quarter);
    const double value = prefactor * sum;
    return {value, prefactor * omitted + 4.0 * kEps * std::abs(value)};
  }

  // Ai(-x) = [cos(zeta - pi/4) P - ... ] / (sqrt(pi) x^(1/4)) with
  // P = sum (-1)^k u_{2k} zeta^-2k, Q = sum (-1)^k u_{2k+1} zeta^-(2k+1).
  double p_sum = 1.0;
  double q_sum = 0.0;
  double term = 1.0;
  double omitted = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                        ((2.0 * k - 1.0) * 216.0 * k) / zeta;
    if (std::abs(next) >= std::abs(term)) {
      omitted = std::abs(next);
      break;
    }
    // k odd -> Q with sign (-1)^((k-1)/2); k even -> P with sign (-1)^(k/2).
    if (k % 2 == 1) {
      q_sum += ((k / 2) % 2 == 0 ? next : -next);
    } else {
      p_sum += ((k / 2) % 2 == 0 ? next : -next);
    }
    term = next;
    omitted = std::abs(next);
    if (std::abs(next) < 1e-3 * kEps) break;
  }
  const double phase = zeta - std::numbers::pi / 4.0;
  const double amplitude = 1.0 / (root_pi * quarter);
  const double value = amplitude * (std::cos(phase) * p_sum + std::sin(phase) * q_sum);
  // zeta carries a relative rounding error, so the phase is off by ~eps * zeta.
  const double phase_error = 2.0 * kEps * zeta * amplitude;
  return {value, amplitude * omitted + phase_error + 4.0 * kEps * amplitude};
}

AiryResult airy_ai_saddle(double z) {
  if (!(z > 0.0)) throw std::domain_error("airy_ai_saddle: needs z > 0");
  // Even, entire integrand with Gaussian decay: the trapezoid rule converges geometrically
  // and nothing cancels.
  const double rz = std::sqrt(z);
  const double h = 0.04;
  const double reach = std::sqrt(45.0 / rz);
  const int n = static_cast<int>(reach / h) + 1;
  double sum = 0.5;  // s = 0, half weight of the even extension
  for (int k = 1; k <= n; ++k) {
    const double s = k * h;
    sum += std::exp(-rz * s * s) * std::cos(s * s * s / 3.0);
  }
  const double zeta = 2.0 / 3.0 * z * rz;
  const double value = std::exp(-zeta) / std::numbers::pi * h * sum;
  return {value, 8.0 * kEps * std::abs(value) * (1.0 + zeta)};
}

AiryResult airy_ai(double z) {
  if (!std::isfinite(z) || std::abs(z) > kAiryDomain) {
    throw std::domain_error("airy_ai: argument " + std::to_string(z) +
                            " outside the supported domain |z| <= 200");
  }
  if (z > kAiryAsymptoticUpper || z < kAirySeriesLower) return airy_ai_asymptotic(z);
  if (z > kAirySeriesUpper) return airy_ai_saddle(z);
  return airy_ai_series(z);
}

}  // namespace airylab
