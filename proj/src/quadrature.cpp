#include "airylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace airylab {
namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex kronrod = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const Complex sum = f(c - dx) + f(c + dx);
    kronrod += kWgk[i] * sum;
    if (i % 2 == 1) gauss += kWg[i / 2] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class F>
QuadratureResult adaptive(const F& f, double a, double b, double abs_tol, double rel_tol) {
  std::priority_queue<Segment> queue;
  // Start from a uniform split so narrow features near the start are not missed.
  constexpr int kInitial = 16;
  Complex total{0.0, 0.0};
  double err = 0.0;
  for (int i = 0; i < kInitial; ++i) {
    Segment s = gauss_kronrod(f, a + (b - a) * i / kInitial, a + (b - a) * (i + 1) / kInitial);
    total += s.value;
    err += s.error;
    queue.push(s);
  }
  constexpr int kMaxSegments = 4000;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         static_cast<int>(queue.size()) < kMaxSegments) {
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Recompute the error sum to shed accumulated rounding in the running total.
  err = 0.0;
  total = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {total, err};
}

}  // namespace

QuadratureResult cubic_phase_integral(double c3, double c2, double c1, double damping) {
  if (!(std::isfinite(c3) && std::isfinite(c2) && std::isfinite(c1) && std::isfinite(damping))) {
    throw std::invalid_argument("cubic_phase_integral: non-finite coefficient");
  }
  if (damping < 0.0) throw std::invalid_argument("cubic_phase_integral: damping must be >= 0");
  if (damping == 0.0 && c3 == 0.0) {
    throw std::invalid_argument(
        "cubic_phase_integral: undamped integral requires a nonzero cubic coefficient");
  }

  constexpr double pi = std::numbers::pi;
  double origin = 0.0;
  double theta_right = 0.0;
  double theta_left = pi;
  if (c3 != 0.0) {
    origin = -c2 / (3.0 * c3);
    theta_right = (c3 > 0.0 ? 1.0 : -1.0) * pi / 6.0;
    theta_left = (c3 > 0.0 ? 1.0 : -1.0) * 5.0 * pi / 6.0;
  } else if (c2 != 0.0) {
    theta_right = (c2 > 0.0 ? 1.0 : -1.0) * pi / 8.0;
    theta_left = theta_right + pi;
  }

  const auto integrand = [=](Complex p) {
    const Complex phase = Complex(0.0, 1.0) * (((c3 * p + c2) * p + c1) * p) - damping * p * p;
    return std::exp(phase);
  };

  QuadratureResult total{{0.0, 0.0}, 0.0};
  for (const auto& [theta, sign] : {std::pair{theta_right, 1.0}, std::pair{theta_left, -1.0}}) {
    const Complex dir = std::polar(1.0, theta);
    const auto along_ray = [&](double r) { return integrand(origin + r * dir) * dir; };

    // Extend the ray until the integrand is negligible and still decaying.
    double peak = std::abs(along_ray(0.0));
    double reach = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double here = std::abs(along_ray(reach));
      peak = std::max(peak, here);
      if (here < 1e-20 * std::max(peak, 1.0) && std::abs(along_ray(0.9 * reach)) >= here) break;
      reach *= 1.25;
    }
    const QuadratureResult ray = adaptive(along_ray, 0.0, reach, 1e-15, 1e-13);
    total.value += sign * ray.value;
    total.error_estimate += ray.error_estimate;
  }
  const double tolerance = std::max(1e-12, 1e-10 * std::abs(total.value));
  if (!(total.error_estimate <= tolerance)) {
    throw QuadratureError("cubic_phase_integral did not converge (estimate " +
                              std::to_string(total.error_estimate) + ")",
                          total.error_estimate);
  }
  return total;
}

QuadratureResult cubic_phase_integral_limit(double c3, double c2, double c1, double tolerance) {
  std::array<Complex, 3> values;
  double quad_error = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto r = cubic_phase_integral(c3, c2, c1, kExtrapolationDampings[i]);
    values[i] = r.value;
    quad_error += r.error_estimate;
  }
  const auto& eta = kExtrapolationDampings;
  // Lagrange interpolation evaluated at eta = 0.
  Complex quadratic{0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    double basis = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) basis *= (0.0 - eta[j]) / (eta[i] - eta[j]);
    }
    quadratic += basis * values[i];
  }
  // The linear extrapolant from the two smallest dampings errs by ~f''/2 eta_1 eta_2; the
  // quadratic one by ~f'''/6 eta_0 eta_1 eta_2, i.e. smaller by a factor of order eta_0.
  const Complex linear = values[2] + (values[2] - values[1]) * (0.0 - eta[2]) / (eta[2] - eta[1]);
  const double estimate = 10.0 * eta[0] * std::abs(quadratic - linear) + quad_error;
  if (!(estimate <= tolerance * std::max(1.0, std::abs(quadratic)))) {
    throw QuadratureError("damping extrapolation did not converge (estimate " +
                              std::to_string(estimate) + ")",
                          estimate);
  }
  return {quadratic, estimate};
}

}  // namespace airylab
