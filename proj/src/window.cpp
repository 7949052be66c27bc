#include "airylab/window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace airylab {

void Window::validate() const {
  if (!(interior_fraction > 0.0 && interior_fraction <= support_fraction &&
        support_fraction <= 1.0)) {
    throw std::invalid_argument(
        "window requires 0 < interior_fraction <= support_fraction <= 1");
  }
}

double Window::weight(double u) const {
  const double d = std::abs(2.0 * u - 1.0);
  if (d <= interior_fraction) return 1.0;
  if (kind == WindowKind::Rect || d >= support_fraction) return 0.0;
  const double s = (d - interior_fraction) / (support_fraction - interior_fraction);
  if (kind == WindowKind::Tukey) return 0.5 * (1.0 + std::cos(std::numbers::pi * s));
  // Planck taper: exp overflow at the outer end simply yields 0.
  const double z = 1.0 / (1.0 - s) - 1.0 / s;
  if (z > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(z));
}

std::vector<double> Window::weights(std::size_t n) const {
  validate();
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = weight(static_cast<double>(k) / static_cast<double>(n));
  }
  return w;
}

WindowKind window_kind_from_string(std::string_view name) {
  if (name == "rect") return WindowKind::Rect;
  if (name == "tukey") return WindowKind::Tukey;
  if (name == "planck") return WindowKind::Planck;
  throw std::invalid_argument("unknown window kind '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::Rect: return "rect";
    case WindowKind::Tukey: return "tukey";
    case WindowKind::Planck: return "planck";
  }
  return "?";
}

WaveField apply_window(const WaveField& field, const Window& w) {
  const auto weights = w.weights(field.size());
  WaveField out = field;
  for (std::size_t k = 0; k < out.size(); ++k) out.amplitudes[k] *= weights[k];
  return out;
}

double leakage_outside(const WaveField& field, const Window& w) {
  const auto weights = w.weights(field.size());
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double rho = std::norm(field.amplitudes[k]);
    total += rho;
    if (weights[k] < 1.0) outside += rho;
  }
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace airylab
