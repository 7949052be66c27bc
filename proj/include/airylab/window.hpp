#pragma once

#include <vector>

#include "airylab/grid.hpp"

namespace airylab {

enum class WindowKind {
  Rect,    ///< 1 on the central interior fraction, 0 elsewhere.
  Tukey,   ///< Cosine taper, C^1.
  Planck,  ///< Planck taper, C-infinity; used to apodize states before propagation.
};

/// Weighting over a lattice, parametrized by fractions of the lattice extent.
///
/// The weight is 1 on the central `interior_fraction` and 0 outside the central
/// `support_fraction`; in between it tapers according to `kind`. With the default
/// support_fraction = 1 the taper reaches zero exactly at the lattice edges.
/// A support_fraction below one leaves a guard band of identically-zero weight,
/// which is where periodic images and apodization edges are parked.
struct Window {
  WindowKind kind = WindowKind::Tukey;
  double interior_fraction = 0.6;
  double support_fraction = 1.0;

  static Window rect(double interior = 1.0) { return {WindowKind::Rect, interior, interior}; }
  static Window tukey(double interior = 0.6, double support = 1.0) {
    return {WindowKind::Tukey, interior, support};
  }
  static Window planck(double interior, double support) {
    return {WindowKind::Planck, interior, support};
  }

  /// 0 < interior_fraction <= support_fraction <= 1.
  void validate() const;

  /// Weight at normalized lattice coordinate u in [0, 1) where u = 1/2 is the centre.
  double weight(double u) const;

  /// Weights for every lattice index (u = k/n).
  std::vector<double> weights(std::size_t n) const;
};

WindowKind window_kind_from_string(std::string_view name);
std::string_view to_string(WindowKind kind);

/// Pointwise product of the field with the window weights (in the field's representation).
WaveField apply_window(const WaveField& field, const Window& w);

/// Fraction of the field's squared norm lying where the window weight is below one.
/// Used to flag supports that escape the comparison region.
double leakage_outside(const WaveField& field, const Window& w);

}  // namespace airylab
