#pragma once

#include "airylab/grid.hpp"
#include "airylab/window.hpp"

namespace airylab {

/// Unitary transform between representations with the convention
///
///   psi~(p) = (2 pi hbar)^(-1/2) \int dx exp(-i p x / hbar) psi(x),
///
/// discretized on the grid's x and p lattices. Round trips are exact up to rounding.
/// Requesting the representation the field is already in throws std::invalid_argument.
WaveField fourier(const WaveField& field, Representation target);

/// Returns the field in `target`, transforming only if needed.
WaveField to_representation(const WaveField& field, Representation target);

/// sum_k conj(a_k) b_k w_k * step, where step is dx or dp for the shared representation.
Complex inner_product(const WaveField& a, const WaveField& b, const Window& w = Window::rect());

/// sqrt(<f|f>_w).
double norm(const WaveField& f, const Window& w = Window::rect());

/// ||a - b||_w / ||b||_w.
double relative_distance(const WaveField& a, const WaveField& b, const Window& w);

/// max_k w_k |a_k - b_k| / max_k w_k |b_k|: a scale-relative pointwise error.
double relative_sup_distance(const WaveField& a, const WaveField& b, const Window& w);

/// Windowed distance of a from the ray spanned by b: min_c ||a - c b||_w / ||a||_w.
/// Equals sqrt(1 - F^2) with F the windowed fidelity; insensitive to a global complex factor.
double projective_distance(const WaveField& a, const WaveField& b, const Window& w);

}  // namespace airylab
