#include "airylab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace airylab {
namespace detail {

namespace {
// FFTW's planner is not reentrant; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : ptr(fftw_alloc_complex(n)) {
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};
}  // namespace

void dft_in_place(ComplexVector& data, int sign) {
  const int n = static_cast<int>(data.size());
  FftwBuffer buf(data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf.ptr, buf.ptr, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(buf.ptr));
  fftw_execute(plan);
  std::copy_n(reinterpret_cast<const Complex*>(buf.ptr), data.size(), data.begin());
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace detail

namespace {

// exp(-i p_j x_min / hbar) for every momentum index.
ComplexVector origin_phase(const Grid& g) {
  const std::size_t n = g.size();
  ComplexVector ph(n);
  for (std::size_t j = 0; j < n; ++j) ph[j] = std::polar(1.0, -g.p(j) * g.x_min() / g.hbar());
  return ph;
}

}  // namespace

WaveField fourier(const WaveField& field, Representation target) {
  if (field.rep == target) {
    throw std::invalid_argument("fourier: field is already in the " +
                                std::string(to_string(target)) + " representation");
  }
  const Grid& g = field.grid;
  const std::size_t n = g.size();
  const double root = std::sqrt(2.0 * std::numbers::pi * g.hbar());
  const ComplexVector ph = origin_phase(g);

  ComplexVector work = field.amplitudes;
  if (target == Representation::Momentum) {
    // Centering the p lattice at index n/2 is a (-1)^k modulation in x.
    for (std::size_t k = 1; k < n; k += 2) work[k] = -work[k];
    detail::dft_in_place(work, -1);
    const double scale = g.dx() / root;
    for (std::size_t j = 0; j < n; ++j) work[j] *= ph[j] * scale;
  } else {
    for (std::size_t j = 0; j < n; ++j) work[j] *= std::conj(ph[j]);
    detail::dft_in_place(work, +1);
    const double scale = g.dp() / root;
    for (std::size_t k = 0; k < n; ++k) work[k] *= (k % 2 == 0 ? scale : -scale);
  }
  return WaveField(g, target, std::move(work), field.time);
}

WaveField to_representation(const WaveField& field, Representation target) {
  return field.rep == target ? field : fourier(field, target);
}

Complex inner_product(const WaveField& a, const WaveField& b, const Window& w) {
  require_compatible(a, b);
  const auto weights = w.weights(a.size());
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (weights[k] != 0.0) acc += std::conj(a.amplitudes[k]) * b.amplitudes[k] * weights[k];
  }
  return acc * a.grid.step(a.rep);
}

double norm(const WaveField& f, const Window& w) {
  return std::sqrt(std::max(0.0, inner_product(f, f, w).real()));
}

double relative_distance(const WaveField& a, const WaveField& b, const Window& w) {
  require_compatible(a, b);
  WaveField diff = a;
  for (std::size_t k = 0; k < diff.size(); ++k) diff.amplitudes[k] -= b.amplitudes[k];
  const double nb = norm(b, w);
  if (nb == 0.0) throw std::invalid_argument("relative_distance: reference has zero norm");
  return norm(diff, w) / nb;
}

double relative_sup_distance(const WaveField& a, const WaveField& b, const Window& w) {
  require_compatible(a, b);
  const auto weights = w.weights(a.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num = std::max(num, weights[k] * std::abs(a.amplitudes[k] - b.amplitudes[k]));
    den = std::max(den, weights[k] * std::abs(b.amplitudes[k]));
  }
  if (den == 0.0) throw std::invalid_argument("relative_sup_distance: reference vanishes");
  return num / den;
}

double projective_distance(const WaveField& a, const WaveField& b, const Window& w) {
  // ||a - c b||_w / ||a||_w with the least-squares c; avoids the cancellation in 1 - F^2.
  const Complex c = inner_product(b, a, w) / inner_product(b, b, w);
  WaveField resid = a;
  for (std::size_t k = 0; k < resid.size(); ++k) resid.amplitudes[k] -= c * b.amplitudes[k];
  return norm(resid, w) / norm(a, w);
}

}  // namespace airylab
