#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace airylab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// ħ and m. Natural units by default.
struct PhysParams {
  double hbar = 1.0;
  double m = 1.0;

  /// Throws std::invalid_argument unless both are finite and strictly positive.
  void validate() const;
};

enum class Representation { Position, Momentum };

std::string_view to_string(Representation rep);
Representation representation_from_string(std::string_view name);

/// Uniform position lattice x_k = x_min + k*dx, k = 0..n-1, with dx = (x_max - x_min)/n,
/// and its conjugate momentum lattice p_j = (j - n/2)*dp, dp = 2*pi*hbar/(n*dx).
///
/// The momentum lattice is stored in ascending order, so index n/2 is p = 0 and
/// max |p| = pi*hbar/dx is reached at j = 0. The grid is periodic with period
/// x_max - x_min.
class Grid {
 public:
  Grid() = default;

  std::size_t size() const noexcept { return n_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double length() const noexcept { return x_max_ - x_min_; }
  double hbar() const noexcept { return hbar_; }
  double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double dp() const noexcept;
  double p_max() const noexcept;

  double x(std::size_t k) const noexcept { return x_min_ + static_cast<double>(k) * dx(); }
  double p(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * dp();
  }
  /// Lattice step in the given representation (dx or dp).
  double step(Representation rep) const noexcept {
    return rep == Representation::Position ? dx() : dp();
  }

  std::vector<double> x_values() const;
  std::vector<double> p_values() const;
  /// x_values() or p_values() depending on rep.
  std::vector<double> coordinates(Representation rep) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  friend Grid make_grid(std::size_t, double, double, double);
  Grid(std::size_t n, double x_min, double x_max, double hbar)
      : n_(n), x_min_(x_min), x_max_(x_max), hbar_(hbar) {}

  std::size_t n_ = 0;
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  double hbar_ = 1.0;
};

/// Requires n >= 8 and a power of two, x_max > x_min, hbar > 0.
Grid make_grid(std::size_t n_points, double x_min, double x_max, double hbar = 1.0);

bool is_power_of_two(std::size_t n) noexcept;

/// Complex amplitudes on a grid in one representation, stamped with a time.
struct WaveField {
  Grid grid;
  Representation rep = Representation::Position;
  ComplexVector amplitudes;
  double time = 0.0;

  WaveField() = default;
  WaveField(Grid g, Representation r, ComplexVector a, double t = 0.0);

  std::size_t size() const noexcept { return amplitudes.size(); }
  std::vector<double> coordinates() const { return grid.coordinates(rep); }
  std::vector<double> density() const;
};

/// Throws std::invalid_argument if the two fields do not share grid and representation.
void require_compatible(const WaveField& a, const WaveField& b);

/// Throws std::invalid_argument if phys.hbar differs from the hbar the grid was built with.
void require_same_hbar(const Grid& grid, const PhysParams& phys);

}  // namespace airylab
