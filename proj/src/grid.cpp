#include "airylab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace airylab {

void PhysParams::validate() const {
  if (!(std::isfinite(hbar) && hbar > 0.0)) {
    throw std::invalid_argument("hbar must be finite and > 0, got " + std::to_string(hbar));
  }
  if (!(std::isfinite(m) && m > 0.0)) {
    throw std::invalid_argument("m must be finite and > 0, got " + std::to_string(m));
  }
}

std::string_view to_string(Representation rep) {
  return rep == Representation::Position ? "position" : "momentum";
}

Representation representation_from_string(std::string_view name) {
  if (name == "position") return Representation::Position;
  if (name == "momentum") return Representation::Momentum;
  throw std::invalid_argument("unknown representation '" + std::string(name) +
                              "' (expected position or momentum)");
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

double Grid::dp() const noexcept {
  return 2.0 * std::numbers::pi * hbar_ / (static_cast<double>(n_) * dx());
}

double Grid::p_max() const noexcept { return std::numbers::pi * hbar_ / dx(); }

std::vector<double> Grid::x_values() const {
  std::vector<double> xs(n_);
  for (std::size_t k = 0; k < n_; ++k) xs[k] = x(k);
  return xs;
}

std::vector<double> Grid::p_values() const {
  std::vector<double> ps(n_);
  for (std::size_t j = 0; j < n_; ++j) ps[j] = p(j);
  return ps;
}

std::vector<double> Grid::coordinates(Representation rep) const {
  return rep == Representation::Position ? x_values() : p_values();
}

Grid make_grid(std::size_t n_points, double x_min, double x_max, double hbar) {
  if (n_points < 8 || !is_power_of_two(n_points)) {
    throw std::invalid_argument("n_points must be a power of two and at least 8, got " +
                                std::to_string(n_points));
  }
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_max > x_min)) {
    throw std::invalid_argument("grid requires finite x_max > x_min");
  }
  if (!(std::isfinite(hbar) && hbar > 0.0)) {
    throw std::invalid_argument("grid requires hbar > 0");
  }
  return Grid(n_points, x_min, x_max, hbar);
}

WaveField::WaveField(Grid g, Representation r, ComplexVector a, double t)
    : grid(std::move(g)), rep(r), amplitudes(std::move(a)), time(t) {
  if (amplitudes.size() != grid.size()) {
    throw std::invalid_argument("amplitude count " + std::to_string(amplitudes.size()) +
                                " does not match grid size " + std::to_string(grid.size()));
  }
}

std::vector<double> WaveField::density() const {
  std::vector<double> rho(amplitudes.size());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) rho[k] = std::norm(amplitudes[k]);
  return rho;
}

void require_compatible(const WaveField& a, const WaveField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
  if (a.rep != b.rep) throw std::invalid_argument("fields are in different representations");
}

void require_same_hbar(const Grid& grid, const PhysParams& phys) {
  phys.validate();
  if (grid.hbar() != phys.hbar) {
    throw std::invalid_argument("grid was built with hbar = " + std::to_string(grid.hbar()) +
                                " but phys.hbar = " + std::to_string(phys.hbar));
  }
}

}  // namespace airylab
