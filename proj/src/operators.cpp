#include "airylab/operators.hpp"

#include "airylab/fourier.hpp"

namespace airylab {

WaveField apply_momentum_multiplier(const WaveField& field,
                                    const std::function<Complex(double)>& f) {
  WaveField mom = to_representation(field, Representation::Momentum);
  for (std::size_t j = 0; j < mom.size(); ++j) mom.amplitudes[j] *= f(mom.grid.p(j));
  return to_representation(mom, field.rep);
}

WaveField apply_position_multiplier(const WaveField& field,
                                    const std::function<Complex(double)>& f) {
  WaveField pos = to_representation(field, Representation::Position);
  for (std::size_t k = 0; k < pos.size(); ++k) pos.amplitudes[k] *= f(pos.grid.x(k));
  return to_representation(pos, field.rep);
}

WaveField apply_generator(const Generator& g, const WaveField& field, const PhysParams& phys) {
  require_same_hbar(field.grid, phys);
  const double m = phys.m;
  switch (g.tag) {
    case Generator::Tag::X:
      return apply_position_multiplier(field, [](double x) { return Complex(x); });
    case Generator::Tag::P:
      return apply_momentum_multiplier(field, [](double p) { return Complex(p); });
    case Generator::Tag::P2Half:
      return apply_momentum_multiplier(field, [](double p) { return Complex(0.5 * p * p); });
    case Generator::Tag::P3Sixth:
      return apply_momentum_multiplier(field,
                                       [](double p) { return Complex(p * p * p / 6.0); });
    case Generator::Tag::H:
      return apply_momentum_multiplier(field,
                                       [m](double p) { return Complex(0.5 * p * p / m); });
    case Generator::Tag::K: {
      const WaveField pos = to_representation(field, Representation::Position);
      WaveField tp = apply_momentum_multiplier(pos, [&](double p) { return Complex(g.t * p); });
      for (std::size_t k = 0; k < tp.size(); ++k) {
        tp.amplitudes[k] -= m * pos.grid.x(k) * pos.amplitudes[k];
      }
      return to_representation(tp, field.rep);
    }
  }
  return field;
}

WaveField translate(const WaveField& field, double a) {
  const double hbar = field.grid.hbar();
  return apply_momentum_multiplier(field,
                                   [=](double p) { return std::polar(1.0, -p * a / hbar); });
}

WaveField boost(const WaveField& field, const BoostParams& b, const PhysParams& phys) {
  require_same_hbar(field.grid, phys);
  const double hbar = phys.hbar;
  const double m = phys.m;
  // exp(i v t p / hbar) shifts psi(x) -> psi(x + v t).
  WaveField out = translate(field, -b.v * b.t);
  out = apply_position_multiplier(out,
                                  [=](double x) { return std::polar(1.0, -b.v * m * x / hbar); });
  const Complex global = std::polar(1.0, -m * b.v * b.v * b.t / (2.0 * hbar));
  for (auto& z : out.amplitudes) z *= global;
  return out;
}

WaveField free_evolve(const WaveField& field, double tau, const PhysParams& phys) {
  require_same_hbar(field.grid, phys);
  const double hbar = phys.hbar;
  const double m = phys.m;
  WaveField out = apply_momentum_multiplier(
      field, [=](double p) { return std::polar(1.0, -p * p * tau / (2.0 * m * hbar)); });
  out.time = field.time + tau;
  return out;
}

WaveField apply_displacement_U(const WaveField& field, const CoherentParams& c,
                               const PhysParams& phys) {
  require_same_hbar(field.grid, phys);
  WaveField out = apply_momentum_multiplier(field, [&](double p) {
    return std::polar(1.0, perelomov_momentum_phase(c, p, phys));
  });
  out.time = field.time + c.t;
  return out;
}

WaveField zassenhaus_rhs(const WaveField& field, double v, double eps, double t,
                         const PhysParams& phys) {
  require_same_hbar(field.grid, phys);
  const double hbar = phys.hbar;
  // exp(i v^2 eps p / 2 hbar): psi(x) -> psi(x + v^2 eps / 2).
  WaveField out = translate(field, -0.5 * v * v * eps);
  out = boost(out, {v, t}, phys);
  // exp(i v eps H / hbar) is free evolution by -v eps.
  out = free_evolve(out, -v * eps, phys);
  out.time = field.time;
  const Complex scalar = std::polar(1.0, -phys.m * eps * v * v * v / (3.0 * hbar));
  for (auto& z : out.amplitudes) z *= scalar;
  return out;
}

double expectation(const Generator& g, const WaveField& field, const PhysParams& phys,
                   const Window& w) {
  const WaveField pos = to_representation(field, Representation::Position);
  const WaveField applied = apply_generator(g, pos, phys);
  return (inner_product(pos, applied, w) / inner_product(pos, pos, w)).real();
}

}  // namespace airylab
