#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace resim {

/// Absolute tolerance for comparing real-valued weights. Keeps relation
/// verdicts stable under float noise; inputs on a dyadic grid compare
/// exactly anyway.
inline constexpr double kWeightTol = 1e-9;

inline bool approx_leq(double a, double b) { return a <= b + kWeightTol; }
inline bool approx_eq(double a, double b) { return std::fabs(a - b) <= kWeightTol; }
inline bool approx_lt(double a, double b) { return a < b - kWeightTol; }

/// Scalar additive weight over [0, omega]. The combine operation is
/// addition, the (semiring) times operation is multiplication, and the
/// order is numeric. omega is absorbing for combine and maximal.
struct TimeWeight {
  double value = 0.0;

  static constexpr TimeWeight zero() { return {0.0}; }
  static constexpr TimeWeight one() { return {1.0}; }
  static TimeWeight omega() { return {std::numeric_limits<double>::infinity()}; }
  bool is_omega() const { return std::isinf(value); }
};

inline TimeWeight combine(TimeWeight a, TimeWeight b) { return {a.value + b.value}; }
inline TimeWeight times(TimeWeight a, TimeWeight b) { return {a.value * b.value}; }
inline bool leq(TimeWeight a, TimeWeight b) {
  if (b.is_omega()) return true;
  if (a.is_omega()) return false;
  return approx_leq(a.value, b.value);
}
inline bool eq(TimeWeight a, TimeWeight b) {
  if (a.is_omega() || b.is_omega()) return a.is_omega() == b.is_omega();
  return approx_eq(a.value, b.value);
}

/// Composite (time, energy) weight. combine and order are componentwise;
/// there is no times/one (the pair monoid is not a semiring here).
struct TimeEnergyWeight {
  double time = 0.0;
  double energy = 0.0;

  static constexpr TimeEnergyWeight zero() { return {0.0, 0.0}; }
};

inline TimeEnergyWeight combine(TimeEnergyWeight a, TimeEnergyWeight b) {
  return {a.time + b.time, a.energy + b.energy};
}
inline bool leq(TimeEnergyWeight a, TimeEnergyWeight b) {
  return approx_leq(a.time, b.time) && approx_leq(a.energy, b.energy);
}
inline bool eq(TimeEnergyWeight a, TimeEnergyWeight b) {
  return approx_eq(a.time, b.time) && approx_eq(a.energy, b.energy);
}

/// Left fold from the identity: ((0 + w1) + ...) + wn. Empty input
/// yields the identity.
template <typename W>
W fold_weights(std::span<const W> ws) {
  W acc = W::zero();
  for (const W& w : ws) acc = combine(acc, w);
  return acc;
}

}  // namespace resim
