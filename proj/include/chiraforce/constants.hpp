#pragma once

// Physical constants (CODATA 2018, SI), unit conversions, prefactor
// conventions and default tolerances.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace chiraforce {

namespace constants {

inline constexpr double speed_of_light = 299792458.0;          // m/s, exact
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double hbar = 1.054571817e-34;                 // J s, exact
inline constexpr double elementary_charge = 1.602176634e-19;    // C, exact
inline constexpr double bohr_radius = 5.29177210903e-11;        // m
inline constexpr double bohr_magneton = 9.2740100783e-24;       // J/T

/// Pinned construction parameter for the size-based estimator, not a
/// measured input: alpha_fs = 1/137.035999.
inline constexpr double inverse_fine_structure = 137.035999;
inline constexpr double fine_structure = 1.0 / inverse_fine_structure;

inline constexpr double electron_volt = elementary_charge;  // J
/// 1 D = 1e-21 / c  C m.
inline constexpr double debye = 1e-21 / speed_of_light;
/// Atomic unit of electric quadrupole moment, e a0^2.
inline constexpr double quadrupole_au = elementary_charge * bohr_radius * bohr_radius;

inline constexpr double four_pi_eps0 = 4.0 * std::numbers::pi * vacuum_permittivity;

}  // namespace constants

// Energy-shift prefactors. For a mode with amplitude E0, unit electric
// polarization e, magnetic polarization b (B0 = E0/c) and wave-vector k, the
// orientation-averaged second-order shift is
//
//   dW = -(E0^2/4)      Re< alpha_ij  conj(e_i) e_j >
//        -(E0^2/(2c))   Re< G_ij      conj(e_i) b_j >       G = i G_bar
//        -(E0^2/2)      Re< A_ijk     conj(e_i) (i k_j) e_k >
//
// with the sum-over-states tensors (E = E_n0, D = E^2 - (hbar w)^2)
//
//   alpha_ij  = sum 2E       mu_i mu_j   / D
//   G_bar_ij  = sum 2 hbar w mu_i m_j    / D     (physical moment i m)
//   A_ijk     = sum 2E       mu_i Q_jk   / D
//
// The E1M1 and E1E2 weights are twice the E1E1 one because each carries both
// cross orderings of the two couplings; the magnetic term picks up hbar*w in
// place of E because the M1 matrix element is imaginary, so the two time
// orderings enter with opposite signs.
namespace convention {
inline constexpr double alpha_weight = 0.25;
inline constexpr double g_weight = 0.5;
inline constexpr double a_weight = 0.5;
}  // namespace convention

/// Central tolerance table. Every entry is multiplied by the process-wide
/// scale read from CHIRAFORCE_TOLERANCE_SCALE (default 1).
struct Tolerances {
  double unit_vector = 1e-12;
  double transversality = 1e-12;
  double dispersion_relation = 1e-9;
  double symmetry = 1e-12;
  double rotation_invariance = 1e-12;
  double rank2_average = 1e-14;
  double linear_nullity = 1e-10;       // |part_G| / |part_alpha|
  double circular_nonnull = 1e-6;      // |part_G| / |part_alpha| lower bound
  double antisymmetry = 1e-12;
  double e1e2_nullity = 1e-12;         // |part_A| / |part_alpha|
  double interference_nullity = 1e-12;
  double residual_imag = 1e-10;        // |Im dW| / |dW|
  double gradient_fd = 1e-6;
  double coefficient_match = 1e-12;
  double fine_structure_ratio = 1e-6;  // absolute, on 137.035999
  double cubic_law = 1e-9;
  double finite_field = 1e-6;
  double standard_errors = 3.0;        // Monte Carlo acceptance band, not scaled
  double detuning_floor = 0.01;        // fraction of a transition energy, not scaled

  Tolerances scaled(double s) const {
    Tolerances t = *this;
    for (double* p : {&t.unit_vector, &t.transversality, &t.dispersion_relation, &t.symmetry,
                      &t.rotation_invariance, &t.rank2_average, &t.linear_nullity,
                      &t.antisymmetry, &t.e1e2_nullity, &t.interference_nullity,
                      &t.residual_imag, &t.gradient_fd, &t.coefficient_match,
                      &t.fine_structure_ratio, &t.cubic_law, &t.finite_field}) {
      *p *= s;
    }
    // Lower bound: loosening means shrinking it.
    t.circular_nonnull /= s;
    return t;
  }
};

inline double tolerance_scale_from_env() {
  const char* v = std::getenv("CHIRAFORCE_TOLERANCE_SCALE");
  if (v == nullptr || *v == '\0') return 1.0;
  char* end = nullptr;
  const double s = std::strtod(v, &end);
  if (end == v || !(s > 0.0) || !std::isfinite(s)) return 1.0;
  return s;
}

inline const Tolerances& default_tolerances() {
  static const Tolerances t = Tolerances{}.scaled(tolerance_scale_from_env());
  return t;
}

}  // namespace chiraforce
