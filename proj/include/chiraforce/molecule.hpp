#pragma once

// Model molecules with transition multipole moments from the ground state,
// and the sum-over-states response tensors built from them.
//
// Wavefunctions are taken real, so electric dipole and quadrupole transition
// moments are real. The magnetic dipole transition moment is then purely
// imaginary; it is stored as its real coefficient m_bar (physical moment
// i*m_bar), and likewise G = i*G_bar. See constants.hpp for the tensor
// definitions and prefactors.

#include "chiraforce/constants.hpp"
#include "chiraforce/errors.hpp"
#include "chiraforce/geometry.hpp"
#include "chiraforce/tensor.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace chiraforce {

using RealMatrix3 = Matrix3;

struct ExcitedState {
  double energy = 0.0;       // J, absolute
  RealVector3 mu{};          // C m, <n|mu|0>
  RealVector3 m_bar{};       // J/T, <n|m|0> = i*m_bar
  RealMatrix3 quadrupole{};  // C m^2, symmetric traceless
};

struct MolecularModel {
  std::string label;
  double ground_energy = 0.0;  // J
  std::vector<ExcitedState> states;
};

/// Checks the multipole invariants; throws physical_input_error.
inline void validate_model(const MolecularModel& m, const Tolerances& tol = default_tolerances()) {
  for (std::size_t n = 0; n < m.states.size(); ++n) {
    const auto& s = m.states[n];
    const std::string where = "state " + std::to_string(n);
    if (!(s.energy > m.ground_energy)) {
      throw physical_input_error(where + ": energy must lie strictly above the ground state");
    }
    double scale = 0.0;
    for (const auto& row : s.quadrupole)
      for (double q : row) scale = std::max(scale, std::abs(q));
    const double qtol = tol.symmetry * std::max(scale, 1e-300);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(s.quadrupole[i][j] - s.quadrupole[j][i]) > qtol) {
          throw physical_input_error(where + ": quadrupole moment is not symmetric");
        }
    const double tr = s.quadrupole[0][0] + s.quadrupole[1][1] + s.quadrupole[2][2];
    if (std::abs(tr) > qtol) throw physical_input_error(where + ": quadrupole moment is not traceless");
  }
}

/// Response tensors at angular frequency omega. T selects floating point
/// (cplx) or exact rational (exact_complex) components.
template <class T = cplx>
struct BasicResponseTensors {
  CartesianTensor<T> alpha{2, "C^2 m^2/J"};
  CartesianTensor<T> g_bar{2, "C m/T"};
  CartesianTensor<T> a{3, "C^2 m^3/J"};
  double omega = 0.0;

  /// The physical, purely imaginary E1M1 tensor i*G_bar.
  CartesianTensor<T> g() const { return g_bar * scalar_ops<T>::imag_unit(); }
};

using ResponseTensors = BasicResponseTensors<cplx>;
using ExactResponseTensors = BasicResponseTensors<exact_complex>;

inline ExactResponseTensors to_exact(const ResponseTensors& t) {
  return {to_exact(t.alpha), to_exact(t.g_bar), to_exact(t.a), t.omega};
}

/// Throws when hbar*omega is within `floor` (relative) of a transition energy.
inline void check_detuning(const MolecularModel& model, double omega, double floor) {
  const double photon = std::abs(constants::hbar * omega);
  for (std::size_t n = 0; n < model.states.size(); ++n) {
    const double e = model.states[n].energy - model.ground_energy;
    if (std::abs(e - photon) < floor * e) {
      throw physical_input_error(
          "near-resonant excitation: photon energy within " + std::to_string(100.0 * floor) +
          "% of transition to state " + std::to_string(n) + " (" +
          std::to_string(e / constants::electron_volt) + " eV)");
    }
  }
}

/// Sum-over-states alpha, G_bar and A for ground-state response.
template <class T = cplx>
BasicResponseTensors<T> build_response_tensors(
    const MolecularModel& model, double omega,
    double detuning_floor = default_tolerances().detuning_floor) {
  using ops = scalar_ops<T>;
  using R = typename ops::real_type;
  validate_model(model);
  check_detuning(model, omega, detuning_floor);

  BasicResponseTensors<T> out;
  out.omega = omega;
  const R photon = ops::real_from_double(constants::hbar) * ops::real_from_double(omega);
  const R two(2);
  for (const auto& s : model.states) {
    const R e = ops::real_from_double(s.energy) - ops::real_from_double(model.ground_energy);
    const R denom = e * e - photon * photon;
    const R w_even = two * e / denom;
    const R w_odd = two * photon / denom;
    R mu[3], mb[3], q[3][3];
    for (int i = 0; i < 3; ++i) {
      mu[i] = ops::real_from_double(s.mu[i]);
      mb[i] = ops::real_from_double(s.m_bar[i]);
      for (int j = 0; j < 3; ++j) q[i][j] = ops::real_from_double(s.quadrupole[i][j]);
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out.alpha(i, j) += ops::from_real(w_even * (mu[i] * mu[j]));
        out.g_bar(i, j) += ops::from_real(w_odd * mu[i] * mb[j]);
        for (int k = 0; k < 3; ++k) out.a(i, j, k) += ops::from_real(w_even * mu[i] * q[j][k]);
      }
    }
  }
  return out;
}

/// Spatial inversion of the multipole set: mu -> -mu (polar), i*m_bar
/// unchanged (axial), Q unchanged (even rank).
inline MolecularModel mirror_molecule(const MolecularModel& model) {
  MolecularModel out = model;
  for (auto& s : out.states) s.mu = scaled(s.mu, -1.0);
  return out;
}

/// Order-of-magnitude isotropic response of a molecule of size d (m):
/// Tr alpha = 4 pi eps0 d^3 and Tr G_bar = c alpha_fs Tr alpha, so that
/// Tr alpha / (Tr G_bar / c) = 1/alpha_fs exactly. A = 0.
inline ResponseTensors model_from_dimension(double d, double omega) {
  if (!(d > 0.0) || !std::isfinite(d)) throw physical_input_error("molecular dimension must be positive");
  const double tr_alpha = constants::four_pi_eps0 * d * d * d;
  const double tr_g = constants::speed_of_light * tr_alpha / constants::inverse_fine_structure;
  ResponseTensors t;
  t.alpha = kronecker_delta() * cplx(tr_alpha / 3.0);
  t.alpha.set_unit_tag("C^2 m^2/J");
  t.g_bar = kronecker_delta() * cplx(tr_g / 3.0);
  t.g_bar.set_unit_tag("C m/T");
  t.omega = omega;
  return t;
}

}  // namespace chiraforce
