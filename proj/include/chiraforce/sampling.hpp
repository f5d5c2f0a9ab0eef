#pragma once

// Seeded generators for random tensors, frames and model molecules, and the
// built-in example models.

#include "chiraforce/constants.hpp"
#include "chiraforce/molecule.hpp"
#include "chiraforce/radiation.hpp"

#include <random>
#include <vector>

namespace chiraforce {

using Rng = std::mt19937_64;

/// Complex tensor with independent standard normal real and imaginary parts.
inline Tensor random_tensor(int rank, Rng& rng, bool complex_valued = true) {
  std::normal_distribution<double> nd;
  Tensor t(rank);
  for (auto& z : t.components()) {
    const double re = nd(rng);
    z = {re, complex_valued ? nd(rng) : 0.0};
  }
  return t;
}

inline RealVector3 random_unit_vector(Rng& rng) {
  return mat_vec(uniform_rotation(rng), RealVector3{0, 0, 1});
}

inline Frame random_frame(Rng& rng) {
  const Matrix3 r = uniform_rotation(rng);
  return rotated(Frame{}, r);
}

/// Random real symmetric traceless 3x3 matrix with entries of order `scale`.
inline Matrix3 random_quadrupole(Rng& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix3 q{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) q[i][j] = q[j][i] = nd(rng);
  const double tr = (q[0][0] + q[1][1] + q[2][2]) / 3.0;
  for (int i = 0; i < 3; ++i) q[i][i] -= tr;
  // Make the trace vanish to the last bit.
  q[2][2] = -(q[0][0] + q[1][1]);
  return q;
}

/// Chiral model molecule: 1-4 excited states 3-8 eV above the ground state,
/// dipoles of a few debye, magnetic moments below a Bohr magneton and
/// quadrupoles of order e a0^2.
inline MolecularModel random_chiral_model(Rng& rng) {
  using namespace constants;
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> energy(3.0, 8.0);
  std::normal_distribution<double> nd;
  MolecularModel m;
  m.label = "random";
  m.ground_energy = 0.0;
  const int n = count(rng);
  for (int s = 0; s < n; ++s) {
    ExcitedState st;
    st.energy = energy(rng) * electron_volt;
    for (int i = 0; i < 3; ++i) {
      st.mu[i] = 1.5 * nd(rng) * debye;
      st.m_bar[i] = 0.5 * nd(rng) * bohr_magneton;
    }
    st.quadrupole = random_quadrupole(rng, quadrupole_au);
    m.states.push_back(st);
  }
  return m;
}

/// Shipped example models (also under data/models/).
inline std::vector<MolecularModel> example_models() {
  using namespace constants;
  auto q = [](Matrix3 m) {
    for (auto& row : m)
      for (double& x : row) x *= quadrupole_au;
    return m;
  };
  MolecularModel chiral;
  chiral.label = "chiral-three-state";
  chiral.ground_energy = 0.0;
  chiral.states = {
      {4.5 * electron_volt,
       scaled(RealVector3{1.2, 0.3, 0.0}, debye),
       scaled(RealVector3{0.8, 0.1, 0.2}, bohr_magneton),
       q({{{0.5, 0.2, 0.0}, {0.2, -0.3, 0.1}, {0.0, 0.1, -0.2}}})},
      {5.8 * electron_volt,
       scaled(RealVector3{0.0, 0.9, 0.4}, debye),
       scaled(RealVector3{-0.2, 0.6, 0.3}, bohr_magneton),
       q({{{-0.4, 0.0, 0.3}, {0.0, 0.1, 0.0}, {0.3, 0.0, 0.3}}})},
      {7.1 * electron_volt,
       scaled(RealVector3{0.5, -0.2, 1.1}, debye),
       scaled(RealVector3{0.1, 0.0, -0.7}, bohr_magneton),
       q({{{0.2, -0.1, 0.0}, {-0.1, 0.2, 0.2}, {0.0, 0.2, -0.4}}})},
  };

  MolecularModel achiral;
  achiral.label = "achiral-two-state";
  achiral.ground_energy = 0.0;
  achiral.states = {
      {4.0 * electron_volt, scaled(RealVector3{1.5, 0.0, 0.0}, debye), RealVector3{0, 0, 0},
       q({{{0.6, 0.0, 0.0}, {0.0, -0.3, 0.0}, {0.0, 0.0, -0.3}}})},
      {6.2 * electron_volt, scaled(RealVector3{0.0, 0.8, 0.8}, debye), RealVector3{0, 0, 0},
       Matrix3{}},
  };
  return {chiral, achiral};
}

}  // namespace chiraforce
