#pragma once

// Polarization states, beam modes and focal-plane Gaussian intensity.
//
// Handedness convention, used everywhere in the library: in a right-handed
// frame (i, j, k) with k along propagation,
//
//   e(L) = (i + i*j)/sqrt2,   b(L) = (j - i*i)/sqrt2
//   e(R) = (i - i*j)/sqrt2,   b(R) = (j + i*i)/sqrt2
//
// so that b = k x e, and the helicity sign is sigma = +1 for L, -1 for R,
// 0 for linear polarization.

#include "chiraforce/constants.hpp"
#include "chiraforce/errors.hpp"
#include "chiraforce/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chiraforce {

enum class Handedness { left, right, linear };

inline const char* to_string(Handedness h) {
  switch (h) {
    case Handedness::left:
      return "L";
    case Handedness::right:
      return "R";
    default:
      return "linear";
  }
}

inline int helicity_sign(Handedness h) {
  return h == Handedness::left ? 1 : (h == Handedness::right ? -1 : 0);
}

/// Right-handed orthonormal triad; k_hat is the propagation direction.
struct Frame {
  RealVector3 i_hat{1, 0, 0};
  RealVector3 j_hat{0, 1, 0};
  RealVector3 k_hat{0, 0, 1};
};

inline void validate_frame(const Frame& f, double tol = default_tolerances().unit_vector) {
  const RealVector3* v[3] = {&f.i_hat, &f.j_hat, &f.k_hat};
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      const double expected = (a == b) ? 1.0 : 0.0;
      if (std::abs(dot(*v[a], *v[b]) - expected) > tol) {
        throw physical_input_error("polarization frame is not orthonormal");
      }
    }
  const RealVector3 c = cross(f.i_hat, f.j_hat);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(c[i] - f.k_hat[i]) > tol) {
      throw physical_input_error("polarization frame is not right-handed (i x j != k)");
    }
  }
}

/// Deterministic transverse frame around a propagation axis.
inline Frame frame_from_axis(const RealVector3& axis) {
  const double n = norm(axis);
  if (!(n > 0.0) || !std::isfinite(n)) throw physical_input_error("beam axis must be non-zero");
  Frame f;
  f.k_hat = scaled(axis, 1.0 / n);
  // Seed with the lab axis least aligned with k.
  int least = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(f.k_hat[i]) < std::abs(f.k_hat[least])) least = i;
  RealVector3 seed{0, 0, 0};
  seed[least] = 1.0;
  f.i_hat = normalized(seed - scaled(f.k_hat, dot(seed, f.k_hat)));
  f.j_hat = cross(f.k_hat, f.i_hat);
  return f;
}

inline Frame rotated(const Frame& f, const Matrix3& r) {
  return {mat_vec(r, f.i_hat), mat_vec(r, f.j_hat), mat_vec(r, f.k_hat)};
}

struct Polarization {
  Vector3 e;  // electric
  Vector3 b;  // magnetic, k_hat x e
};

inline Polarization make_circular(Handedness handedness, const Frame& frame) {
  if (handedness == Handedness::linear) {
    throw std::invalid_argument("make_circular needs L or R handedness");
  }
  validate_frame(frame);
  const double s = (handedness == Handedness::left) ? 1.0 : -1.0;
  const double r = 1.0 / std::numbers::sqrt2;
  Polarization p;
  for (int n = 0; n < 3; ++n) {
    p.e[n] = r * cplx(frame.i_hat[n], s * frame.j_hat[n]);
    p.b[n] = r * cplx(frame.j_hat[n], -s * frame.i_hat[n]);
  }
  return p;
}

/// Real polarization e = cos(theta) i + sin(theta) j, b = k x e.
inline Polarization make_linear(double theta, const Frame& frame) {
  validate_frame(frame);
  const RealVector3 e = scaled(frame.i_hat, std::cos(theta)) + scaled(frame.j_hat, std::sin(theta));
  return {complexified(e), complexified(cross(frame.k_hat, e))};
}

struct BeamMode {
  RealVector3 wavevector{0, 0, 0};  // rad/m
  Vector3 e{};
  Vector3 b{};
  double amplitude = 0.0;  // V/m
  double omega = 0.0;      // rad/s
  Handedness handedness = Handedness::linear;
  double linear_angle = 0.0;  // rad, linear polarization only

  int sigma() const { return helicity_sign(handedness); }
  RealVector3 k_hat() const { return normalized(wavevector); }
};

/// Beam of the given vacuum wavelength (m) propagating along frame.k_hat.
inline BeamMode make_beam(Handedness handedness, const Frame& frame, double wavelength,
                          double amplitude = 0.0, double linear_angle = 0.0) {
  if (!(wavelength > 0.0)) throw physical_input_error("wavelength must be positive");
  const Polarization p = handedness == Handedness::linear ? make_linear(linear_angle, frame)
                                                          : make_circular(handedness, frame);
  BeamMode m;
  const double k = 2.0 * std::numbers::pi / wavelength;
  m.wavevector = scaled(frame.k_hat, k);
  m.e = p.e;
  m.b = p.b;
  m.amplitude = amplitude;
  m.omega = constants::speed_of_light * k;
  m.handedness = handedness;
  m.linear_angle = handedness == Handedness::linear ? linear_angle : 0.0;
  return m;
}

/// Checks transversality, unit polarizations, b = k_hat x e and w = c|k|.
inline void validate_beam(const BeamMode& m, const Tolerances& tol = default_tolerances()) {
  const double kn = norm(m.wavevector);
  if (!(kn > 0.0)) throw physical_input_error("beam wave-vector must be non-zero");
  if (!(m.omega > 0.0)) throw physical_input_error("beam angular frequency must be positive");
  const Vector3 k_hat = complexified(scaled(m.wavevector, 1.0 / kn));
  if (std::abs(norm(m.e) - 1.0) > tol.unit_vector || std::abs(norm(m.b) - 1.0) > tol.unit_vector) {
    throw physical_input_error("beam polarization vectors must be unit vectors");
  }
  if (std::abs(dot(k_hat, m.e)) > tol.transversality ||
      std::abs(dot(k_hat, m.b)) > tol.transversality) {
    throw physical_input_error("beam polarization is not transverse to k");
  }
  if (max_abs_diff(m.b, cross(k_hat, m.e)) > tol.transversality) {
    throw physical_input_error("beam magnetic polarization differs from k_hat x e");
  }
  if (std::abs(m.omega - constants::speed_of_light * kn) >
      tol.dispersion_relation * m.omega) {
    throw physical_input_error("beam violates omega = c|k|");
  }
}

enum class ProfileKind { plane_wave, gaussian };

struct BeamProfile {
  ProfileKind kind = ProfileKind::plane_wave;
  double waist = 0.0;      // m, gaussian
  double power = 0.0;      // W, gaussian
  double intensity = 0.0;  // W/m^2, plane wave
  RealVector3 axis{0, 0, 1};
  RealVector3 focus{0, 0, 0};
};

inline void validate_profile(const BeamProfile& p) {
  if (p.kind == ProfileKind::gaussian) {
    if (!(p.waist > 0.0)) throw physical_input_error("gaussian waist must be positive");
    if (!(p.power > 0.0)) throw physical_input_error("gaussian power must be positive");
  } else if (!(p.intensity >= 0.0)) {
    throw physical_input_error("plane-wave intensity must be non-negative");
  }
  if (!(norm(p.axis) > 0.0)) throw physical_input_error("profile axis must be non-zero");
}

struct IntensitySample {
  double intensity = 0.0;  // W/m^2
  double amplitude = 0.0;  // V/m, E0 = sqrt(2I/(c eps0))
};

inline double amplitude_from_intensity(double intensity) {
  return std::sqrt(2.0 * intensity / (constants::speed_of_light * constants::vacuum_permittivity));
}

/// Transverse offset of r from the profile axis.
inline RealVector3 transverse_offset(const BeamProfile& p, const RealVector3& r) {
  const RealVector3 u = normalized(p.axis);
  const RealVector3 d = r - p.focus;
  return d - scaled(u, dot(d, u));
}

inline double peak_intensity(const BeamProfile& p) {
  if (p.kind == ProfileKind::plane_wave) return p.intensity;
  return 2.0 * p.power / (std::numbers::pi * p.waist * p.waist);
}

/// Focal-plane Gaussian I = (2P/pi w0^2) exp(-2 rho^2/w0^2); constant for a plane wave.
inline IntensitySample intensity_at(const BeamProfile& p, const RealVector3& r) {
  validate_profile(p);
  double i = p.intensity;
  if (p.kind == ProfileKind::gaussian) {
    const RealVector3 rho = transverse_offset(p, r);
    i = peak_intensity(p) * std::exp(-2.0 * dot(rho, rho) / (p.waist * p.waist));
  }
  return {i, amplitude_from_intensity(i)};
}

/// Analytic grad I, W/m^3: -(4/w0^2) I(r) rho_vec for the Gaussian.
inline RealVector3 intensity_gradient(const BeamProfile& p, const RealVector3& r) {
  if (p.kind == ProfileKind::plane_wave) return {0, 0, 0};
  const RealVector3 rho = transverse_offset(p, r);
  const double i = intensity_at(p, r).intensity;
  return scaled(rho, -4.0 * i / (p.waist * p.waist));
}

struct FieldDensities {
  double w = 0.0;  // J/m^3
  double h = 0.0;  // J s/m^3
};

/// w = I/c, h = sigma I/(c omega).
inline FieldDensities field_densities(const BeamMode& beam, double intensity) {
  const double c = constants::speed_of_light;
  return {intensity / c, beam.sigma() * intensity / (c * beam.omega)};
}

}  // namespace chiraforce
