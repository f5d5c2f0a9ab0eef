#pragma once

// Orientation-averaged optical energy shifts, gradient forces, the
// achiral/chiral force coefficients, and the two-beam interference check.

#include "chiraforce/constants.hpp"
#include "chiraforce/molecule.hpp"
#include "chiraforce/radiation.hpp"
#include "chiraforce/rot_avg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace chiraforce {

template <class R>
struct BasicEnergyShift {
  R total{};
  R part_alpha{};
  R part_G{};
  R part_A{};
  R residual_imag{};  // |Im dW| before it is discarded
};

using EnergyShift = BasicEnergyShift<double>;
using ExactEnergyShift = BasicEnergyShift<rational>;

/// Lab-frame polarization and wave-vectors of a beam in scalar type T.
template <class T>
struct BeamVectors {
  Vec3<T> e, b, k;
};

template <class T = cplx>
BeamVectors<T> beam_vectors(const BeamMode& beam) {
  if constexpr (scalar_ops<T>::is_exact) {
    return {to_exact(beam.e), to_exact(beam.b), to_vec<T>(beam.wavevector)};
  } else {
    return {beam.e, beam.b, complexified(beam.wavevector)};
  }
}

/// The three averaged contractions entering the energy shift:
///   <alpha_ij conj(e_i) e_j>, <G_ij conj(e_i) b_j>, <A_ijk conj(e_i) (i k_j) e_k>.
template <class T>
struct ShiftContractions {
  T alpha, g, a;
};

template <class T>
ShiftContractions<T> averaged_shift_contractions(const BeamVectors<T>& v,
                                                 const BasicResponseTensors<T>& t) {
  using ops = scalar_ops<T>;
  const Vec3<T> e_bar = conj(v.e);
  const Vec3<T> ik = scaled(v.k, ops::imag_unit());
  return {averaged_observable(t.alpha, {e_bar, v.e}), averaged_observable(t.g(), {e_bar, v.b}),
          averaged_observable(t.a, {e_bar, ik, v.e})};
}

namespace detail {

inline void require_matching_frequency(const BeamMode& beam, double tensor_omega) {
  if (std::abs(beam.omega - tensor_omega) > default_tolerances().dispersion_relation * beam.omega) {
    throw std::invalid_argument("response tensors built at omega = " +
                                std::to_string(tensor_omega) + " used with a beam at omega = " +
                                std::to_string(beam.omega));
  }
}

}  // namespace detail

/// Single-beam energy shift (J) of a randomly oriented molecule in a beam of
/// intensity I (W/m^2). Throws realness_error when the imaginary remainder
/// exceeds tol.residual_imag * |total|.
template <class T>
BasicEnergyShift<typename scalar_ops<T>::real_type> energy_shift(
    const BeamMode& beam, double intensity, const BasicResponseTensors<T>& tensors,
    const Tolerances& tol = default_tolerances()) {
  using ops = scalar_ops<T>;
  using R = typename ops::real_type;
  validate_beam(beam, tol);
  detail::require_matching_frequency(beam, tensors.omega);
  if (!(intensity >= 0.0)) throw physical_input_error("intensity must be non-negative");

  const auto c = averaged_shift_contractions(beam_vectors<T>(beam), tensors);
  const R light = ops::real_from_double(constants::speed_of_light);
  const R e0_sq = R(2) * ops::real_from_double(intensity) /
                  (light * ops::real_from_double(constants::vacuum_permittivity));
  const R w_alpha = -ops::real_from_double(convention::alpha_weight) * e0_sq;
  const R w_g = -ops::real_from_double(convention::g_weight) * e0_sq / light;
  const R w_a = -ops::real_from_double(convention::a_weight) * e0_sq;

  BasicEnergyShift<R> s;
  s.part_alpha = w_alpha * ops::re(c.alpha);
  s.part_G = w_g * ops::re(c.g);
  s.part_A = w_a * ops::re(c.a);
  s.total = s.part_alpha + s.part_G + s.part_A;
  using std::abs;
  using boost::multiprecision::abs;
  const R imag = w_alpha * ops::im(c.alpha) + w_g * ops::im(c.g) + w_a * ops::im(c.a);
  s.residual_imag = abs(imag);
  if (s.residual_imag > ops::real_from_double(tol.residual_imag) * abs(s.total)) {
    throw realness_error("energy shift has imaginary remainder " +
                         std::to_string(ops::to_double(s.residual_imag)) + " J against total " +
                         std::to_string(ops::to_double(s.total)) + " J");
  }
  return s;
}

namespace detail {

inline bool same_vector(const RealVector3& a, const RealVector3& b, double rel) {
  const double scale = std::max(norm(a), norm(b));
  return norm(a - b) <= rel * scale;
}

}  // namespace detail

/// energy_shift(first) - energy_shift(second) for two beams identical except
/// for handedness; conventionally first = L, second = R, which gives
/// 2 part_G(L).
template <class T>
auto discriminatory_shift(const BasicResponseTensors<T>& tensors, const BeamMode& first,
                          const BeamMode& second, double intensity,
                          const Tolerances& tol = default_tolerances()) {
  const double rel = tol.dispersion_relation;
  const bool same_geometry = detail::same_vector(first.wavevector, second.wavevector, rel) &&
                             std::abs(first.omega - second.omega) <= rel * first.omega;
  const bool handedness_ok =
      (first.handedness != Handedness::linear && second.handedness != Handedness::linear &&
       first.handedness != second.handedness) ||
      (first.handedness == Handedness::linear && second.handedness == Handedness::linear &&
       first.linear_angle == second.linear_angle);
  if (!same_geometry || !handedness_ok) {
    throw std::invalid_argument(
        "discriminatory_shift needs two beams identical except for handedness");
  }
  return energy_shift(first, intensity, tensors, tol).total -
         energy_shift(second, intensity, tensors, tol).total;
}

struct ForceResult {
  RealVector3 force{};
  RealVector3 from_grad_w{};  // achiral channel (alpha; the E1E2 term also lands here)
  RealVector3 from_grad_h{};  // chiral channel (G)
};

/// F = -grad dW at r. dW is linear in the local intensity, so
/// F = -(dW/I) grad I with the analytic Gaussian gradient.
inline ForceResult gradient_force(const BeamProfile& profile, const BeamMode& beam,
                                  const ResponseTensors& tensors, const RealVector3& r,
                                  const Tolerances& tol = default_tolerances()) {
  validate_profile(profile);
  const EnergyShift per_unit = energy_shift(beam, 1.0, tensors, tol);
  const RealVector3 grad = intensity_gradient(profile, r);
  ForceResult f;
  f.from_grad_w = scaled(grad, -(per_unit.part_alpha + per_unit.part_A));
  f.from_grad_h = scaled(grad, -per_unit.part_G);
  f.force = f.from_grad_w + f.from_grad_h;
  return f;
}

/// Coefficients of F = a grad w + b grad h, with w = I/c and h = sigma I/(c omega).
/// Written as a grad w + s |b| grad h, the sign s = sign(b) follows the
/// molecule's handedness and the beam's handedness sits in grad h.
struct ForceCoefficients {
  double a = 0.0;  // m^3
  double b = 0.0;  // m^3 / s

  int chiral_sign() const { return (b > 0.0) - (b < 0.0); }
};

/// a = Tr(alpha)/(6 eps0), b = omega Tr(G_bar)/(3 c eps0).
inline ForceCoefficients force_coefficients(const ResponseTensors& t) {
  const double eps0 = constants::vacuum_permittivity;
  return {trace(t.alpha).real() / (6.0 * eps0),
          t.omega * trace(t.g_bar).real() / (3.0 * constants::speed_of_light * eps0)};
}

struct DensityGradients {
  RealVector3 grad_w{};
  RealVector3 grad_h{};
};

inline DensityGradients density_gradients(const BeamProfile& profile, const BeamMode& beam,
                                          const RealVector3& r) {
  const RealVector3 g = intensity_gradient(profile, r);
  const double c = constants::speed_of_light;
  return {scaled(g, 1.0 / c), scaled(g, beam.sigma() / (c * beam.omega))};
}

inline ForceResult decomposed_force(const ForceCoefficients& coeffs, const BeamProfile& profile,
                             const BeamMode& beam, const RealVector3& r) {
  const DensityGradients d = density_gradients(profile, beam, r);
  ForceResult f;
  f.from_grad_w = scaled(d.grad_w, coeffs.a);
  f.from_grad_h = scaled(d.grad_h, coeffs.chiral_sign() * std::abs(coeffs.b));
  f.force = f.from_grad_w + f.from_grad_h;
  return f;
}

// ---------------------------------------------------------------------------
// Two-beam interference
// ---------------------------------------------------------------------------
//
// For scattering from a source beam s into a destination beam d, the E1E1
// amplitude alpha(conj e_d, e_s) interferes with the chiral amplitudes
//
//   G(conj e_d, b_s)        M1 absorption from s
//   G(e_s, conj b_d)        M1 emission into d
//   A(conj e_d; k_s, e_s)   E2 absorption from s
//   A(e_s; k_d, conj e_d)   E2 emission into d
//
// Each interference term alpha-amplitude * conj(chiral amplitude) is the
// contraction of <alpha (x) conj(X)> with four or five lab vectors. Both
// directions s,d = 1,2 and 2,1 are enumerated: four rank-4 and four rank-5
// pairings in total.

enum class BeamVector { e1, b1, k1, e2, b2, k2 };

struct VectorSlot {
  BeamVector which;
  bool conjugated;
};

struct InterferencePairing {
  std::string label;
  int rank;  // 4: alpha x conj(G), 5: alpha x conj(A)
  std::vector<VectorSlot> slots;
};

inline const std::vector<InterferencePairing>& interference_pairings() {
  static const std::vector<InterferencePairing> list = [] {
    std::vector<InterferencePairing> out;
    for (int dir = 0; dir < 2; ++dir) {
      const bool one_to_two = dir == 0;
      const BeamVector es = one_to_two ? BeamVector::e1 : BeamVector::e2;
      const BeamVector bs = one_to_two ? BeamVector::b1 : BeamVector::b2;
      const BeamVector ks = one_to_two ? BeamVector::k1 : BeamVector::k2;
      const BeamVector ed = one_to_two ? BeamVector::e2 : BeamVector::e1;
      const BeamVector bd = one_to_two ? BeamVector::b2 : BeamVector::b1;
      const BeamVector kd = one_to_two ? BeamVector::k2 : BeamVector::k1;
      const std::string tag = one_to_two ? "1->2" : "2->1";
      // Leading two slots: alpha(conj e_d, e_s).
      const VectorSlot a0{ed, true}, a1{es, false};
      out.push_back({tag + " E1M1 absorption", 4, {a0, a1, {ed, false}, {bs, true}}});
      out.push_back({tag + " E1M1 emission", 4, {a0, a1, {es, true}, {bd, false}}});
      out.push_back({tag + " E1E2 absorption", 5, {a0, a1, {ed, false}, {ks, false}, {es, true}}});
      out.push_back({tag + " E1E2 emission", 5, {a0, a1, {es, true}, {kd, false}, {ed, false}}});
    }
    return out;
  }();
  return list;
}

template <class T>
Vec3<T> resolve_slot(const VectorSlot& slot, const BeamVectors<T>& v1, const BeamVectors<T>& v2) {
  Vec3<T> v;
  switch (slot.which) {
    case BeamVector::e1: v = v1.e; break;
    case BeamVector::b1: v = v1.b; break;
    case BeamVector::k1: v = v1.k; break;
    case BeamVector::e2: v = v2.e; break;
    case BeamVector::b2: v = v2.b; break;
    case BeamVector::k2: v = v2.k; break;
  }
  return slot.conjugated ? conj(v) : v;
}

template <class T>
struct PairingValue {
  std::string label;
  int rank = 0;
  T value{};
  double scale = 0.0;  // |alpha| |X| prod |v|, the natural size of the term
};

template <class T>
struct InterferenceCheck {
  T rank4_value{};
  T rank5_value{};
  std::vector<PairingValue<T>> pairings;
};

/// Product tensors alpha (x) conj(G) and alpha (x) conj(A).
template <class T>
std::pair<CartesianTensor<T>, CartesianTensor<T>> interference_tensors(
    const BasicResponseTensors<T>& t) {
  return {outer_product(t.alpha, conj(t.g())), outer_product(t.alpha, conj(t.a))};
}

template <class T>
InterferenceCheck<T> two_beam_interference_check(const BeamMode& beam1, const BeamMode& beam2,
                                                 const BasicResponseTensors<T>& tensors) {
  const auto v1 = beam_vectors<T>(beam1);
  const auto v2 = beam_vectors<T>(beam2);
  const auto products = interference_tensors(tensors);
  const auto& t4 = products.first;
  const auto& t5 = products.second;
  const double s4 = frobenius_norm(t4);
  const double s5 = frobenius_norm(t5);

  InterferenceCheck<T> out;
  for (const auto& p : interference_pairings()) {
    std::vector<Vec3<T>> vecs;
    double scale = p.rank == 4 ? s4 : s5;
    for (const auto& slot : p.slots) {
      vecs.push_back(resolve_slot(slot, v1, v2));
      double n = 0.0;
      for (const auto& x : vecs.back()) n += std::norm(scalar_ops<T>::to_cplx(x));
      scale *= std::sqrt(n);
    }
    const auto& mol = p.rank == 4 ? t4 : t5;
    T value = averaged_observable(mol, std::span<const Vec3<T>>(vecs));
    (p.rank == 4 ? out.rank4_value : out.rank5_value) += value;
    out.pairings.push_back({p.label, p.rank, std::move(value), scale});
  }
  return out;
}

struct InterferenceSample {
  ObservableEstimate rank4_total;
  ObservableEstimate rank5_total;
  std::vector<ObservableEstimate> pairings;
};

/// Monte Carlo oracle for two_beam_interference_check: every pairing and both
/// totals are evaluated on the same Haar-uniform rotation samples.
inline InterferenceSample sample_interference_check(const BeamMode& beam1, const BeamMode& beam2,
                                                    const ResponseTensors& tensors,
                                                    std::uint64_t n_samples, std::uint64_t seed,
                                                    unsigned workers = 0) {
  const auto v1 = beam_vectors<cplx>(beam1);
  const auto v2 = beam_vectors<cplx>(beam2);
  const auto products = interference_tensors(tensors);
  const Tensor& t4 = products.first;
  const Tensor& t5 = products.second;
  const auto& pairings = interference_pairings();
  std::vector<std::vector<Vector3>> lab;
  for (const auto& p : pairings) {
    std::vector<Vector3> vecs;
    for (const auto& slot : p.slots) vecs.push_back(resolve_slot(slot, v1, v2));
    lab.push_back(std::move(vecs));
  }
  const std::size_t np = pairings.size();
  auto est = so3_sample_observables(
      n_samples, seed, np + 2,
      [&, rot = std::vector<Vector3>(5)](const Matrix3& r, std::span<cplx> out) mutable {
        const Matrix3 rt = transpose(r);
        out[np] = out[np + 1] = cplx{};
        for (std::size_t p = 0; p < np; ++p) {
          const auto& vecs = lab[p];
          for (std::size_t i = 0; i < vecs.size(); ++i) rot[i] = mat_vec(rt, vecs[i]);
          const Tensor& mol = pairings[p].rank == 4 ? t4 : t5;
          out[p] = contract_with_vectors(mol, std::span<const Vector3>(rot.data(), vecs.size()));
          out[pairings[p].rank == 4 ? np : np + 1] += out[p];
        }
      },
      workers);
  InterferenceSample s;
  s.rank4_total = est[np];
  s.rank5_total = est[np + 1];
  est.resize(np);
  s.pairings = std::move(est);
  return s;
}

}  // namespace chiraforce
