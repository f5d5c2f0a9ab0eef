#pragma once

// Registry of the library's invariant checks. `chiraforce verify` runs all
// of them; a new invariant is added here and nowhere else.

#include "chiraforce/estimates.hpp"
#include "chiraforce/force_engine.hpp"
#include "chiraforce/io.hpp"
#include "chiraforce/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace chiraforce {

struct VerifyConfig {
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;
  bool exact = true;
  unsigned workers = 0;
  Tolerances tol = default_tolerances();
  std::vector<MolecularModel> models = example_models();
};

struct CheckResult {
  std::string id;
  std::string module;
  bool passed = false;
  double metric = 0.0;     // worst observed value of the checked quantity
  double threshold = 0.0;  // bound it is compared against
  std::string detail;
};

struct Check {
  std::string id;
  std::string module;
  std::string description;
  std::function<CheckResult(const VerifyConfig&)> run;
};

namespace verify_detail {

// Independent stream per check, so adding a check does not shift the others.
inline Rng stream(const VerifyConfig& cfg, std::uint64_t salt) {
  return Rng(splitmix64(cfg.seed ^ splitmix64(salt)));
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Worst-case bookkeeping: metric <= threshold passes.
struct Worst {
  double metric = 0.0;
  std::string where;
  void update(double m, std::string w) {
    if (m > metric || where.empty()) {
      metric = m;
      where = std::move(w);
    }
  }
};

inline CheckResult result(std::string id, std::string module, double metric, double threshold,
                          std::string detail, bool lower_bound = false) {
  CheckResult r{std::move(id), std::move(module), false, metric, threshold, std::move(detail)};
  r.passed = lower_bound ? metric > threshold : metric <= threshold;
  return r;
}

inline BeamMode standard_beam(Handedness h, double angle = 0.0, Frame frame = Frame{}) {
  return make_beam(h, frame, reference_wavelength, 0.0, angle);
}

// Two beams along a common axis with crossed linear polarizations:
// e1 = i, e2 = j (beam 2 co- or counter-propagating). Exact for the
// standard frame because only 0 and 1 appear in the vectors.
inline std::pair<BeamMode, BeamMode> crossed_linear_pair(const Frame& f, bool counter) {
  const BeamMode b1 = make_beam(Handedness::linear, f, reference_wavelength, 0.0, 0.0);
  Frame f2;
  if (counter) {
    f2 = {f.j_hat, f.i_hat, scaled(f.k_hat, -1.0)};
  } else {
    f2 = {f.j_hat, scaled(f.i_hat, -1.0), f.k_hat};
  }
  const BeamMode b2 = make_beam(Handedness::linear, f2, reference_wavelength, 0.0, 0.0);
  return {b1, b2};
}

inline ResponseTensors tensors_for(const MolecularModel& m) {
  return build_response_tensors(m, standard_beam(Handedness::left).omega);
}

inline std::vector<MolecularModel> random_models(const VerifyConfig& cfg, std::uint64_t salt,
                                                 int n) {
  Rng rng = stream(cfg, salt);
  std::vector<MolecularModel> out;
  for (int i = 0; i < n; ++i) out.push_back(random_chiral_model(rng));
  return out;
}

/// Static polarizability trace of a single-transition model from the exact
/// ground eigenvalue of the 2x2 Hamiltonian [[0, -mu F], [-mu F, E]] in a
/// weak static field F along each axis, Richardson-extrapolated in F.
inline double finite_field_trace(const ExcitedState& s, double ground) {
  const double e = s.energy - ground;
  double tr = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double mu = s.mu[axis];
    if (mu == 0.0) continue;
    auto alpha_at = [&](double f) {
      const double v = mu * f;
      const double lowest = -(v * v) / (e / 2 + std::sqrt(e * e / 4 + v * v));
      return -2.0 * lowest / (f * f);
    };
    const double f = 1e-3 * e / std::abs(mu);
    tr += (4.0 * alpha_at(f / 2) - alpha_at(f)) / 3.0;
  }
  return tr;
}

}  // namespace verify_detail

inline const std::vector<Check>& check_registry() {
  using namespace verify_detail;
  static const std::vector<Check> registry = {
      // ---------------------------------------------------------------- tensor_core
      {"tensor_core.basis_counts", "tensor_core",
       "isotropic bases have 1, 1, 3, 6 members at ranks 2..5, all linearly independent",
       [](const VerifyConfig&) {
         const std::size_t expected[] = {1, 1, 3, 6};
         double bad = 0.0;
         std::string detail = "member counts and exact Gram ranks:";
         for (int r = 2; r <= 5; ++r) {
           const auto n = isotropic_basis(r).size();
           const auto gr = exact_rank(isotropic_gram(r));
           detail += " " + std::to_string(n) + "/" + std::to_string(gr);
           if (n != expected[r - 2] || gr != n) bad += 1.0;
         }
         return result("tensor_core.basis_counts", "tensor_core", bad, 0.0, detail);
       }},
      {"tensor_core.basis_rotation_invariance", "tensor_core",
       "every isotropic basis member is unchanged by 100 random rotations",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 1);
         double worst = 0.0;
         for (int r = 2; r <= 5; ++r) {
           const auto basis = isotropic_basis(r);
           for (int k = 0; k < 100; ++k) {
             const Matrix3 rot = uniform_rotation(rng);
             for (const auto& m : basis.members) worst = std::max(worst, max_abs_diff(rotated(m, rot), m));
           }
         }
         return result("tensor_core.basis_rotation_invariance", "tensor_core", worst,
                       cfg.tol.rotation_invariance, "max |R.T - T| over ranks 2..5");
       }},
      {"tensor_core.contraction_bilinearity", "tensor_core",
       "full_contraction(a + b, c) = full_contraction(a, c) + full_contraction(b, c)",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 2);
         double worst = 0.0;
         for (int k = 0; k < 50; ++k) {
           const int r = 1 + k % 6;
           const Tensor a = random_tensor(r, rng), b = random_tensor(r, rng), c = random_tensor(r, rng);
           const cplx lhs = full_contraction(a + b, c);
           const cplx rhs = full_contraction(a, c) + full_contraction(b, c);
           worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
         }
         return result("tensor_core.contraction_bilinearity", "tensor_core", worst,
                       cfg.tol.symmetry, "relative defect on 50 random triples");
       }},
      {"tensor_core.epsilon_delta_identity", "tensor_core",
       "e_ijk e_ilm = d_jl d_km - d_jm d_kl exactly",
       [](const VerifyConfig&) {
         const auto e = levi_civita<exact_complex>();
         const auto d = kronecker_delta<exact_complex>();
         double bad = 0.0;
         for (int j = 0; j < 3; ++j)
           for (int k = 0; k < 3; ++k)
             for (int l = 0; l < 3; ++l)
               for (int m = 0; m < 3; ++m) {
                 exact_complex lhs;
                 for (int i = 0; i < 3; ++i) lhs += e(i, j, k) * e(i, l, m);
                 if (!(lhs == d(j, l) * d(k, m) - d(j, m) * d(k, l))) bad += 1.0;
               }
         return result("tensor_core.epsilon_delta_identity", "tensor_core", bad, 0.0,
                       "number of failing components (exact arithmetic)");
       }},
      // ---------------------------------------------------------------- rot_avg
      {"rot_avg.rank2_trace_formula", "rot_avg", "rank-2 average equals (Tr T / 3) delta",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 3);
         double worst = 0.0;
         for (int k = 0; k < 20; ++k) {
           const Tensor t = random_tensor(2, rng);
           const Tensor expect = kronecker_delta() * (trace(t) / 3.0);
           worst = std::max(worst, max_abs_diff(rotational_average(t).averaged_tensor, expect));
         }
         return result("rot_avg.rank2_trace_formula", "rot_avg", worst, cfg.tol.rank2_average,
                       "max componentwise deviation, 20 random tensors");
       }},
      {"rot_avg.reconstruction_idempotence_linearity", "rot_avg",
       "coefficients rebuild the average; averaging is idempotent, linear and blind to pre-rotation",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 4);
         Worst w;
         for (int r = 2; r <= 5; ++r) {
           for (int k = 0; k < 5; ++k) {
             const Tensor t1 = random_tensor(r, rng), t2 = random_tensor(r, rng);
             const auto avg = rotational_average(t1);
             const Tensor rebuilt = isotropic_combination<cplx>(r, avg.coefficients);
             w.update(max_abs_diff(rebuilt, avg.averaged_tensor), "reconstruction");
             w.update(max_abs_diff(rotational_average(avg.averaged_tensor).averaged_tensor,
                                   avg.averaged_tensor), "idempotence");
             w.update(max_abs_diff(rotational_average(rotated(t1, uniform_rotation(rng))).averaged_tensor,
                                   avg.averaged_tensor), "pre-rotation");
             const cplx a{0.7, -1.3}, b{-0.4, 0.2};
             w.update(max_abs_diff(rotational_average(t1 * a + t2 * b).averaged_tensor,
                                   avg.averaged_tensor * a + rotational_average(t2).averaged_tensor * b),
                      "linearity");
             w.update(max_abs_diff(rotated(avg.averaged_tensor, uniform_rotation(rng)), avg.averaged_tensor),
                      "fixed point");
           }
         }
         return result("rot_avg.reconstruction_idempotence_linearity", "rot_avg", w.metric,
                       cfg.tol.rotation_invariance, "worst: " + w.where);
       }},
      {"rot_avg.oracle_equivalence", "rot_avg",
       "analytic and Monte Carlo averages of 20 random tensors per rank 2..5 agree within 3 "
       "standard errors componentwise",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 5);
         double worst_z = 0.0;
         std::size_t outside = 0, total = 0;
         for (int r = 2; r <= 5; ++r) {
           std::vector<Tensor> ts;
           for (int k = 0; k < 20; ++k) ts.push_back(random_tensor(r, rng));
           const auto mc = so3_sample_average_batch(ts, cfg.samples, cfg.seed + static_cast<std::uint64_t>(r), cfg.workers);
           for (std::size_t k = 0; k < ts.size(); ++k) {
             const Tensor an = rotational_average(ts[k]).averaged_tensor;
             const Tensor& se = *mc[k].standard_error;
             for (std::size_t c = 0; c < an.size(); ++c) {
               const cplx d = an[c] - mc[k].averaged_tensor[c];
               // Components whose estimate has no spread must agree to rounding.
               const double floor = 64 * std::numeric_limits<double>::epsilon() * max_abs(ts[k]);
               for (const auto& [dev, s] : {std::pair{std::abs(d.real()), se[c].real()},
                                            std::pair{std::abs(d.imag()), se[c].imag()}}) {
                 const double z = dev <= floor ? 0.0 : dev / s;
                 worst_z = std::max(worst_z, z);
                 outside += z > cfg.tol.standard_errors;
                 ++total;
               }
             }
           }
         }
         return result("rot_avg.oracle_equivalence", "rot_avg", worst_z, cfg.tol.standard_errors,
                       std::to_string(outside) + " of " + std::to_string(total) +
                           " component estimates outside the band (normal law expects ~0.27%)");
       }},
      // ---------------------------------------------------------------- radiation
      {"radiation.beam_invariants", "radiation",
       "generated beams are transverse, unit, b = k x e and omega = c|k|",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 6);
         std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
         double bad = 0.0;
         std::string detail = "L, R and linear beams on 30 random frames";
         for (int k = 0; k < 30; ++k) {
           const Frame f = random_frame(rng);
           for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
             try {
               validate_beam(make_beam(h, f, 500e-9 + 1e-9 * k, 0.0, angle(rng)), cfg.tol);
             } catch (const physical_input_error& e) {
               bad += 1.0;
               detail = e.what();
             }
           }
         }
         return result("radiation.beam_invariants", "radiation", bad, 0.0, detail);
       }},
      {"radiation.handedness_and_equivariance", "radiation",
       "e(R) = conj e(L) in the standard frame; polarizations rotate with their frame",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 7);
         Worst w;
         const auto l = make_circular(Handedness::left, Frame{});
         const auto r = make_circular(Handedness::right, Frame{});
         w.update(max_abs_diff(r.e, conj(l.e)), "conjugation");
         for (int k = 0; k < 20; ++k) {
           const Matrix3 rot = uniform_rotation(rng);
           for (Handedness h : {Handedness::left, Handedness::right}) {
             const auto p = make_circular(h, rotated(Frame{}, rot));
             const auto q = make_circular(h, Frame{});
             w.update(std::max(max_abs_diff(p.e, mat_vec(rot, q.e)), max_abs_diff(p.b, mat_vec(rot, q.b))),
                      "equivariance");
           }
         }
         return result("radiation.handedness_and_equivariance", "radiation", w.metric,
                       cfg.tol.unit_vector, "worst: " + w.where);
       }},
      {"radiation.helicity_bound", "radiation",
       "linear beams carry h = 0 and |h| omega <= w for every beam",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
           const BeamMode b = standard_beam(h, 0.3);
           const FieldDensities d = field_densities(b, 1e9);
           worst = std::max(worst, std::abs(d.h) * b.omega / d.w - 1.0);
           if (h == Handedness::linear) worst = std::max(worst, std::abs(d.h));
         }
         return result("radiation.helicity_bound", "radiation", std::max(worst, 0.0),
                       cfg.tol.symmetry, "max(|h| omega / w - 1, |h_linear|)");
       }},
      // ---------------------------------------------------------------- molecule
      {"molecule.tensor_symmetry", "molecule",
       "alpha symmetric real, G_bar real, A symmetric traceless in its last two indices",
       [](const VerifyConfig& cfg) {
         Worst w;
         auto models = random_models(cfg, 8, 20);
         models.insert(models.end(), cfg.models.begin(), cfg.models.end());
         for (const auto& m : models) {
           const ResponseTensors t = tensors_for(m);
           const double sa = max_abs(t.alpha), sg = max_abs(t.g_bar), sq = max_abs(t.a);
           for (int i = 0; i < 3; ++i)
             for (int j = 0; j < 3; ++j) {
               w.update(std::abs(t.alpha(i, j) - t.alpha(j, i)) / sa, "alpha symmetry");
               w.update(std::abs(t.alpha(i, j).imag()) / sa, "alpha realness");
               if (sg > 0) w.update(std::abs(t.g_bar(i, j).imag()) / sg, "G_bar realness");
               if (sq == 0) continue;
               for (int k = 0; k < 3; ++k) w.update(std::abs(t.a(i, j, k) - t.a(i, k, j)) / sq, "A symmetry");
               if (j == 0) w.update(std::abs(t.a(i, 0, 0) + t.a(i, 1, 1) + t.a(i, 2, 2)) / sq, "A trace");
             }
         }
         return result("molecule.tensor_symmetry", "molecule", w.metric, cfg.tol.symmetry,
                       "relative; worst: " + w.where);
       }},
      {"molecule.parity_covariance", "molecule",
       "(alpha, G, A) -> (+, -, -) under mirror_molecule; mirror is an involution",
       [](const VerifyConfig& cfg) {
         Worst w;
         for (const auto& m : random_models(cfg, 9, 20)) {
           const ResponseTensors t = tensors_for(m);
           const ResponseTensors p = tensors_for(mirror_molecule(m));
           w.update(max_abs_diff(p.alpha, t.alpha) / max_abs(t.alpha), "alpha");
           w.update(max_abs_diff(p.g_bar, -t.g_bar) / max_abs(t.g_bar), "G");
           w.update(max_abs_diff(p.a, -t.a) / max_abs(t.a), "A");
           const auto mm = mirror_molecule(mirror_molecule(m));
           for (std::size_t s = 0; s < m.states.size(); ++s)
             if (mm.states[s].mu != m.states[s].mu) w.update(1.0, "involution");
         }
         return result("molecule.parity_covariance", "molecule", w.metric, cfg.tol.symmetry,
                       "relative; worst: " + w.where);
       }},
      {"molecule.dispersion_symmetry", "molecule", "alpha(omega) = alpha(-omega)",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         for (const auto& m : random_models(cfg, 10, 20)) {
           const double w = standard_beam(Handedness::left).omega;
           const auto plus = build_response_tensors(m, w);
           const auto minus = build_response_tensors(m, -w);
           worst = std::max(worst, max_abs_diff(plus.alpha, minus.alpha) / max_abs(plus.alpha));
         }
         return result("molecule.dispersion_symmetry", "molecule", worst, cfg.tol.symmetry,
                       "relative deviation on 20 random models");
       }},
      {"molecule.finite_field_static_limit", "molecule",
       "static Tr(alpha) of two-level models matches finite-field perturbation of the Hamiltonian",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         for (const auto& m : random_models(cfg, 11, 20)) {
           MolecularModel two = m;
           two.states.resize(1);
           const double tr = trace(build_response_tensors(two, 0.0).alpha).real();
           worst = std::max(worst, rel_diff(tr, finite_field_trace(two.states[0], two.ground_energy)));
         }
         return result("molecule.finite_field_static_limit", "molecule", worst,
                       cfg.tol.finite_field, "relative deviation on 20 two-level models");
       }},
      // ---------------------------------------------------------------- force_engine
      {"force_engine.linear_nullity", "force_engine",
       "part_G vanishes for linear polarization (50 models x 20 angles; exactly in rationals)",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 12);
         std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
         double worst = 0.0;
         std::size_t exact_nonzero = 0;
         const auto models = random_models(cfg, 13, 50);
         for (std::size_t mi = 0; mi < models.size(); ++mi) {
           const ResponseTensors t = tensors_for(models[mi]);
           for (int k = 0; k < 20; ++k) {
             const BeamMode b = standard_beam(Handedness::linear, angle(rng), random_frame(rng));
             const EnergyShift s = energy_shift(b, 1e9, t, cfg.tol);
             worst = std::max(worst, std::abs(s.part_G) / std::abs(s.part_alpha));
             if (cfg.exact && k < 2 && mi < 10) {
               exact_nonzero += energy_shift(b, 1e9, to_exact(t), cfg.tol).part_G != 0;
             }
           }
         }
         auto r = result("force_engine.linear_nullity", "force_engine", worst, cfg.tol.linear_nullity,
                         "max |part_G|/|part_alpha|; exact nonzero count " + std::to_string(exact_nonzero));
         r.passed = r.passed && exact_nonzero == 0;
         return r;
       }},
      {"force_engine.circular_antisymmetry", "force_engine",
       "part_G non-null for circular light and part_G(L) = -part_G(R)",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 14);
         double worst = 0.0, smallest_ratio = 1e300;
         for (const auto& m : random_models(cfg, 15, 50)) {
           const ResponseTensors t = tensors_for(m);
           const Frame f = random_frame(rng);
           const EnergyShift l = energy_shift(standard_beam(Handedness::left, 0, f), 1e9, t, cfg.tol);
           const EnergyShift r = energy_shift(standard_beam(Handedness::right, 0, f), 1e9, t, cfg.tol);
           worst = std::max(worst, rel_diff(l.part_G, -r.part_G));
           smallest_ratio = std::min(smallest_ratio, std::abs(l.part_G) / std::abs(l.part_alpha));
         }
         const double random_smallest = smallest_ratio;
         smallest_ratio = 1e300;
         for (const auto& m : cfg.models) {
           const ResponseTensors t = tensors_for(m);
           if (trace(t.g_bar).real() == 0.0) continue;  // achiral reference model
           const EnergyShift l = energy_shift(standard_beam(Handedness::left), 1e9, t, cfg.tol);
           smallest_ratio = std::min(smallest_ratio, std::abs(l.part_G) / std::abs(l.part_alpha));
         }
         auto r = result("force_engine.circular_antisymmetry", "force_engine", worst, cfg.tol.antisymmetry,
                         "max relative |part_G(L) + part_G(R)|; smallest |part_G/part_alpha|: random " +
                             io::format_double(random_smallest) + ", shipped " +
                             io::format_double(smallest_ratio));
         r.passed = r.passed && random_smallest > 0.0 && smallest_ratio > cfg.tol.circular_nonnull;
         return r;
       }},
      {"force_engine.mirror_antisymmetry", "force_engine",
       "discriminatory_shift(mirror M) = -discriminatory_shift(M)",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         const BeamMode l = standard_beam(Handedness::left), r = standard_beam(Handedness::right);
         for (const auto& m : random_models(cfg, 16, 20)) {
           const double d = discriminatory_shift(tensors_for(m), l, r, 1e9, cfg.tol);
           const double dm = discriminatory_shift(tensors_for(mirror_molecule(m)), l, r, 1e9, cfg.tol);
           worst = std::max(worst, rel_diff(d, -dm));
         }
         return result("force_engine.mirror_antisymmetry", "force_engine", worst, cfg.tol.antisymmetry,
                       "max relative defect on 20 random models");
       }},
      {"force_engine.achiral_chiral_separation", "force_engine",
       "part_alpha unchanged by handedness swap and by mirroring",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         const BeamMode l = standard_beam(Handedness::left), r = standard_beam(Handedness::right);
         for (const auto& m : random_models(cfg, 17, 20)) {
           const ResponseTensors t = tensors_for(m);
           const double a = energy_shift(l, 1e9, t, cfg.tol).part_alpha;
           worst = std::max(worst, rel_diff(a, energy_shift(r, 1e9, t, cfg.tol).part_alpha));
           worst = std::max(worst, rel_diff(a, energy_shift(l, 1e9, tensors_for(mirror_molecule(m)), cfg.tol).part_alpha));
         }
         return result("force_engine.achiral_chiral_separation", "force_engine", worst,
                       cfg.tol.antisymmetry, "max relative change of part_alpha");
       }},
      {"force_engine.e1e2_nullity", "force_engine",
       "orientation-averaged single-beam part_A vanishes",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 18);
         double worst = 0.0;
         std::size_t exact_nonzero = 0;
         auto models = random_models(cfg, 19, 20);
         models.insert(models.end(), cfg.models.begin(), cfg.models.end());
         for (const auto& m : models) {
           const ResponseTensors t = tensors_for(m);
           for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
             const BeamMode b = standard_beam(h, 0.7, random_frame(rng));
             const EnergyShift s = energy_shift(b, 1e9, t, cfg.tol);
             worst = std::max(worst, std::abs(s.part_A) / std::abs(s.part_alpha));
             if (cfg.exact) exact_nonzero += energy_shift(b, 1e9, to_exact(t), cfg.tol).part_A != 0;
           }
         }
         auto r = result("force_engine.e1e2_nullity", "force_engine", worst, cfg.tol.e1e2_nullity,
                         "max |part_A|/|part_alpha|; exact nonzero count " + std::to_string(exact_nonzero));
         r.passed = r.passed && exact_nonzero == 0;
         return r;
       }},
      {"force_engine.realness", "force_engine",
       "residual imaginary part of every energy shift is below 1e-10 |total|",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 20);
         std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
         double worst = 0.0;
         auto models = random_models(cfg, 21, 20);
         models.insert(models.end(), cfg.models.begin(), cfg.models.end());
         Tolerances lax = cfg.tol;
         lax.residual_imag = 1.0;  // measure here instead of throwing
         for (const auto& m : models) {
           const ResponseTensors t = tensors_for(m);
           for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
             const EnergyShift s = energy_shift(standard_beam(h, angle(rng), random_frame(rng)), 1e9, t, lax);
             worst = std::max(worst, s.residual_imag / std::abs(s.total));
           }
         }
         return result("force_engine.realness", "force_engine", worst, cfg.tol.residual_imag,
                       "max residual_imag/|total|");
       }},
      {"force_engine.gradient_consistency", "force_engine",
       "analytic gradient force matches central differences of the energy shift",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 22);
         std::uniform_real_distribution<double> u(-1.0, 1.0);
         BeamProfile p = default_probe().profile;
         const double w0 = p.waist, h = w0 * 1e-6;
         double worst = 0.0;
         const auto models = random_models(cfg, 23, 20);
         for (int k = 0; k < 20; ++k) {
           const BeamMode b = standard_beam(k % 2 ? Handedness::left : Handedness::right);
           const ResponseTensors t = tensors_for(models[static_cast<std::size_t>(k)]);
           RealVector3 r{u(rng) * 1.5 * w0, u(rng) * 1.5 * w0, u(rng) * w0};
           if (std::hypot(r[0], r[1]) < 0.1 * w0) r[0] += 0.3 * w0;
           auto energy = [&](const RealVector3& x) {
             return energy_shift(b, intensity_at(p, x).intensity, t, cfg.tol).total;
           };
           RealVector3 fd{};
           for (int a = 0; a < 3; ++a) {
             RealVector3 hi = r, lo = r;
             hi[a] += h;
             lo[a] -= h;
             fd[a] = -(energy(hi) - energy(lo)) / (2 * h);
           }
           const ForceResult f = gradient_force(p, b, t, r, cfg.tol);
           worst = std::max(worst, norm(f.force - fd) / norm(f.force));
         }
         return result("force_engine.gradient_consistency", "force_engine", worst, cfg.tol.gradient_fd,
                       "max relative vector deviation at 20 random positions, step w0*1e-6");
       }},
      {"force_engine.force_coefficients_match", "force_engine",
       "a grad w + b grad h reproduces the gradient force decomposition",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 24);
         std::uniform_real_distribution<double> u(-1.0, 1.0);
         const BeamProfile p = default_probe().profile;
         double worst = 0.0;
         for (const auto& m : random_models(cfg, 25, 20)) {
           const ResponseTensors t = tensors_for(m);
           const RealVector3 r{u(rng) * p.waist, u(rng) * p.waist, 0.0};
           for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
             const BeamMode b = standard_beam(h, 0.4);
             const ForceResult f = gradient_force(p, b, t, r, cfg.tol);
             const ForceResult g = decomposed_force(force_coefficients(t), p, b, r);
             worst = std::max(worst, norm(f.from_grad_w - g.from_grad_w) / norm(f.from_grad_w));
             if (h != Handedness::linear) {
               worst = std::max(worst, norm(f.from_grad_h - g.from_grad_h) / norm(f.from_grad_h));
             } else {
               worst = std::max(worst, norm(f.from_grad_h) / norm(f.from_grad_w));
             }
           }
         }
         return result("force_engine.force_coefficients_match", "force_engine", worst,
                       cfg.tol.coefficient_match, "max relative deviation of the two routes");
       }},
      {"force_engine.interference_vanishing", "force_engine",
       "two-beam alpha-G and alpha-A interference vanishes for crossed linear polarizations",
       [](const VerifyConfig& cfg) {
         Rng rng = stream(cfg, 26);
         double worst = 0.0;
         std::size_t exact_nonzero = 0;
         auto models = cfg.models;
         const auto extra = random_models(cfg, 27, 10);
         models.insert(models.end(), extra.begin(), extra.end());
         for (const auto& m : models) {
           const ResponseTensors t = tensors_for(m);
           for (bool counter : {false, true}) {
             if (cfg.exact) {
               const auto [b1, b2] = crossed_linear_pair(Frame{}, counter);
               const auto ex = two_beam_interference_check(b1, b2, to_exact(t));
               exact_nonzero += !ex.rank4_value.is_zero() || !ex.rank5_value.is_zero();
               for (const auto& p : ex.pairings) exact_nonzero += !p.value.is_zero();
             }
             const auto [b1, b2] = crossed_linear_pair(random_frame(rng), counter);
             const auto fl = two_beam_interference_check(b1, b2, t);
             double scale = 0.0;
             for (const auto& p : fl.pairings) {
               worst = std::max(worst, std::abs(p.value) / p.scale);
               scale += p.scale;
             }
             worst = std::max({worst, std::abs(fl.rank4_value) / scale, std::abs(fl.rank5_value) / scale});
           }
         }
         auto r = result("force_engine.interference_vanishing", "force_engine", worst,
                         cfg.tol.interference_nullity,
                         "max |value|/scale per pairing and total; exact nonzero count " +
                             std::to_string(exact_nonzero));
         r.passed = r.passed && exact_nonzero == 0;
         return r;
       }},
      {"force_engine.interference_oracle", "force_engine",
       "Monte Carlo SO(3) estimate of the crossed-linear interference terms is zero within 3 "
       "standard errors",
       [](const VerifyConfig& cfg) {
         const ResponseTensors t = tensors_for(cfg.models.front());
         const auto [b1, b2] = crossed_linear_pair(Frame{}, true);
         const auto s = sample_interference_check(b1, b2, t, cfg.samples, cfg.seed, cfg.workers);
         double worst_z = 0.0;
         auto z = [](const ObservableEstimate& e) {
           auto one = [](double v, double se) { return v == 0.0 ? 0.0 : std::abs(v) / se; };
           return std::max(one(e.mean.real(), e.se_real), one(e.mean.imag(), e.se_imag));
         };
         for (const auto& p : s.pairings) worst_z = std::max(worst_z, z(p));
         worst_z = std::max({worst_z, z(s.rank4_total), z(s.rank5_total)});
         return result("force_engine.interference_oracle", "force_engine", worst_z,
                       cfg.tol.standard_errors, "max |mean|/SE over pairings and totals");
       }},
      // ---------------------------------------------------------------- estimates
      {"estimates.fine_structure_ratio", "estimates",
       "Tr(alpha)/(Tr(G)/c) from the size estimator equals 137.035999",
       [](const VerifyConfig& cfg) {
         double worst = 0.0;
         for (double d : {1e-9, 10e-9, 3.7e-9}) {
           worst = std::max(worst, std::abs(estimate_ratio(d).ratio - constants::inverse_fine_structure));
         }
         return result("estimates.fine_structure_ratio", "estimates", worst,
                       cfg.tol.fine_structure_ratio, "max |ratio - 137.035999|");
       }},
      {"estimates.cubic_scaling", "estimates",
       "chiral force scales as d^3: 1 nm gives 1e-3 of 10 nm, log-log slope 3",
       [](const VerifyConfig& cfg) {
         const double ratio = estimate_ratio(1e-9).reference_force_ratio;
         const std::vector<double> ds = {1e-9, 2e-9, 4e-9, 7e-9, 10e-9};
         const SweepTable table = scaling_sweep(ds);
         const double worst = std::max(std::abs(ratio - 1e-3) / 1e-3, std::abs(table.loglog_slope - 3.0));
         return result("estimates.cubic_scaling", "estimates", worst, cfg.tol.cubic_law,
                       "ratio(1 nm/10 nm) = " + io::format_double(ratio) + ", slope = " +
                           io::format_double(table.loglog_slope));
       }},
  };
  return registry;
}

struct VerifyReport {
  std::vector<CheckResult> results;
  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  }
};

/// Runs every registered check (or those whose id contains `filter`).
inline VerifyReport run_checks(const VerifyConfig& cfg, const std::string& filter = {}) {
  VerifyReport report;
  for (const auto& check : check_registry()) {
    if (!filter.empty() && check.id.find(filter) == std::string::npos) continue;
    try {
      report.results.push_back(check.run(cfg));
    } catch (const std::exception& e) {
      report.results.push_back({check.id, check.module, false, 0.0, 0.0,
                                std::string("threw: ") + e.what()});
    }
  }
  return report;
}

inline io::json to_json(const VerifyReport& r, const VerifyConfig& cfg) {
  io::json checks = io::json::array();
  io::json failures = io::json::array();
  for (const auto& c : r.results) {
    checks.push_back(io::json{{"id", c.id}, {"module", c.module}, {"passed", c.passed},
                              {"metric", c.metric}, {"threshold", c.threshold},
                              {"detail", c.detail}});
    if (!c.passed) failures.push_back(c.id);
  }
  return io::json{{"schema", io::schema_version}, {"command", "verify"},
                  {"seed", cfg.seed}, {"samples", cfg.samples}, {"exact", cfg.exact},
                  {"models", [&] {
                     io::json l = io::json::array();
                     for (const auto& m : cfg.models) l.push_back(m.label);
                     return l;
                   }()},
                  {"passed", r.passed()}, {"failures", failures}, {"checks", checks}};
}

}  // namespace chiraforce
