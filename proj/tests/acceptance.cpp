// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include "support.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace chiraforce;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

constexpr std::uint64_t seed = 42;
const Tolerances tol = default_tolerances();

double reference_omega() { return make_beam(Handedness::left, Frame{}, reference_wavelength).omega; }

BeamMode beam(Handedness h, const Frame& f = Frame{}, double angle = 0.0) {
  return make_beam(h, f, reference_wavelength, 0.0, angle);
}

std::vector<MolecularModel> random_models(std::uint64_t salt, int n) {
  Rng rng(splitmix64(seed ^ salt));
  std::vector<MolecularModel> out;
  for (int i = 0; i < n; ++i) out.push_back(random_chiral_model(rng));
  return out;
}

const std::vector<MolecularModel>& fifty_models() {
  static const auto m = random_models(1, 50);
  return m;
}

// Worst |residual_imag| / |total| over every energy shift evaluated here.
double worst_residual = 0.0;

EnergyShift shift(const BeamMode& b, const ResponseTensors& t, double intensity = 1e9) {
  Tolerances lax = tol;
  lax.residual_imag = 1.0;
  const EnergyShift s = energy_shift(b, intensity, t, lax);
  worst_residual = std::max(worst_residual, s.residual_imag / std::abs(s.total));
  return s;
}

Outcome linear_nullity() {
  Rng rng(splitmix64(seed ^ 2));
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  double worst = 0.0;
  std::size_t exact_nonzero = 0, n = 0;
  for (const auto& m : fifty_models()) {
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    const ExactResponseTensors te = to_exact(t);
    for (int k = 0; k < 20; ++k) {
      const BeamMode b = beam(Handedness::linear, random_frame(rng), angle(rng));
      const EnergyShift s = shift(b, t);
      worst = std::max(worst, std::abs(s.part_G) / std::abs(s.part_alpha));
      exact_nonzero += !(energy_shift(b, 1e9, te, tol).part_G == 0);
      ++n;
    }
  }
  return {worst <= 1e-10 && exact_nonzero == 0,
          "max |part_G|/|part_alpha| = " + fmt(worst) + " over " + std::to_string(n) +
              " cases; exact nonzero: " + std::to_string(exact_nonzero)};
}

Outcome circular_antisymmetry() {
  double worst = 0.0, smallest = 1e300;
  bool all_nonzero = true;
  for (const auto& m : fifty_models()) {
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    const EnergyShift l = shift(beam(Handedness::left), t), r = shift(beam(Handedness::right), t);
    all_nonzero = all_nonzero && l.part_G != 0.0 && r.part_G != 0.0;
    worst = std::max(worst, support::rel(l.part_G, -r.part_G));
  }
  const MolecularModel shipped = example_models().front();
  const ResponseTensors ts = build_response_tensors(shipped, reference_omega());
  for (Handedness h : {Handedness::left, Handedness::right}) {
    const EnergyShift s = shift(beam(h), ts);
    smallest = std::min(smallest, std::abs(s.part_G) / std::abs(s.part_alpha));
  }
  return {all_nonzero && smallest > 1e-6 && worst <= 1e-12,
          "shipped |part_G|/|part_alpha| = " + fmt(smallest) + "; max relative L+R defect = " +
              fmt(worst)};
}

Outcome mirror_antisymmetry() {
  double worst = 0.0;
  const BeamMode l = beam(Handedness::left), r = beam(Handedness::right);
  for (const auto& m : random_models(3, 20)) {
    const double d = discriminatory_shift(build_response_tensors(m, reference_omega()), l, r, 1e9);
    const double dm =
        discriminatory_shift(build_response_tensors(mirror_molecule(m), reference_omega()), l, r, 1e9);
    worst = std::max(worst, support::rel(d, -dm));
  }
  return {worst <= 1e-12, "max relative defect = " + fmt(worst)};
}

Outcome interference_vanishing() {
  // Beam 1 along z with e = x; beam 2 along +z or -z with e = y.
  const Frame f1{};
  const Frame f_co{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}};
  const Frame f_counter{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}};
  const BeamMode b1 = beam(Handedness::linear, f1);
  const BeamMode co = beam(Handedness::linear, f_co);
  const BeamMode counter = beam(Handedness::linear, f_counter);
  auto models = example_models();
  for (const auto& m : random_models(4, 10)) models.push_back(m);

  std::size_t exact_nonzero = 0;
  double worst_float = 0.0;
  Rng rng(splitmix64(seed ^ 5));
  for (const auto& m : models) {
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    for (const Frame* f2 : {&f_co, &f_counter}) {
      const auto ex = two_beam_interference_check(b1, beam(Handedness::linear, *f2), to_exact(t));
      exact_nonzero += !ex.rank4_value.is_zero() + !ex.rank5_value.is_zero();
      // Floating point on a randomly rotated copy of the same geometry.
      const Matrix3 r = uniform_rotation(rng);
      const auto fl = two_beam_interference_check(beam(Handedness::linear, rotated(f1, r)),
                                                  beam(Handedness::linear, rotated(*f2, r)), t);
      double scale4 = 0, scale5 = 0;
      for (const auto& p : fl.pairings) (p.rank == 4 ? scale4 : scale5) += p.scale;
      worst_float = std::max({worst_float, std::abs(fl.rank4_value) / scale4,
                              std::abs(fl.rank5_value) / scale5});
    }
  }

  const ResponseTensors shipped = build_response_tensors(example_models().front(), reference_omega());
  double worst_z = 0.0;
  for (const BeamMode* b2 : {&co, &counter}) {
    const auto mc = sample_interference_check(b1, *b2, shipped, 1000000, seed);
    for (const auto& e : {mc.rank4_total, mc.rank5_total}) {
      worst_z = std::max({worst_z, std::abs(e.mean.real()) / e.se_real,
                          std::abs(e.mean.imag()) / e.se_imag});
    }
  }
  return {exact_nonzero == 0 && worst_float <= 1e-12 && worst_z <= 3.0,
          "exact nonzero totals: " + std::to_string(exact_nonzero) +
              "; floating max |value|/scale = " + fmt(worst_float) +
              "; Monte Carlo (1e6) max |mean|/SE = " + fmt(worst_z)};
}

Outcome e1e2_nullity() {
  auto models = example_models();
  for (const auto& m : random_models(6, 20)) models.push_back(m);
  Rng rng(splitmix64(seed ^ 7));
  double worst = 0.0;
  for (const auto& m : models) {
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
      const EnergyShift s = shift(beam(h, random_frame(rng), 0.9), t);
      worst = std::max(worst, std::abs(s.part_A) / std::abs(s.part_alpha));
    }
  }
  return {worst <= 1e-12, "max |part_A|/|part_alpha| = " + fmt(worst)};
}

Outcome oracle_equivalence() {
  Rng rng(splitmix64(seed ^ 8));
  double worst_z = 0.0, worst_rank2 = 0.0;
  std::size_t outside = 0, total = 0;
  for (int r = 2; r <= 5; ++r) {
    std::vector<Tensor> ts;
    for (int k = 0; k < 20; ++k) ts.push_back(random_tensor(r, rng));
    const auto mc = so3_sample_average_batch(ts, 1000000, seed + static_cast<std::uint64_t>(r));
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Tensor an = rotational_average(ts[k]).averaged_tensor;
      if (r == 2) {
        const Tensor expect = kronecker_delta() * (trace(ts[k]) / 3.0);
        for (std::size_t c = 0; c < an.size(); ++c)
          worst_rank2 = std::max(worst_rank2, std::abs(an[c] - expect[c]));
      }
      const Tensor& se = *mc[k].standard_error;
      for (std::size_t c = 0; c < an.size(); ++c) {
        const cplx d = an[c] - mc[k].averaged_tensor[c];
        const double floor = 64 * std::numeric_limits<double>::epsilon() * max_abs(ts[k]);
        for (const auto& [dev, s] : {std::pair{std::abs(d.real()), se[c].real()},
                                     std::pair{std::abs(d.imag()), se[c].imag()}}) {
          const double z = dev <= floor ? 0.0 : dev / s;
          worst_z = std::max(worst_z, z);
          outside += z > 3.0;
          ++total;
        }
      }
    }
  }
  return {worst_z <= 3.0 && worst_rank2 <= 1e-14,
          std::to_string(outside) + " of " + std::to_string(total) +
              " component estimates beyond 3 SE (max z = " + fmt(worst_z) +
              "; normal law expects " + fmt(0.0027 * total) + "); rank-2 deviation " +
              fmt(worst_rank2)};
}

Outcome fine_structure_ratio() {
  const EstimateReport r = estimate_ratio(reference_dimension);
  return {std::abs(r.ratio - 137.035999) <= 1e-6, "ratio = " + io::format_double(r.ratio)};
}

Outcome cubic_scaling() {
  const double ratio = estimate_ratio(1e-9).reference_force_ratio;
  const std::vector<double> ds{1e-9, 2e-9, 4e-9, 7e-9, 10e-9};
  const double slope = scaling_sweep(ds).loglog_slope;
  return {std::abs(ratio - 1e-3) <= 1e-9 * 1e-3 && std::abs(slope - 3.0) <= 1e-9,
          "F(1 nm)/F(10 nm) = " + io::format_double(ratio) + "; slope = " + io::format_double(slope)};
}

Outcome gradient_consistency() {
  BeamProfile p = default_probe().profile;
  Rng rng(splitmix64(seed ^ 9));
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto models = random_models(10, 20);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const BeamMode b = beam(k % 3 == 0 ? Handedness::linear : (k % 3 == 1 ? Handedness::left : Handedness::right), Frame{}, 0.2);
    const ResponseTensors t = build_response_tensors(models[static_cast<std::size_t>(k)], reference_omega());
    RealVector3 r{u(rng) * p.waist, u(rng) * p.waist, u(rng) * p.waist};
    const double h = 1e-6 * p.waist;
    RealVector3 fd{};
    for (int a = 0; a < 3; ++a) {
      RealVector3 hi = r, lo = r;
      hi[a] += h;
      lo[a] -= h;
      fd[a] = -(shift(b, t, intensity_at(p, hi).intensity).total -
                shift(b, t, intensity_at(p, lo).intensity).total) /
              (2 * h);
    }
    const ForceResult f = gradient_force(p, b, t, r);
    worst = std::max(worst, norm(f.force - fd) / norm(f.force));
  }
  return {worst <= 1e-6, "max relative deviation = " + fmt(worst) + " at 20 positions"};
}

Outcome realness() {
  // Covers every shift evaluated by the criteria above, plus the shipped
  // models under all three polarizations.
  for (const auto& m : example_models()) {
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) shift(beam(h), t);
  }
  return {worst_residual < 1e-10, "max residual_imag/|total| = " + fmt(worst_residual)};
}

Outcome determinism() {
  auto run = [] {
    const char* argv[] = {"chiraforce", "verify", "--seed", "42"};
    std::ostringstream out, err;
    const int code = run_cli(4, argv, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = run();
  const auto b = run();
  return {a.second == b.second && !a.second.empty(),
          "report sizes " + std::to_string(a.second.size()) + " and " +
              std::to_string(b.second.size()) + " bytes; verify exit codes " +
              std::to_string(a.first) + ", " + std::to_string(b.first)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"linear-polarization nullity", linear_nullity},
      {"circular non-nullity and antisymmetry", circular_antisymmetry},
      {"mirror antisymmetry", mirror_antisymmetry},
      {"two-beam interference vanishing", interference_vanishing},
      {"E1E2 single-beam nullity", e1e2_nullity},
      {"rotational-average oracle equivalence", oracle_equivalence},
      {"fine-structure ratio", fine_structure_ratio},
      {"cubic size scaling", cubic_scaling},
      {"gradient consistency", gradient_consistency},
      {"realness of the energy shift", realness},
      {"determinism of verify", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
