#include "support.hpp"

#include <gtest/gtest.h>

using namespace chiraforce;

namespace {

double reference_omega() { return make_beam(Handedness::left, Frame{}, 1064e-9).omega; }

}  // namespace

TEST(ResponseTensors, StaticPolarizabilityMatchesFiniteField) {
  Rng rng(1);
  auto models = example_models();
  for (int k = 0; k < 10; ++k) models.push_back(random_chiral_model(rng));
  for (const auto& m : models) {
    const Eigen::Matrix3d ff = oracle::finite_field_alpha(support::states(m));
    const ResponseTensors t = build_response_tensors(m, 0.0);
    const double scale = ff.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(t.alpha(i, j).real(), ff(i, j), 1e-6 * scale) << m.label << " " << i << j;
  }
}

TEST(ResponseTensors, ChiralTensorVanishesStatically) {
  const ResponseTensors t = build_response_tensors(example_models().front(), 0.0);
  EXPECT_EQ(max_abs(t.g_bar), 0.0);
}

TEST(ResponseTensors, SumOverStatesByHand) {
  // One state, mu along x, m along y, at photon energy half the transition.
  MolecularModel m;
  m.label = "one";
  const double e = 4 * oracle::eV, mu = 2e-30, mb = 3e-24;
  m.states = {{e, {mu, 0, 0}, {0, mb, 0}, Matrix3{}}};
  const double omega = e / 2 / oracle::hbar;
  const ResponseTensors t = build_response_tensors(m, omega);
  const double d = e * e - e * e / 4;
  EXPECT_NEAR(t.alpha(0, 0).real(), 2 * e * mu * mu / d, 1e-15 * 2 * e * mu * mu / d);
  EXPECT_NEAR(t.g_bar(0, 1).real(), 2 * (e / 2) * mu * mb / d, 1e-15 * e * mu * mb / d);
  EXPECT_EQ(t.alpha(1, 1), cplx(0));
  EXPECT_EQ(t.g()(0, 1), cplx(0, t.g_bar(0, 1).real()));
}

TEST(ResponseTensors, SymmetryAndRealness) {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const ResponseTensors t = build_response_tensors(random_chiral_model(rng), reference_omega());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(t.alpha(i, j), t.alpha(j, i));
        EXPECT_EQ(t.alpha(i, j).imag(), 0.0);
        EXPECT_EQ(t.g_bar(i, j).imag(), 0.0);
        for (int l = 0; l < 3; ++l) EXPECT_EQ(t.a(i, j, l), t.a(i, l, j));
      }
  }
}

TEST(ResponseTensors, DispersionIsEvenInFrequency) {
  Rng rng(3);
  const ResponseTensors p = build_response_tensors(random_chiral_model(rng), reference_omega());
  Rng again(3);
  const ResponseTensors n = build_response_tensors(random_chiral_model(again), -reference_omega());
  EXPECT_EQ(p.alpha, n.alpha);
  EXPECT_EQ(p.g_bar, -n.g_bar);
}

TEST(ResponseTensors, ExactMatchesFloating) {
  const auto m = example_models().front();
  const ResponseTensors f = build_response_tensors(m, reference_omega());
  const ExactResponseTensors e = build_response_tensors<exact_complex>(m, reference_omega());
  EXPECT_LT(support::rel_max_diff(support::flat(f.alpha), support::flat(to_double(e.alpha))), 1e-15);
  EXPECT_LT(support::rel_max_diff(support::flat(f.g_bar), support::flat(to_double(e.g_bar))), 1e-15);
  EXPECT_LT(support::rel_max_diff(support::flat(f.a), support::flat(to_double(e.a))), 1e-15);
}

TEST(Mirror, ParityOfResponseTensors) {
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const MolecularModel m = random_chiral_model(rng);
    const ResponseTensors t = build_response_tensors(m, reference_omega());
    const ResponseTensors p = build_response_tensors(mirror_molecule(m), reference_omega());
    EXPECT_EQ(p.alpha, t.alpha);
    EXPECT_EQ(p.g_bar, -t.g_bar);
    EXPECT_EQ(p.a, -t.a);
  }
}

TEST(Mirror, EqualsPointReflectionOfGeometry) {
  // Inverting every coordinate flips polar mu, keeps axial m and even-rank Q.
  const MolecularModel m = example_models().front();
  const MolecularModel p = mirror_molecule(m);
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    EXPECT_EQ(p.states[s].mu, scaled(m.states[s].mu, -1.0));
    EXPECT_EQ(p.states[s].m_bar, m.states[s].m_bar);
    EXPECT_EQ(p.states[s].quadrupole, m.states[s].quadrupole);
  }
}

TEST(Validation, RejectsInvalidModels) {
  MolecularModel m = example_models().front();
  m.states[1].quadrupole[0][1] += 1e-45;
  EXPECT_THROW(validate_model(m), physical_input_error);
  m = example_models().front();
  m.states[0].quadrupole[2][2] += 0.1 * m.states[0].quadrupole[0][0];
  EXPECT_THROW(validate_model(m), physical_input_error);
  m = example_models().front();
  m.states[2].energy = m.ground_energy;
  EXPECT_THROW(validate_model(m), physical_input_error);
}

TEST(Validation, NearResonanceIsRejectedWithStateName) {
  const MolecularModel m = example_models().front();
  const double omega = m.states[1].energy * 0.995 / oracle::hbar;
  try {
    build_response_tensors(m, omega);
    FAIL() << "expected physical_input_error";
  } catch (const physical_input_error& e) {
    EXPECT_NE(std::string(e.what()).find("state 1"), std::string::npos);
  }
  EXPECT_NO_THROW(build_response_tensors(m, m.states[1].energy * 0.98 / oracle::hbar));
}

TEST(DimensionModel, TracesFollowSize) {
  const double d = 10e-9;
  const ResponseTensors t = model_from_dimension(d, reference_omega());
  EXPECT_LT(support::rel(trace(t.alpha).real(), 4 * oracle::pi * oracle::eps0 * d * d * d), 1e-15);
  EXPECT_LT(support::rel(trace(t.alpha).real() / (trace(t.g_bar).real() / oracle::c), 137.035999),
            1e-15);
  EXPECT_EQ(max_abs(t.a), 0.0);
  EXPECT_THROW(model_from_dimension(0.0, 1.0), physical_input_error);
}
