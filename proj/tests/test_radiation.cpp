#include "support.hpp"

#include <gtest/gtest.h>

using namespace chiraforce;

TEST(Polarization, CircularVectorsInStandardFrame) {
  const double r = 1 / std::sqrt(2.0);
  const auto l = make_circular(Handedness::left, Frame{});
  const auto rr = make_circular(Handedness::right, Frame{});
  EXPECT_EQ(l.e[0], cplx(r, 0));
  EXPECT_EQ(l.e[1], cplx(0, r));
  EXPECT_EQ(rr.e[1], cplx(0, -r));
  EXPECT_LT(max_abs_diff(rr.e, conj(l.e)), 1e-16);
  EXPECT_LT(max_abs_diff(l.b, cross(complexified({0, 0, 1}), l.e)), 1e-16);
  // k x e = -i e for left: b is e rotated a quarter turn ahead.
  EXPECT_LT(max_abs_diff(l.b, scaled(l.e, cplx(0, -1))), 1e-16);
  EXPECT_LT(max_abs_diff(rr.b, scaled(rr.e, cplx(0, 1))), 1e-16);
}

TEST(Polarization, LinearIsRealAndTransverse) {
  for (double theta : {0.0, 0.3, 1.2, 3.0}) {
    const auto p = make_linear(theta, Frame{});
    for (int n = 0; n < 3; ++n) {
      EXPECT_EQ(p.e[n].imag(), 0.0);
      EXPECT_EQ(p.b[n].imag(), 0.0);
    }
    EXPECT_EQ(p.e[2], cplx(0));
    EXPECT_NEAR(norm(p.e), 1.0, 1e-15);
  }
}

TEST(Frame, RejectsInvalidFrames) {
  EXPECT_THROW(validate_frame({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), physical_input_error);
  EXPECT_THROW(validate_frame({{1, 0, 0}, {0, 2, 0}, {0, 0, 2}}), physical_input_error);
  EXPECT_THROW(validate_frame({{1, 0, 0}, {1, 0, 0}, {0, 0, 1}}), physical_input_error);
  EXPECT_NO_THROW(validate_frame(Frame{}));
}

TEST(Frame, FromAxisIsRightHandedAroundAxis) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const RealVector3 axis = scaled(random_unit_vector(rng), 2.5);
    const Frame f = frame_from_axis(axis);
    EXPECT_NO_THROW(validate_frame(f));
    EXPECT_LT(norm(f.k_hat - normalized(axis)), 1e-15);
  }
  const Frame z = frame_from_axis({0, 0, 1});
  EXPECT_EQ(z.i_hat, (RealVector3{1, 0, 0}));
  EXPECT_EQ(z.j_hat, (RealVector3{0, 1, 0}));
  EXPECT_THROW(frame_from_axis({0, 0, 0}), physical_input_error);
}

TEST(Beam, InvariantsHoldOnRandomFrames) {
  Rng rng(2);
  for (int k = 0; k < 30; ++k) {
    const Frame f = random_frame(rng);
    for (Handedness h : {Handedness::left, Handedness::right, Handedness::linear}) {
      const BeamMode b = make_beam(h, f, 800e-9, 1e6, 0.4);
      EXPECT_NO_THROW(validate_beam(b));
      EXPECT_NEAR(b.omega, 2 * oracle::pi * oracle::c / 800e-9, 1e-3);
      const Vector3 k = complexified(b.k_hat());
      EXPECT_LT(std::abs(dot(k, b.e)), 1e-15);
      EXPECT_LT(std::abs(dot(k, b.b)), 1e-15);
    }
  }
}

TEST(Beam, ValidationCatchesBrokenModes) {
  BeamMode b = make_beam(Handedness::left, Frame{}, 1e-6);
  BeamMode bad = b;
  bad.e[2] = 0.1;
  EXPECT_THROW(validate_beam(bad), physical_input_error);
  bad = b;
  bad.omega *= 1.01;
  EXPECT_THROW(validate_beam(bad), physical_input_error);
  bad = b;
  bad.b = conj(bad.b);
  EXPECT_THROW(validate_beam(bad), physical_input_error);
  EXPECT_THROW(make_beam(Handedness::left, Frame{}, -1.0), physical_input_error);
}

TEST(Beam, PolarizationsRotateWithFrame) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Matrix3 r = uniform_rotation(rng);
    for (Handedness h : {Handedness::left, Handedness::right}) {
      const auto p = make_circular(h, rotated(Frame{}, r));
      const auto q = make_circular(h, Frame{});
      EXPECT_LT(max_abs_diff(p.e, mat_vec(r, q.e)), 1e-15);
    }
  }
}

TEST(Beam, HelicityDensity) {
  const BeamMode l = make_beam(Handedness::left, Frame{}, 1064e-9);
  const BeamMode r = make_beam(Handedness::right, Frame{}, 1064e-9);
  const BeamMode x = make_beam(Handedness::linear, Frame{}, 1064e-9, 0, 0.7);
  const double i = 3e9;
  EXPECT_DOUBLE_EQ(field_densities(l, i).w, i / oracle::c);
  EXPECT_DOUBLE_EQ(field_densities(l, i).h, -field_densities(r, i).h);
  EXPECT_DOUBLE_EQ(field_densities(l, i).h * l.omega, field_densities(l, i).w);
  EXPECT_EQ(field_densities(x, i).h, 0.0);
}

TEST(Profile, GaussianIntensityAndGradient) {
  BeamProfile p;
  p.kind = ProfileKind::gaussian;
  p.power = 0.8;
  p.waist = 1.3e-6;
  Rng rng(4);
  std::uniform_real_distribution<double> u(-2e-6, 2e-6);
  for (int k = 0; k < 20; ++k) {
    const RealVector3 r{u(rng), u(rng), u(rng)};
    const double expect = oracle::gaussian_intensity(p.power, p.waist, support::to_eigen(r));
    EXPECT_LT(support::rel(intensity_at(p, r).intensity, expect), 1e-14);
    const RealVector3 g = intensity_gradient(p, r);
    for (int a = 0; a < 3; ++a) {
      const double h = 1e-12;
      RealVector3 hi = r, lo = r;
      hi[a] += h;
      lo[a] -= h;
      const double fd = (oracle::gaussian_intensity(p.power, p.waist, support::to_eigen(hi)) -
                         oracle::gaussian_intensity(p.power, p.waist, support::to_eigen(lo))) /
                        (2 * h);
      EXPECT_NEAR(g[a], fd, 1e-6 * norm(g) + 1e-6 * expect / p.waist);
    }
  }
  EXPECT_NEAR(intensity_at(p, {0, 0, 0}).amplitude,
              std::sqrt(2 * peak_intensity(p) / (oracle::c * oracle::eps0)), 1e-6);
}

TEST(Profile, OffsetAxisAndFocus) {
  BeamProfile p;
  p.kind = ProfileKind::gaussian;
  p.power = 1;
  p.waist = 1e-6;
  p.axis = {1, 0, 0};
  p.focus = {0, 1e-6, 0};
  EXPECT_DOUBLE_EQ(intensity_at(p, {5e-6, 1e-6, 0}).intensity, peak_intensity(p));
  EXPECT_EQ(intensity_gradient(p, {5e-6, 1e-6, 0})[0], 0.0);
}

TEST(Profile, RejectsUnphysicalProfiles) {
  BeamProfile p;
  p.kind = ProfileKind::gaussian;
  p.power = 1;
  EXPECT_THROW(validate_profile(p), physical_input_error);
  p.waist = 1e-6;
  p.power = -1;
  EXPECT_THROW(validate_profile(p), physical_input_error);
  BeamProfile w;
  w.intensity = -3;
  EXPECT_THROW(validate_profile(w), physical_input_error);
}
