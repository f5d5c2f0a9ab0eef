#pragma once

// Size-based order-of-magnitude estimates of the achiral/chiral response
// ratio and of the chiral force.

#include "chiraforce/force_engine.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace chiraforce {

inline constexpr double reference_dimension = 10e-9;    // m
inline constexpr double reference_wavelength = 1064e-9;  // m

/// Beam, profile and position at which forces are probed.
struct ForceProbe {
  BeamProfile profile;
  BeamMode beam;
  RealVector3 position{};
};

/// 1 W circularly polarized (L) 1064 nm Gaussian, w0 = 1 um, probed half a
/// waist off axis.
inline ForceProbe default_probe() {
  ForceProbe p;
  p.profile.kind = ProfileKind::gaussian;
  p.profile.waist = 1e-6;
  p.profile.power = 1.0;
  p.profile.axis = {0, 0, 1};
  p.beam = make_beam(Handedness::left, frame_from_axis(p.profile.axis), reference_wavelength);
  p.position = {0.5e-6, 0, 0};
  return p;
}

inline ForceResult probe_force(double d, const ForceProbe& probe) {
  return gradient_force(probe.profile, probe.beam, model_from_dimension(d, probe.beam.omega),
                        probe.position);
}

struct EstimateReport {
  double d = 0.0;               // m
  double trace_alpha = 0.0;     // C^2 m^2 / J
  double trace_G_over_c = 0.0;  // Tr(G_bar)/c, same units as trace_alpha
  double ratio = 0.0;           // trace_alpha / trace_G_over_c
  double reference_force_ratio = 0.0;  // |F_chiral(d)| / |F_chiral(10 nm)|
};

inline EstimateReport estimate_ratio(double d, const ForceProbe& probe = default_probe()) {
  const ResponseTensors t = model_from_dimension(d, probe.beam.omega);
  EstimateReport r;
  r.d = d;
  r.trace_alpha = trace(t.alpha).real();
  r.trace_G_over_c = trace(t.g_bar).real() / constants::speed_of_light;
  r.ratio = r.trace_alpha / r.trace_G_over_c;
  r.reference_force_ratio = norm(probe_force(d, probe).from_grad_h) /
                            norm(probe_force(reference_dimension, probe).from_grad_h);
  return r;
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

struct SweepRow {
  double d = 0.0;
  double chiral_force = 0.0;   // |F| through grad h, N
  double achiral_force = 0.0;  // |F| through grad w, N
  double ratio_to_first = 0.0;  // chiral_force / chiral_force of row 0
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double loglog_slope = std::numeric_limits<double>::quiet_NaN();  // of chiral_force vs d
};

inline SweepTable scaling_sweep(std::span<const double> d_values,
                                const ForceProbe& probe = default_probe()) {
  if (d_values.empty()) throw std::invalid_argument("scaling sweep needs at least one dimension");
  for (double d : d_values) {
    if (!(d > 0.0)) throw physical_input_error("molecular dimension must be positive");
  }
  SweepTable table;
  std::vector<double> forces;
  for (double d : d_values) {
    const ForceResult f = probe_force(d, probe);
    SweepRow row;
    row.d = d;
    row.chiral_force = norm(f.from_grad_h);
    row.achiral_force = norm(f.from_grad_w);
    forces.push_back(row.chiral_force);
    table.rows.push_back(row);
  }
  for (auto& row : table.rows) row.ratio_to_first = row.chiral_force / forces.front();
  if (d_values.size() >= 2) table.loglog_slope = loglog_slope(d_values, forces);
  return table;
}

}  // namespace chiraforce
