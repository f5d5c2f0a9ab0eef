#pragma once

#include "chiraforce/chiraforce.hpp"
#include "oracles.hpp"

#include <vector>

namespace support {

inline std::vector<oracle::cplx> flat(const chiraforce::Tensor& t) {
  std::vector<oracle::cplx> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = t[i];
  return v;
}

inline oracle::Mat3 to_eigen(const chiraforce::Matrix3& m) {
  oracle::Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m[i][j];
  return r;
}

inline chiraforce::Matrix3 from_eigen(const oracle::Mat3& m) {
  chiraforce::Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m(i, j);
  return r;
}

inline Eigen::Vector3d to_eigen(const chiraforce::RealVector3& v) { return {v[0], v[1], v[2]}; }

inline oracle::CVec3 to_eigen(const chiraforce::Vector3& v) { return {v[0], v[1], v[2]}; }

inline std::vector<oracle::State> states(const chiraforce::MolecularModel& m) {
  std::vector<oracle::State> out;
  for (const auto& s : m.states) {
    out.push_back({s.energy - m.ground_energy, to_eigen(s.mu), to_eigen(s.m_bar), to_eigen(s.quadrupole)});
  }
  return out;
}

/// Largest componentwise deviation relative to the larger Frobenius norm.
inline double rel_max_diff(const std::vector<oracle::cplx>& a, const std::vector<oracle::cplx>& b) {
  double na = 0, nb = 0, d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  const double s = std::sqrt(std::max(na, nb));
  return s == 0 ? d : d / s;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0 : std::abs(a - b) / s;
}

}  // namespace support
