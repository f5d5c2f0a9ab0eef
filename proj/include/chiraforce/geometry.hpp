#pragma once

// Small real/complex 3-vector helpers, rotation matrices and the uniform
// SO(3) sampler used by the Monte Carlo averages.

#include "chiraforce/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace chiraforce {

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T, class S>
Vec3<T> scaled(const Vec3<T>& a, const S& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

template <class T>
Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline double norm(const RealVector3& v) {
  return std::sqrt(dot(v, v));
}

/// sqrt(sum |v_i|^2) for a complex vector.
inline double norm(const Vector3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

inline RealVector3 normalized(const RealVector3& v) {
  return scaled(v, 1.0 / norm(v));
}

inline Vector3 complexified(const RealVector3& v) {
  return {cplx(v[0]), cplx(v[1]), cplx(v[2])};
}

inline double max_abs_diff(const Vector3& a, const Vector3& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Matrix3 identity_matrix() {
  return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline Matrix3 transpose(const Matrix3& m) {
  Matrix3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

template <class T>
Vec3<T> mat_vec(const Matrix3& m, const Vec3<T>& v) {
  Vec3<T> out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

struct Quaternion {
  double w, x, y, z;
};

/// Rotation matrix of a unit quaternion.
inline Matrix3 to_matrix(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

/// Rotation by `angle` about the unit vector `axis` (right-hand rule).
inline Matrix3 axis_angle(const RealVector3& axis, double angle) {
  const RealVector3 u = normalized(axis);
  const double s = std::sin(angle / 2);
  return to_matrix({std::cos(angle / 2), u[0] * s, u[1] * s, u[2] * s});
}

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of Monte Carlo chunk `chunk` under `master_seed`. Chunks are fixed
/// blocks of samples, so results do not depend on how many workers run them.
constexpr std::uint64_t chunk_seed(std::uint64_t master_seed, std::uint64_t chunk) {
  return splitmix64(splitmix64(master_seed) ^ (0xD1B54A32D192ED03ULL * (chunk + 1)));
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Haar-uniform rotation from three uniforms (Shoemake's subgroup
/// algorithm): q = (sqrt(1-u1) sin 2πu2, sqrt(1-u1) cos 2πu2,
/// sqrt(u1) sin 2πu3, sqrt(u1) cos 2πu3) is uniform on S^3, and the
/// double cover S^3 -> SO(3) pushes it forward to the Haar measure.
template <class Engine>
Matrix3 uniform_rotation(Engine& rng) {
  const double u1 = unit_interval(rng());
  const double u2 = unit_interval(rng());
  const double u3 = unit_interval(rng());
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double t2 = 2.0 * std::numbers::pi * u2;
  const double t3 = 2.0 * std::numbers::pi * u3;
  return to_matrix({b * std::cos(t3), a * std::sin(t2), a * std::cos(t2), b * std::sin(t3)});
}

}  // namespace chiraforce
