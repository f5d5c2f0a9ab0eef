#pragma once

// Dense complex Cartesian tensors over 3D space, rank 0..6.
//
// Components are stored row-major with indices 0..2, so the flat offset of
// (i0, i1, ..., i_{r-1}) is ((i0*3 + i1)*3 + ...). A rotation R acts on every
// index: T'_{a b ...} = R_{a i} R_{b j} ... T_{i j ...}.

#include "chiraforce/errors.hpp"
#include "chiraforce/scalar.hpp"

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chiraforce {

inline constexpr int max_tensor_rank = 6;

template <class T>
using Vec3 = std::array<T, 3>;
using Vector3 = Vec3<cplx>;
using RealVector3 = std::array<double, 3>;

/// Proper rotation (or any real 3x3 matrix) stored row-major.
using Matrix3 = std::array<std::array<double, 3>, 3>;

constexpr std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

template <class T>
class CartesianTensor {
 public:
  using value_type = T;

  CartesianTensor() : CartesianTensor(0) {}

  explicit CartesianTensor(int rank, std::string unit_tag = {})
      : rank_(checked_rank(rank)), data_(pow3(rank), T{}), unit_tag_(std::move(unit_tag)) {}

  CartesianTensor(int rank, std::vector<T> components, std::string unit_tag = {})
      : rank_(checked_rank(rank)), data_(std::move(components)), unit_tag_(std::move(unit_tag)) {
    if (data_.size() != pow3(rank_)) {
      throw rank_error("rank-" + std::to_string(rank_) + " tensor needs " +
                       std::to_string(pow3(rank_)) + " components, got " +
                       std::to_string(data_.size()));
    }
  }

  static CartesianTensor scalar(T value) {
    CartesianTensor t(0);
    t.data_[0] = std::move(value);
    return t;
  }

  static CartesianTensor vector(const Vec3<T>& v) {
    return CartesianTensor(1, {v[0], v[1], v[2]});
  }

  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  const std::string& unit_tag() const { return unit_tag_; }
  void set_unit_tag(std::string tag) { unit_tag_ = std::move(tag); }

  std::span<const T> components() const { return data_; }
  std::span<T> components() { return data_; }

  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  T& at(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  const T& at(std::initializer_list<int> idx) const { return data_[offset(idx)]; }

  template <class... I>
  T& operator()(I... idx) {
    return at({static_cast<int>(idx)...});
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return at({static_cast<int>(idx)...});
  }

  std::size_t offset(std::initializer_list<int> idx) const {
    if (static_cast<int>(idx.size()) != rank_) {
      throw rank_error("index tuple of length " + std::to_string(idx.size()) +
                       " used on rank-" + std::to_string(rank_) + " tensor");
    }
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i > 2) throw rank_error("tensor index out of range 0..2");
      off = off * 3 + static_cast<std::size_t>(i);
    }
    return off;
  }

  CartesianTensor& operator+=(const CartesianTensor& o) {
    require_same_rank(o, "addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CartesianTensor& operator-=(const CartesianTensor& o) {
    require_same_rank(o, "subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CartesianTensor& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend CartesianTensor operator+(CartesianTensor a, const CartesianTensor& b) { return a += b; }
  friend CartesianTensor operator-(CartesianTensor a, const CartesianTensor& b) { return a -= b; }
  friend CartesianTensor operator*(CartesianTensor a, const T& s) { return a *= s; }
  friend CartesianTensor operator*(const T& s, CartesianTensor a) { return a *= s; }
  friend CartesianTensor operator-(CartesianTensor a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend bool operator==(const CartesianTensor& a, const CartesianTensor& b) {
    return a.rank_ == b.rank_ && a.data_ == b.data_;
  }

 private:
  static int checked_rank(int rank) {
    if (rank < 0 || rank > max_tensor_rank) {
      throw rank_error("tensor rank " + std::to_string(rank) + " outside 0.." +
                       std::to_string(max_tensor_rank));
    }
    return rank;
  }

  void require_same_rank(const CartesianTensor& o, const char* what) const {
    if (o.rank_ != rank_) {
      throw rank_error(std::string("rank mismatch in tensor ") + what + ": " +
                       std::to_string(rank_) + " vs " + std::to_string(o.rank_));
    }
  }

  int rank_;
  std::vector<T> data_;
  std::string unit_tag_;
};

using Tensor = CartesianTensor<cplx>;
using ExactTensor = CartesianTensor<exact_complex>;

template <class T = cplx>
CartesianTensor<T> kronecker_delta() {
  CartesianTensor<T> d(2, "1");
  for (int i = 0; i < 3; ++i) d(i, i) = T(1);
  return d;
}

/// Sign of the permutation (i, j, k) of (0, 1, 2); zero on repeated indices.
constexpr int levi_civita_sign(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

template <class T = cplx>
CartesianTensor<T> levi_civita() {
  CartesianTensor<T> e(3, "1");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) e(i, j, k) = T(levi_civita_sign(i, j, k));
  return e;
}

/// Component (i..., j...) = a(i...) * b(j...).
template <class T>
CartesianTensor<T> outer_product(const CartesianTensor<T>& a, const CartesianTensor<T>& b) {
  const int rank = a.rank() + b.rank();
  if (rank > max_tensor_rank) {
    throw rank_error("outer product of rank " + std::to_string(a.rank()) + " and rank " +
                     std::to_string(b.rank()) + " gives rank " + std::to_string(rank) +
                     ", above the maximum " + std::to_string(max_tensor_rank));
  }
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.components())
    for (const auto& y : b.components()) out.push_back(x * y);
  std::string tag;
  if (!a.unit_tag().empty() || !b.unit_tag().empty()) tag = a.unit_tag() + "*" + b.unit_tag();
  return CartesianTensor<T>(rank, std::move(out), std::move(tag));
}

/// Sum over all index tuples of a(idx) * b(idx). No conjugation.
template <class T>
T full_contraction(const CartesianTensor<T>& a, const CartesianTensor<T>& b) {
  if (a.rank() != b.rank()) {
    throw rank_error("full contraction needs equal ranks, got " + std::to_string(a.rank()) +
                     " and " + std::to_string(b.rank()));
  }
  T sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

template <class T>
T trace(const CartesianTensor<T>& t) {
  if (t.rank() != 2) throw rank_error("trace needs a rank-2 tensor");
  return t(0, 0) + t(1, 1) + t(2, 2);
}

template <class T>
CartesianTensor<T> conj(const CartesianTensor<T>& t) {
  CartesianTensor<T> out = t;
  for (auto& x : out.components()) x = scalar_ops<T>::conj(x);
  return out;
}

template <class T>
Vec3<T> conj(const Vec3<T>& v) {
  return {scalar_ops<T>::conj(v[0]), scalar_ops<T>::conj(v[1]), scalar_ops<T>::conj(v[2])};
}

/// Contract every index of t with one vector each, in order:
/// t_{i j ...} v0_i v1_j ... . Contracts the last index first.
template <class T>
T contract_with_vectors(const CartesianTensor<T>& t, std::span<const Vec3<T>> vectors) {
  if (static_cast<int>(vectors.size()) != t.rank()) {
    throw rank_error("rank-" + std::to_string(t.rank()) + " tensor contracted with " +
                     std::to_string(vectors.size()) + " vectors");
  }
  std::vector<T> work(t.components().begin(), t.components().end());
  std::size_t n = work.size();
  for (int m = t.rank() - 1; m >= 0; --m) {
    const auto& v = vectors[static_cast<std::size_t>(m)];
    n /= 3;
    for (std::size_t a = 0; a < n; ++a) {
      work[a] = work[3 * a] * v[0] + work[3 * a + 1] * v[1] + work[3 * a + 2] * v[2];
    }
  }
  return work[0];
}

template <class T>
T contract_with_vectors(const CartesianTensor<T>& t, std::initializer_list<Vec3<T>> vectors) {
  return contract_with_vectors(t, std::span<const Vec3<T>>(vectors.begin(), vectors.size()));
}

/// Apply R to every index of t using successive mode products.
template <class T>
CartesianTensor<T> rotated(const CartesianTensor<T>& t, const Matrix3& rotation) {
  using ops = scalar_ops<T>;
  std::array<std::array<typename ops::real_type, 3>, 3> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = ops::real_from_double(rotation[i][j]);

  std::vector<T> cur(t.components().begin(), t.components().end());
  std::vector<T> next(cur.size());
  const int rank = t.rank();
  for (int m = 0; m < rank; ++m) {
    const std::size_t outer = pow3(m);
    const std::size_t inner = pow3(rank - m - 1);
    for (std::size_t a = 0; a < outer; ++a) {
      for (int ip = 0; ip < 3; ++ip) {
        T* dst = next.data() + (a * 3 + static_cast<std::size_t>(ip)) * inner;
        for (std::size_t b = 0; b < inner; ++b) dst[b] = T{};
        for (int k = 0; k < 3; ++k) {
          const T* src = cur.data() + (a * 3 + static_cast<std::size_t>(k)) * inner;
          const T coeff = ops::from_real(r[ip][k]);
          for (std::size_t b = 0; b < inner; ++b) dst[b] += coeff * src[b];
        }
      }
    }
    std::swap(cur, next);
  }
  return CartesianTensor<T>(rank, std::move(cur), t.unit_tag());
}

template <class T>
CartesianTensor<exact_complex> to_exact(const CartesianTensor<T>& t)
  requires std::is_same_v<T, cplx>
{
  std::vector<exact_complex> out;
  out.reserve(t.size());
  for (const auto& z : t.components()) out.push_back(scalar_ops<exact_complex>::from_cplx(z));
  return CartesianTensor<exact_complex>(t.rank(), std::move(out), t.unit_tag());
}

inline Tensor to_double(const ExactTensor& t) {
  std::vector<cplx> out;
  out.reserve(t.size());
  for (const auto& z : t.components()) out.push_back(scalar_ops<exact_complex>::to_cplx(z));
  return Tensor(t.rank(), std::move(out), t.unit_tag());
}

inline Vec3<exact_complex> to_exact(const Vector3& v) {
  using ops = scalar_ops<exact_complex>;
  return {ops::from_cplx(v[0]), ops::from_cplx(v[1]), ops::from_cplx(v[2])};
}

/// Largest component modulus; zero for the zero tensor.
template <class T>
double max_abs(const CartesianTensor<T>& t) {
  double m = 0.0;
  for (const auto& z : t.components()) m = std::max(m, scalar_ops<T>::magnitude(z));
  return m;
}

/// Frobenius norm, evaluated in double precision.
template <class T>
double frobenius_norm(const CartesianTensor<T>& t) {
  double s = 0.0;
  for (const auto& z : t.components()) s += std::norm(scalar_ops<T>::to_cplx(z));
  return std::sqrt(s);
}

template <class T>
Vec3<T> to_vec(const RealVector3& v) {
  using ops = scalar_ops<T>;
  return {ops::from_real(ops::real_from_double(v[0])), ops::from_real(ops::real_from_double(v[1])),
          ops::from_real(ops::real_from_double(v[2]))};
}

}  // namespace chiraforce
