#pragma once

// Scalar types shared by the tensor layer.
//
// Two component types are supported: std::complex<double> for ordinary
// numerics, and exact_complex (a pair of arbitrary precision rationals) for
// the exact vanishing checks. Generic code goes through scalar_ops<T>.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

namespace chiraforce {

using cplx = std::complex<double>;
using rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
class exact_complex {
 public:
  exact_complex() = default;
  exact_complex(rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
  exact_complex(rational re, rational im) : re_(std::move(re)), im_(std::move(im)) {}
  exact_complex(int re) : re_(re) {}  // NOLINT(implicit)

  const rational& real() const { return re_; }
  const rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }

  exact_complex& operator+=(const exact_complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  exact_complex& operator-=(const exact_complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  exact_complex& operator*=(const exact_complex& o) {
    rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  exact_complex& operator/=(const rational& d) {
    re_ /= d;
    im_ /= d;
    return *this;
  }

  friend exact_complex operator+(exact_complex a, const exact_complex& b) { return a += b; }
  friend exact_complex operator-(exact_complex a, const exact_complex& b) { return a -= b; }
  friend exact_complex operator*(exact_complex a, const exact_complex& b) { return a *= b; }
  friend exact_complex operator/(exact_complex a, const rational& d) { return a /= d; }
  friend exact_complex operator-(const exact_complex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const exact_complex& a, const exact_complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const exact_complex& z) {
    return os << '(' << z.re_ << ',' << z.im_ << ')';
  }

 private:
  rational re_{0};
  rational im_{0};
};

template <class T>
struct scalar_ops;

template <>
struct scalar_ops<cplx> {
  using real_type = double;
  static constexpr bool is_exact = false;

  static cplx from_real(double x) { return {x, 0.0}; }
  static cplx from_parts(double re, double im) { return {re, im}; }
  static double real_from_double(double x) { return x; }
  static cplx from_cplx(const cplx& z) { return z; }
  static cplx conj(const cplx& z) { return std::conj(z); }
  static double re(const cplx& z) { return z.real(); }
  static double im(const cplx& z) { return z.imag(); }
  static cplx imag_unit() { return {0.0, 1.0}; }
  static cplx to_cplx(const cplx& z) { return z; }
  static double to_double(double x) { return x; }
  static double magnitude(const cplx& z) { return std::abs(z); }
};

template <>
struct scalar_ops<exact_complex> {
  using real_type = rational;
  static constexpr bool is_exact = true;

  static exact_complex from_real(const rational& x) { return {x, 0}; }
  static exact_complex from_parts(const rational& re, const rational& im) { return {re, im}; }
  // Every finite double is a dyadic rational, so this conversion is lossless.
  static rational real_from_double(double x) { return rational(x); }
  static exact_complex from_cplx(const cplx& z) {
    return {rational(z.real()), rational(z.imag())};
  }
  static exact_complex conj(const exact_complex& z) { return {z.real(), -z.imag()}; }
  static const rational& re(const exact_complex& z) { return z.real(); }
  static const rational& im(const exact_complex& z) { return z.imag(); }
  static exact_complex imag_unit() { return {0, 1}; }
  static cplx to_cplx(const exact_complex& z) {
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
  }
  static double to_double(const rational& x) { return x.convert_to<double>(); }
  static double magnitude(const exact_complex& z) { return std::abs(to_cplx(z)); }
};

inline std::string to_string(const rational& q) {
  return q.str();
}

}  // namespace chiraforce
