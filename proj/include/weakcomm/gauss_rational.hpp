// Exact complex scalars with rational real and imaginary parts.
#ifndef WEAKCOMM_GAUSS_RATIONAL_HPP
#define WEAKCOMM_GAUSS_RATIONAL_HPP

#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <Eigen/Core>

namespace weakcomm {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Element of Q(i). Both parts are kept canonical (lowest terms, positive
/// denominator), so structural equality is value equality.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(int v) : re_(v) {}                  // NOLINT(google-explicit-constructor)
  GaussRational(long v) : re_(v) {}                 // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// p/q with q != 0.
  static GaussRational fraction(long p, long q);
  static GaussRational imag_unit() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_gaussian_integer() const {
    return re_.get_den() == 1 && im_.get_den() == 1;
  }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  /// *this += x * y without temporaries for the common real case.
  void add_product(const GaussRational& x, const GaussRational& y);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend GaussRational operator+(const GaussRational& a) { return a; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Lexicographic (re, im) order; used only to make searches deterministic.
  friend std::strong_ordering lex_compare(const GaussRational& a, const GaussRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Literal form: "p/q", "r/s i", "p/q+r/s i".
  std::string to_string() const;
  /// Inverse of to_string; also accepts "i", "-2i", "1/2 + 3i", "3/4-i".
  static GaussRational parse(const std::string& text);

private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

}  // namespace weakcomm

namespace Eigen {

// Exact scalar: no epsilon, everything is compared for equality.
template <>
struct NumTraits<weakcomm::GaussRational> : GenericNumTraits<weakcomm::GaussRational> {
  using Real = weakcomm::GaussRational;
  using NonInteger = weakcomm::GaussRational;
  using Nested = weakcomm::GaussRational;
  using Literal = weakcomm::GaussRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  static inline int max_digits10() { return 0; }
};

}  // namespace Eigen

#endif  // WEAKCOMM_GAUSS_RATIONAL_HPP
