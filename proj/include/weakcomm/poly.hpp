// Univariate polynomials over Q(i) and characteristic polynomials.
#ifndef WEAKCOMM_POLY_HPP
#define WEAKCOMM_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "weakcomm/exact.hpp"

namespace weakcomm {

/// Coefficients in ascending degree with no stored leading zeros; the zero
/// polynomial has no coefficients and degree -1.
class ExactPoly {
public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<GaussRational> ascending);

  static ExactPoly constant(GaussRational c) { return ExactPoly({std::move(c)}); }
  /// c * x^degree
  static ExactPoly monomial(GaussRational c, int degree);
  static ExactPoly x() { return monomial(GaussRational(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && leading() == GaussRational(1); }
  const std::vector<GaussRational>& coeffs() const { return coeffs_; }
  const GaussRational& leading() const { return coeffs_.back(); }
  /// Coefficient of x^i (zero beyond the degree).
  GaussRational coeff(int i) const;

  ExactPoly derivative() const;
  ExactPoly monic() const;

  GaussRational operator()(const GaussRational& x) const;
  /// Horner evaluation at a square matrix.
  ExactMatrix operator()(const ExactMatrix& a) const;

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// "x^2 - 1", "x^3 + (1/2+1 i)x", "0".
  std::string to_string(char var = 'x') const;

private:
  void trim();
  std::vector<GaussRational> coeffs_;
};

/// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);

bool divides(const ExactPoly& d, const ExactPoly& p);

/// Monic p / gcd(p, p'): one factor per distinct root.
ExactPoly squarefree_part(const ExactPoly& p);

/// Squarefree part with every factor x removed. Two matrices have the same
/// set of nonzero eigenvalues iff their characteristic polynomials give the
/// same result here. Throws std::domain_error on the zero polynomial.
ExactPoly poly_radical_nonzero(const ExactPoly& p);

/// det(xI - A), computed by Berkowitz's division-free recurrence.
ExactPoly charpoly(const ExactMatrix& a);

}  // namespace weakcomm

#endif  // WEAKCOMM_POLY_HPP
