#include "weakcomm/gauss_rational.hpp"

#include <cctype>
#include <ostream>

namespace weakcomm {

GaussRational GaussRational::fraction(long p, long q) {
  if (q == 0) throw std::domain_error("GaussRational: zero denominator");
  Rational r(p, q);
  return GaussRational(std::move(r));
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

void GaussRational::add_product(const GaussRational& x, const GaussRational& y) {
  if (x.is_zero() || y.is_zero()) return;
  thread_local Rational t;
  const bool xr = sgn(x.re_) != 0, xi = sgn(x.im_) != 0, yr = sgn(y.re_) != 0, yi = sgn(y.im_) != 0;
  if (xr && yr) {
    mpq_mul(t.get_mpq_t(), x.re_.get_mpq_t(), y.re_.get_mpq_t());
    re_ += t;
  }
  if (xi && yi) {
    mpq_mul(t.get_mpq_t(), x.im_.get_mpq_t(), y.im_.get_mpq_t());
    re_ -= t;
  }
  if (xr && yi) {
    mpq_mul(t.get_mpq_t(), x.re_.get_mpq_t(), y.im_.get_mpq_t());
    im_ += t;
  }
  if (xi && yr) {
    mpq_mul(t.get_mpq_t(), x.im_.get_mpq_t(), y.re_.get_mpq_t());
    im_ += t;
  }
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  const Rational n = o.norm2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return re_.get_str();
  std::string out;
  if (has_re) {
    out = re_.get_str();
    out += sgn(im_) > 0 ? "+" : "-";
    out += Rational(abs(im_)).get_str();
  } else {
    out = im_.get_str();
  }
  out += " i";
  return out;
}

namespace {

[[noreturn]] void bad_literal(const std::string& text) {
  throw std::invalid_argument("malformed scalar literal: '" + text + "'");
}

Rational parse_rational(const std::string& digits, const std::string& whole) {
  const auto slash = digits.find('/');
  auto is_digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!is_digits(digits)) bad_literal(whole);
    return Rational(BigInt(digits));
  }
  const std::string num = digits.substr(0, slash);
  const std::string den = digits.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) bad_literal(whole);
  BigInt d(den);
  if (d == 0) throw std::domain_error("zero denominator in literal '" + whole + "'");
  Rational r(BigInt(num), d);
  r.canonicalize();
  return r;
}

}  // namespace

GaussRational GaussRational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad_literal(text);

  Rational re(0), im(0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      bad_literal(text);
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) bad_literal(text);
    const bool imaginary = term.back() == 'i';
    if (imaginary) term.pop_back();
    Rational value = term.empty() ? Rational(imaginary ? 1 : 0) : parse_rational(term, text);
    if (term.empty() && !imaginary) bad_literal(text);
    if (sign < 0) value = -value;
    (imaginary ? im : re) += value;
    pos = end;
  }
  return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.to_string(); }

}  // namespace weakcomm
