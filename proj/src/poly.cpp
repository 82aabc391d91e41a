#include "weakcomm/poly.hpp"

#include <stdexcept>

namespace weakcomm {

ExactPoly::ExactPoly(std::vector<GaussRational> ascending) : coeffs_(std::move(ascending)) { trim(); }

ExactPoly ExactPoly::monomial(GaussRational c, int degree) {
  if (degree < 0) throw std::invalid_argument("ExactPoly::monomial: negative degree");
  std::vector<GaussRational> v(static_cast<std::size_t>(degree) + 1, GaussRational(0));
  v.back() = std::move(c);
  return ExactPoly(std::move(v));
}

void ExactPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussRational ExactPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return GaussRational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

ExactPoly ExactPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<GaussRational> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d.push_back(coeffs_[i] * GaussRational(static_cast<long>(i)));
  return ExactPoly(std::move(d));
}

ExactPoly ExactPoly::monic() const {
  if (is_zero()) return {};
  const GaussRational lead = leading();
  std::vector<GaussRational> m = coeffs_;
  for (auto& c : m) c /= lead;
  return ExactPoly(std::move(m));
}

GaussRational ExactPoly::operator()(const GaussRational& x) const {
  GaussRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ExactMatrix ExactPoly::operator()(const ExactMatrix& a) const {
  if (a.rows() != a.cols()) throw std::invalid_argument("ExactPoly: evaluation at a non-square matrix");
  ExactMatrix acc = zeros(a.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * a;
    acc.diagonal().array() += *it;
  }
  return acc;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  std::vector<GaussRational> s(std::max(a.coeffs_.size(), b.coeffs_.size()), GaussRational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) s[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) s[i] += b.coeffs_[i];
  return ExactPoly(std::move(s));
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  std::vector<GaussRational> s(std::max(a.coeffs_.size(), b.coeffs_.size()), GaussRational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) s[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) s[i] -= b.coeffs_[i];
  return ExactPoly(std::move(s));
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRational> p(a.coeffs_.size() + b.coeffs_.size() - 1, GaussRational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ExactPoly(std::move(p));
}

namespace {

std::string coefficient_text(const GaussRational& c) {
  return c.is_real() ? c.to_string() : "(" + c.to_string() + ")";
}

}  // namespace

std::string ExactPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    GaussRational c = coeff(d);
    if (c.is_zero()) continue;
    const bool negative_real = c.is_real() && sgn(c.re()) < 0;
    if (out.empty()) {
      if (negative_real) out += "-";
    } else {
      out += negative_real ? " - " : " + ";
    }
    if (negative_real) c = -c;
    const bool unit = c == GaussRational(1);
    if (d == 0) {
      out += coefficient_text(c);
      continue;
    }
    if (!unit) out += coefficient_text(c) + "*";
    out += var;
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
  if (a.degree() < b.degree()) return {ExactPoly(), a};
  std::vector<GaussRational> rem = a.coeffs();
  std::vector<GaussRational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), GaussRational(0));
  const GaussRational& lead = b.leading();
  const auto bd = static_cast<std::size_t>(b.degree());
  for (auto k = static_cast<std::ptrdiff_t>(quo.size()) - 1; k >= 0; --k) {
    const auto ku = static_cast<std::size_t>(k);
    const GaussRational q = rem[ku + bd] / lead;
    quo[ku] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j <= bd; ++j) rem[ku + j] -= q * b.coeffs()[j];
  }
  rem.resize(bd);
  return {ExactPoly(std::move(quo)), ExactPoly(std::move(rem))};
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly x = a.monic();
  ExactPoly y = b.monic();
  while (!y.is_zero()) {
    ExactPoly r = divmod(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

bool divides(const ExactPoly& d, const ExactPoly& p) {
  if (d.is_zero()) return p.is_zero();
  return divmod(p, d).second.is_zero();
}

ExactPoly squarefree_part(const ExactPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  if (p.degree() == 0) return ExactPoly::constant(GaussRational(1));
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

ExactPoly poly_radical_nonzero(const ExactPoly& p) {
  if (p.is_zero()) throw std::domain_error("poly_radical_nonzero: zero polynomial");
  ExactPoly r = squarefree_part(p);
  // Squarefree, so x divides at most once.
  if (r.coeff(0).is_zero()) r = divmod(r, ExactPoly::x()).first;
  return r;
}

ExactPoly charpoly(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: matrix is not square");
  const Index n = a.rows();
  // Descending coefficients of det(xI - A_r) for the leading r x r block.
  std::vector<GaussRational> p{GaussRational(1)};
  for (Index r = 1; r <= n; ++r) {
    const Index m = r - 1;
    std::vector<GaussRational> t;
    t.reserve(static_cast<std::size_t>(r) + 1);
    t.emplace_back(1);
    t.push_back(-a(m, m));
    if (m > 0) {
      const auto lead = a.topLeftCorner(m, m);
      const auto row = a.row(m).head(m);
      ExactVector v = a.col(m).head(m);
      for (Index k = 1; k < r; ++k) {
        GaussRational s(0);
        for (Index j = 0; j < m; ++j)
          if (!row(j).is_zero() && !v(j).is_zero()) s += row(j) * v(j);
        t.push_back(-s);
        if (k + 1 < r) v = lead * v;
      }
    }
    std::vector<GaussRational> next(static_cast<std::size_t>(r) + 1, GaussRational(0));
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j < p.size() && j <= i; ++j)
        if (!p[j].is_zero() && !t[i - j].is_zero()) next[i] += t[i - j] * p[j];
    p = std::move(next);
  }
  return ExactPoly(std::vector<GaussRational>(p.rbegin(), p.rend()));
}

}  // namespace weakcomm
