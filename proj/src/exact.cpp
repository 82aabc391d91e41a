#include "weakcomm/exact.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace weakcomm {

namespace {

void require_same_shape(const ExactMatrix& a, const ExactMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
}

BigInt row_denominator_lcm(const ExactMatrix& m, Index row) {
  BigInt l = 1;
  for (Index j = 0; j < m.cols(); ++j) {
    const auto& z = m(row, j);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.im().get_den_mpz_t());
  }
  return l;
}

}  // namespace

ExactMatrix mat_arith(ArithOp op, const ExactMatrix& a, const ExactMatrix& b) {
  switch (op) {
    case ArithOp::add:
      require_same_shape(a, b, "add");
      return a + b;
    case ArithOp::sub:
      require_same_shape(a, b, "sub");
      return a - b;
    case ArithOp::mul:
      if (a.cols() != b.rows()) require_same_shape(a, b, "mul");
      return a * b;
  }
  throw std::invalid_argument("mat_arith: unknown op");
}

ExactMatrix scale(const ExactMatrix& a, const GaussRational& s) { return a * s; }

ExactMatrix mat_pow(const ExactMatrix& a, int k) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_pow: matrix is not square");
  if (k < 0) throw std::invalid_argument("mat_pow: negative exponent");
  ExactMatrix result = identity(a.rows());
  ExactMatrix base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

ExactMatrix adjoint(const ExactMatrix& a) {
  return a.transpose().unaryExpr([](const GaussRational& z) { return z.conj(); });
}

double frobenius_norm(const ExactMatrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) s += a(i, j).norm2().get_d();
  return std::sqrt(s);
}

namespace detail {

void exact_product(ExactMatrix& dst, const ExactMatrix& l, const ExactMatrix& r) {
  if (l.cols() != r.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
  dst = ExactMatrix::Zero(l.rows(), r.cols());
  for (Index j = 0; j < r.cols(); ++j)
    for (Index k = 0; k < l.cols(); ++k) {
      const GaussRational& y = r(k, j);
      if (y.is_zero()) continue;
      for (Index i = 0; i < l.rows(); ++i) dst(i, j).add_product(l(i, k), y);
    }
}

}  // namespace detail

namespace detail {

Echelon bareiss_echelon(ExactMatrix m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  for (Index i = 0; i < rows; ++i) {
    const BigInt l = row_denominator_lcm(m, i);
    if (l != 1) m.row(i) *= GaussRational(Rational(l));
  }

  Echelon out;
  GaussRational prev(1);
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = r;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const GaussRational p = m(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      const GaussRational f = m(i, c);
      for (Index j = c + 1; j < cols; ++j) {
        GaussRational v = p * m(i, j);
        if (!f.is_zero()) v -= f * m(r, j);
        v /= prev;
        assert(v.is_gaussian_integer());
        m(i, j) = std::move(v);
      }
      m(i, c) = GaussRational(0);
    }
    prev = p;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.form = std::move(m);
  return out;
}

namespace {

ExactMatrix null_space_from(const Echelon& e) {
  const Index cols = e.form.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  ExactMatrix basis = ExactMatrix::Zero(cols, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    ExactVector x = ExactVector::Zero(cols);
    x(free_cols[k]) = GaussRational(1);
    for (auto r = static_cast<Index>(e.pivot_cols.size()) - 1; r >= 0; --r) {
      const Index c = e.pivot_cols[static_cast<std::size_t>(r)];
      GaussRational s(0);
      for (Index j = c + 1; j < cols; ++j)
        if (!x(j).is_zero() && !e.form(r, j).is_zero()) s += e.form(r, j) * x(j);
      x(c) = -s / e.form(r, c);
    }
    basis.col(static_cast<Index>(k)) = x;
  }
  return basis;
}

}  // namespace

ExactMatrix null_space(const ExactMatrix& m) { return null_space_from(bareiss_echelon(m)); }

ExactMatrix rref_rows(const ExactMatrix& m) {
  Echelon e = bareiss_echelon(m);
  const auto rank = static_cast<Index>(e.pivot_cols.size());
  ExactMatrix r = e.form.topRows(rank);
  for (Index i = 0; i < rank; ++i) {
    const GaussRational p = r(i, e.pivot_cols[static_cast<std::size_t>(i)]);
    if (p != GaussRational(1)) r.row(i) /= p;
  }
  for (Index i = rank - 1; i >= 0; --i) {
    const Index c = e.pivot_cols[static_cast<std::size_t>(i)];
    for (Index k = 0; k < i; ++k) {
      const GaussRational f = r(k, c);
      if (!f.is_zero()) r.row(k) -= f * r.row(i);
    }
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis::SubspaceBasis(Index ambient_dim)
    : ambient_dim_(ambient_dim), vectors_(ExactMatrix::Zero(ambient_dim, 0)) {
  if (ambient_dim < 1) throw std::invalid_argument("SubspaceBasis: ambient dimension must be >= 1");
}

SubspaceBasis SubspaceBasis::span(const ExactMatrix& vectors) {
  if (vectors.rows() < 1) throw std::invalid_argument("SubspaceBasis: ambient dimension must be >= 1");
  if (vectors.cols() == 0) return SubspaceBasis(vectors.rows());
  ExactMatrix canonical = detail::rref_rows(vectors.transpose()).transpose();
  return {vectors.rows(), std::move(canonical)};
}

SubspaceBasis SubspaceBasis::whole(Index ambient_dim) { return span(identity(ambient_dim)); }

SubspaceBasis SubspaceBasis::coordinate(Index ambient_dim, const std::vector<Index>& indices) {
  ExactMatrix v = ExactMatrix::Zero(ambient_dim, static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= ambient_dim)
      throw std::invalid_argument("SubspaceBasis::coordinate: index out of range");
    v(indices[k], static_cast<Index>(k)) = GaussRational(1);
  }
  return span(v);
}

std::optional<ExactVector> SubspaceBasis::coordinates(const ExactVector& v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("SubspaceBasis: dimension mismatch");
  // Reduced column-echelon form: column j has a 1 in its pivot row and every
  // other basis vector vanishes there, so coordinates are read off directly.
  ExactVector x(dim());
  for (Index j = 0; j < dim(); ++j) {
    Index p = 0;
    while (vectors_(p, j).is_zero()) ++p;
    x(j) = v(p);
  }
  if (!exactly_equal(vectors_ * x, v)) return std::nullopt;
  return x;
}

bool SubspaceBasis::contains(const ExactVector& v) const { return coordinates(v).has_value(); }

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("SubspaceBasis: dimension mismatch");
  if (other.dim() > dim()) return false;
  for (Index j = 0; j < other.dim(); ++j)
    if (!contains(ExactVector(other.vectors_.col(j)))) return false;
  return true;
}

SubspaceBasis SubspaceBasis::intersect(const SubspaceBasis& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("SubspaceBasis: dimension mismatch");
  if (dim() == 0 || other.dim() == 0) return SubspaceBasis(ambient_dim_);
  ExactMatrix joined(ambient_dim_, dim() + other.dim());
  joined << vectors_, -other.vectors_;
  const ExactMatrix k = detail::null_space(joined);
  if (k.cols() == 0) return SubspaceBasis(ambient_dim_);
  return span(vectors_ * k.topRows(dim()));
}

SubspaceBasis SubspaceBasis::sum(const SubspaceBasis& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("SubspaceBasis: dimension mismatch");
  ExactMatrix joined(ambient_dim_, dim() + other.dim());
  joined << vectors_, other.vectors_;
  return span(joined);
}

SubspaceBasis image_under(const ExactMatrix& a, const SubspaceBasis& u) {
  if (a.cols() != u.ambient_dim()) throw std::invalid_argument("image_under: dimension mismatch");
  if (u.dim() == 0) return SubspaceBasis(a.rows());
  return SubspaceBasis::span(a * u.vectors());
}

// ---------------------------------------------------------------------------

RankKernel rank_kernel(const ExactMatrix& a) {
  const detail::Echelon e = detail::bareiss_echelon(a);
  ExactMatrix image_cols(a.rows(), static_cast<Index>(e.pivot_cols.size()));
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
    image_cols.col(static_cast<Index>(k)) = a.col(e.pivot_cols[k]);
  return {static_cast<Index>(e.pivot_cols.size()),
          SubspaceBasis::span(detail::null_space_from(e)),
          SubspaceBasis::span(image_cols)};
}

Index rank(const ExactMatrix& a) {
  return static_cast<Index>(detail::bareiss_echelon(a).pivot_cols.size());
}

SubspaceBasis kernel(const ExactMatrix& a) {
  return SubspaceBasis::span(detail::null_space(a));
}

SubspaceBasis range(const ExactMatrix& a) { return SubspaceBasis::span(a); }

std::optional<int> nilpotency_degree(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("nilpotency_degree: matrix is not square");
  ExactMatrix p = a;
  for (int n = 1; n <= a.rows(); ++n) {
    if (is_zero(p)) return n;
    if (n < a.rows()) p = p * a;
  }
  return std::nullopt;
}

ExactMatrix exp_exact_nilpotent(const ExactMatrix& a) {
  const auto d = nilpotency_degree(a);
  if (!d) throw std::domain_error("exp_exact_nilpotent: matrix is not nilpotent");
  ExactMatrix sum = identity(a.rows());
  ExactMatrix term = identity(a.rows());
  for (int k = 1; k < *d; ++k) {
    term = (term * a) / GaussRational(k);
    sum += term;
  }
  return sum;
}

}  // namespace weakcomm
