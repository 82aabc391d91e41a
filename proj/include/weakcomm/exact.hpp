// Exact dense linear algebra over Q(i).
#ifndef WEAKCOMM_EXACT_HPP
#define WEAKCOMM_EXACT_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weakcomm/gauss_rational.hpp"

namespace weakcomm {

using Index = Eigen::Index;
using ExactMatrix = Eigen::Matrix<GaussRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<GaussRational, Eigen::Dynamic, 1>;

namespace detail {
/// dst = l * r, accumulating each entry in place.
void exact_product(ExactMatrix& dst, const ExactMatrix& l, const ExactMatrix& r);
}  // namespace detail

}  // namespace weakcomm

// Matrix-matrix products of ExactMatrix skip Eigen's generic kernels, which
// allocate a fresh big rational for every partial product.
namespace Eigen::internal {

template <>
struct generic_product_impl<weakcomm::ExactMatrix, weakcomm::ExactMatrix, DenseShape, DenseShape, GemmProduct>
    : generic_product_impl_base<weakcomm::ExactMatrix, weakcomm::ExactMatrix,
                                generic_product_impl<weakcomm::ExactMatrix, weakcomm::ExactMatrix, DenseShape,
                                                     DenseShape, GemmProduct>> {
  using M = weakcomm::ExactMatrix;
  using Scalar = weakcomm::GaussRational;

  template <class Dst>
  static void evalTo(Dst& dst, const M& l, const M& r) {
    M t;
    weakcomm::detail::exact_product(t, l, r);
    dst = t;
  }
  template <class Dst>
  static void addTo(Dst& dst, const M& l, const M& r) {
    M t;
    weakcomm::detail::exact_product(t, l, r);
    dst += t;
  }
  template <class Dst>
  static void subTo(Dst& dst, const M& l, const M& r) {
    M t;
    weakcomm::detail::exact_product(t, l, r);
    dst -= t;
  }
  template <class Dst>
  static void scaleAndAddTo(Dst& dst, const M& l, const M& r, const Scalar& alpha) {
    M t;
    weakcomm::detail::exact_product(t, l, r);
    dst += alpha * t;
  }
};

}  // namespace Eigen::internal

namespace weakcomm {

/// Exact test for the zero matrix (Eigen's isZero is fuzzy and needs abs()).
template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <class DerivedA, class DerivedB>
bool exactly_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline ExactMatrix identity(Index n) { return ExactMatrix::Identity(n, n); }
inline ExactMatrix zeros(Index n) { return ExactMatrix::Zero(n, n); }

enum class ArithOp { add, sub, mul };

/// Checked binary arithmetic; throws std::invalid_argument on shape mismatch.
ExactMatrix mat_arith(ArithOp op, const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix scale(const ExactMatrix& a, const GaussRational& s);

/// a^k with a^0 = I.
ExactMatrix mat_pow(const ExactMatrix& a, int k);

inline ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  return a * b - b * a;
}

/// Conjugate transpose.
ExactMatrix adjoint(const ExactMatrix& a);

double frobenius_norm(const ExactMatrix& a);

/// Linearly independent column vectors inside Q(i)^ambient_dim, stored in
/// reduced column-echelon form, so two bases of the same subspace compare
/// equal entry by entry.
class SubspaceBasis {
public:
  /// The zero subspace.
  explicit SubspaceBasis(Index ambient_dim);
  /// Span of the columns of `vectors` (dependent columns are dropped).
  static SubspaceBasis span(const ExactMatrix& vectors);
  static SubspaceBasis whole(Index ambient_dim);
  /// span{e_i : i in indices} (0-based).
  static SubspaceBasis coordinate(Index ambient_dim, const std::vector<Index>& indices);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return vectors_.cols(); }
  const ExactMatrix& vectors() const { return vectors_; }

  bool contains(const ExactVector& v) const;
  bool contains(const SubspaceBasis& other) const;
  /// Coordinates of v with respect to vectors(), or nullopt if v is outside.
  std::optional<ExactVector> coordinates(const ExactVector& v) const;

  SubspaceBasis intersect(const SubspaceBasis& other) const;
  SubspaceBasis sum(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_dim_ == b.ambient_dim_ && exactly_equal(a.vectors_, b.vectors_);
  }

private:
  SubspaceBasis(Index ambient_dim, ExactMatrix canonical)
      : ambient_dim_(ambient_dim), vectors_(std::move(canonical)) {}

  Index ambient_dim_;
  ExactMatrix vectors_;
};

/// A(U) for a subspace U of the domain of A.
SubspaceBasis image_under(const ExactMatrix& a, const SubspaceBasis& u);

struct RankKernel {
  Index rank;
  SubspaceBasis kernel;
  SubspaceBasis image;
};

/// Rank, null space and column space by fraction-free elimination.
RankKernel rank_kernel(const ExactMatrix& a);
Index rank(const ExactMatrix& a);
SubspaceBasis kernel(const ExactMatrix& a);
SubspaceBasis range(const ExactMatrix& a);

/// Least n with a^n = 0, or nullopt when a is not nilpotent.
std::optional<int> nilpotency_degree(const ExactMatrix& a);

/// Terminating exponential series of a nilpotent matrix; throws
/// std::domain_error otherwise.
ExactMatrix exp_exact_nilpotent(const ExactMatrix& a);

namespace detail {

/// Row echelon form produced by fraction-free (Bareiss) elimination after
/// clearing denominators row by row. Entries of `form` are Gaussian integers.
struct Echelon {
  ExactMatrix form;
  std::vector<Index> pivot_cols;
};

Echelon bareiss_echelon(ExactMatrix m);

/// Basis of {x : m x = 0}, one vector per free column.
ExactMatrix null_space(const ExactMatrix& m);

/// Reduced row echelon form (pivots normalised to 1), nonzero rows only.
ExactMatrix rref_rows(const ExactMatrix& m);

}  // namespace detail

}  // namespace weakcomm

#endif  // WEAKCOMM_EXACT_HPP
