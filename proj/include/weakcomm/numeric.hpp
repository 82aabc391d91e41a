// Floating-point companions of the exact types, for analytic quantities
// (eigenvalue lists, spectral radius, exponentials).
#ifndef WEAKCOMM_NUMERIC_HPP
#define WEAKCOMM_NUMERIC_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "weakcomm/exact.hpp"
#include "weakcomm/poly.hpp"

namespace weakcomm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Non-convergence, overflow or non-finite input.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kClusterTol = 1e-8;
inline constexpr double kZeroRadius = 1e-8;

CMatrix to_cmatrix(const ExactMatrix& a);

/// Throws NumericError when an entry is NaN or infinite.
void require_finite(const CMatrix& a, const char* what);

struct SpectrumPoint {
  Complex value;
  int multiplicity;
};

/// Eigenvalues grouped into clusters. Distinct points are more than
/// cluster_tol apart; cluster_tol is absolute (already multiplied by the
/// matrix scale when produced by eigenvalues()).
struct SpectrumSet {
  std::vector<SpectrumPoint> points;
  double cluster_tol = kClusterTol;

  int total_multiplicity() const;
  double max_modulus() const;

  /// Deterministic clustering: single linkage, then centroids re-merged
  /// until they are pairwise more than tol apart. Output sorted by (re, im).
  static SpectrumSet cluster(const std::vector<Complex>& values, double tol);
};

/// Eigenvalues with multiplicity. Triangular input is read off the diagonal;
/// otherwise a complex Schur decomposition of the matrix scaled to unit
/// 2-norm is used and cluster_tol is applied on that scale.
SpectrumSet eigenvalues(const CMatrix& a, double cluster_tol = kClusterTol);

double spectral_radius(const CMatrix& a);

/// Pade scaling-and-squaring exponential.
CMatrix expm(const CMatrix& a);

/// Set comparison of the points with modulus above exclude_zero_radius;
/// multiplicities are ignored.
bool spectrum_compare(const SpectrumSet& s1, const SpectrumSet& s2,
                      double exclude_zero_radius = kZeroRadius);

/// Roots of a nonzero polynomial via its companion matrix.
std::vector<Complex> polynomial_roots(const ExactPoly& p);

/// max |root| of the squarefree part of charpoly(a). The roots of a
/// squarefree polynomial are simple, so this stays accurate for defective
/// matrices where a direct eigensolve loses digits to Jordan blocks.
double spectral_radius_exact(const ExactMatrix& a);

double frobenius_norm(const CMatrix& a);

}  // namespace weakcomm

#endif  // WEAKCOMM_NUMERIC_HPP
