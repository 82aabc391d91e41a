// Weighted shifts plus finite-rank parts on l^2, and their n x n sections.
//
// Coordinates are 1-based as in l^2(N). A down shift with weights w_k sends
// e_k to w_k e_(k+1), so its matrix has w_k at (k+1, k); an up shift puts w_k
// at (k, k+1); a diagonal term puts w_k at (k, k).
//
// Text form, one term per line, '#' starts a comment:
//   shift down harmonic offset=1 cycle=1      # w_k = 1/(k+1)
//   shift down harmonic offset=1 cycle=-1,0   # w_k = -1/(k+1) for odd k, else 0
//   shift up head=2,3 cycle=1                 # w = 2, 3, 1, 1, ...
//   entry 2 1 -1/2
#ifndef WEAKCOMM_SHIFTLAB_HPP
#define WEAKCOMM_SHIFTLAB_HPP

#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/exact.hpp"
#include "weakcomm/numeric.hpp"

namespace weakcomm {

enum class ShiftDirection { down, up, none };

/// w_k = head[k-1] for k <= |head|; afterwards c = cycle[(k-1) mod |cycle|]
/// and w_k = c / (k + offset) when harmonic, c otherwise. An empty cycle
/// gives zero weights past the head.
struct WeightRule {
  std::vector<GaussRational> head;
  std::vector<GaussRational> cycle;
  bool harmonic = false;
  int offset = 0;

  GaussRational weight(int k) const;
};

struct ShiftTerm {
  ShiftDirection direction = ShiftDirection::down;
  WeightRule weights;
};

struct FiniteRankEntry {
  int row;  ///< 1-based
  int col;  ///< 1-based
  GaussRational value;
};

struct LTwoOpSpec {
  std::vector<ShiftTerm> terms;
  std::vector<FiniteRankEntry> finite_rank;

  /// Largest coordinate touched by the finite-rank part (0 if none).
  int support() const;

  friend LTwoOpSpec operator+(const LTwoOpSpec& a, const LTwoOpSpec& b);

  std::string to_text() const;
  /// Throws std::invalid_argument on malformed text.
  static LTwoOpSpec parse(std::string_view text);
};

/// The weighted shift T x = (0, x1/2, x2/3, ...).
LTwoOpSpec exnilp_t();
/// N x = (0, -x1/2, 0, ...).
LTwoOpSpec exnilp_n();
/// Q x = (0, -x1/2, 0, -x3/4, 0, -x5/6, ...).
LTwoOpSpec exnilp_q();

/// Compression to the first n coordinates. Throws std::invalid_argument for
/// n < 1 or n < support().
ExactMatrix truncate(const LTwoOpSpec& spec, int n);

/// Kernel vectors of the section supported in the first n-1 coordinates.
/// The operator maps such vectors inside the first n coordinates, so these
/// are exact kernel vectors of the operator itself. Ambient dimension n.
/// Throws std::invalid_argument for n < support() + 1 or n < 2.
SubspaceBasis finite_support_kernel(const LTwoOpSpec& spec, int n);

/// True when both bases span the same subspace after padding with zeros.
bool same_finite_support_span(const SubspaceBasis& a, const SubspaceBasis& b);

struct ConvergenceRow {
  int n;
  SpectrumSet spectrum;
  double max_modulus;
};

/// Eigenvalue clusters of each section. Evidence only: sections of a
/// non-normal operator need not approximate its spectrum.
std::vector<ConvergenceRow> eigen_convergence(const LTwoOpSpec& spec, const std::vector<int>& n_list,
                                              double cluster_tol = kClusterTol);

/// The product chain TNT = NT^2 = NT = N^2T = NTN = TN^2 != T^2N on a pair of
/// sections.
struct ProductChainCheck {
  std::vector<std::string> names;  ///< "TNT", "NT^2", ..., "T^2N"
  std::vector<ExactMatrix> products;
  bool equalities_hold = false;  ///< first six all equal
  bool last_differs = false;     ///< T^2N differs from them
  bool holds() const { return equalities_hold && last_differs; }
};

ProductChainCheck product_chain(const ExactMatrix& t, const ExactMatrix& n);

}  // namespace weakcomm

#endif  // WEAKCOMM_SHIFTLAB_HPP
