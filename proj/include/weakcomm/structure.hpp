// Kernel/range chains and the operator-perturbation statements, realised
// exactly at finite dimension.
//
// With T_[n] the restriction of T to R(T^n):
//   alpha(T_[n]) = dim(N(T) n R(T^n)),  beta(T_[n]) = rank T^n - rank T^(n+1).
// At finite dimension m_T = 0, the index is 0 and "semi-regular" means
// dis(T) = 0 (ranges are closed), which holds iff T is invertible.
#ifndef WEAKCOMM_STRUCTURE_HPP
#define WEAKCOMM_STRUCTURE_HPP

#include <vector>

#include "weakcomm/exact.hpp"
#include "weakcomm/poly.hpp"

namespace weakcomm {

struct ChainProfile {
  std::vector<Index> alpha_seq;  ///< n = 0..dim
  std::vector<Index> beta_seq;   ///< n = 0..dim
  std::vector<Index> kernel_dims;  ///< dim N(T^n), n = 0..dim+1
  std::vector<Index> range_dims;   ///< dim R(T^n), n = 0..dim+1
  int p = 0;    ///< ascent
  int q = 0;    ///< descent
  int dis = 0;  ///< degree of stable iteration
  int m_T = 0;  ///< essential degree
  Index index = 0;  ///< alpha - beta at m_T
};

ChainProfile chain_profile(const ExactMatrix& t);

struct RangeKernelCriterion {
  bool range_in_kernel;      ///< R(ST - TS) inside N(T)
  bool kernel_contains_range;  ///< R(T) inside N(ST - TS)
  bool ts_in_comm_t;         ///< relation flag TS in comm(T)
  bool st_in_comm_t;         ///< relation flag ST in comm(T)
};

RangeKernelCriterion range_kernel_criterion(const ExactMatrix& s, const ExactMatrix& t);

struct InvariantRestriction {
  bool hypothesis_met;  ///< ST in comm(T)
  bool invariant;       ///< S(M) inside M, M = N(T - lambda)
  bool restrictions_commute;
  Index m_dim;
  /// Second statement, when TS in comm(S) also holds: B = N(T + S - lambda).
  bool second_hypothesis_met;
  bool b_invariant;
  bool b_restrictions_commute;
  Index b_dim;
};

/// Throws std::invalid_argument for lambda = 0.
InvariantRestriction invariant_restriction(const ExactMatrix& s, const ExactMatrix& t, const GaussRational& lambda);

enum class KernelInclusionStatus { ok, not_nilpotent_of_order_p, t_not_in_comm_nt };

struct KernelInclusion {
  KernelInclusionStatus status;
  bool forward = false;  ///< N(T - lambda) inside N((T+N-lambda)^p)
  bool reverse_applicable = false;  ///< N in comm(TN)
  bool reverse = false;             ///< N(T+N-lambda) inside N((T-lambda)^p)
  bool square_zero = false;         ///< N^2 = 0
  bool reverse_square = false;      ///< N(T+N-lambda) inside N((T-lambda)^2)
};

/// Throws std::invalid_argument for lambda = 0 or p < 1; hypothesis
/// violations come back in `status`.
KernelInclusion kernel_inclusion(const ExactMatrix& t, const ExactMatrix& n, const GaussRational& lambda, int p);

struct SpectrumEquality {
  bool nonzero_equal;  ///< same nonzero eigenvalue set
  bool full_equal;     ///< same eigenvalue set, 0 included
  ExactPoly radical_a, radical_b;
  ExactPoly full_radical_a, full_radical_b;
};

SpectrumEquality nonzero_spectrum_equal_exact(const ExactMatrix& a, const ExactMatrix& b);

struct DisPropagation {
  bool hypothesis_met;  ///< S in comm_r(T) and dis(TS) = 0
  int dis_s, dis_t, dis_ts;
  bool holds;  ///< dis(S) = 0 and dis(T) <= 1
};

DisPropagation dis_propagation(const ExactMatrix& s, const ExactMatrix& t);

}  // namespace weakcomm

#endif  // WEAKCOMM_STRUCTURE_HPP
