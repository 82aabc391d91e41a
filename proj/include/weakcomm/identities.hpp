// Named identities and inequalities about weakly commuting pairs, each with
// its own hypothesis, checked on a concrete pair (a, b).
//
// Pair conventions (a, b) for the operator statements:
//   SPEC_*, KER_INCL  : a = T, b = N (N the nilpotent perturbation)
//   KRITERION_RANGE   : a = T, b = S
#ifndef WEAKCOMM_IDENTITIES_HPP
#define WEAKCOMM_IDENTITIES_HPP

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/exact.hpp"
#include "weakcomm/relations.hpp"

namespace weakcomm {

enum class IdentityId {
  L1_I_i, L1_I_ii, L1_I_iii,
  L1_II_i, L1_II_ii, L1_II_iii,
  L1_III_i, L1_III_ii, L1_III_iii,
  L1_IV_i, L1_IV_ii, L1_IV_iii,
  R_i, R_ii, R_iii, R_iv, R_v,
  NEWTON_R, NEWTON_L, BINOM, TELESCOPE, EXP_CORR,
  NIL_PROD, NIL_SUM, NIL_TELE,
  RAD_PROD, RAD_SUM, QUASI_CLOSURE,
  SPEC_INCL, SPEC_EQ_N2, SPEC_EQ_W, KER_INCL, KRITERION_RANGE,
};

/// Declared shape of an identity.
struct IdentitySpec {
  IdentityId id;
  std::string_view name;       ///< "L1.I.ii", "NEWTON_R", ...
  std::string_view hypothesis; ///< human-readable hypothesis
  bool takes_n;
  int n_min;
  int n_max;
  bool needs_lambda;
  bool needs_mu;
};

const std::vector<IdentitySpec>& identity_specs();
const IdentitySpec& identity_spec(IdentityId id);
std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

enum class Verdict { pass, fail, vacuous };
std::string_view verdict_name(Verdict v);

struct IdentityParams {
  std::optional<int> n;
  std::optional<GaussRational> lambda;
  std::optional<GaussRational> mu;
};

struct IdentityResult {
  IdentityId id;
  bool hypothesis_met = false;
  /// Conclusion evaluated (also when the hypothesis fails, for information).
  bool holds = false;
  Verdict verdict = Verdict::vacuous;
  /// Largest Frobenius norm among exact defects, or the numeric slack for
  /// tolerance-based identities.
  double residual = 0.0;
  /// First nonzero exact defect, when one exists.
  std::optional<ExactMatrix> defect;
  /// Relative Frobenius residual of the floating-point twin (EXP_CORR).
  std::optional<double> numeric_residual;
  /// R.i / R.ii: whether the shifted product lies in comm(a - lambda).
  std::optional<bool> membership;
  /// Sub-claim that failed, or extra information (e.g. "n=2 excluded").
  std::string detail;
  IdentityParams params;
};

/// Memoised products and flags of one pair; share it across many checks.
class PairContext {
public:
  PairContext(ExactMatrix a, ExactMatrix b);

  const ExactMatrix& a() const { return a_; }
  const ExactMatrix& b() const { return b_; }
  const ExactMatrix& ab() const { return ab_; }
  const ExactMatrix& ba() const { return ba_; }
  const ExactMatrix& sum() const { return sum_; }
  const RelationReport& report() const { return report_; }
  Index dim() const { return a_.rows(); }

  /// a^k, b^k, (a+b)^k with the zeroth power the identity.
  const ExactMatrix& a_pow(int k) const;
  const ExactMatrix& b_pow(int k) const;
  const ExactMatrix& sum_pow(int k) const;

  std::optional<int> nil_a() const;
  std::optional<int> nil_b() const;
  std::optional<int> nil_sum() const;

private:
  const ExactMatrix& power(std::deque<ExactMatrix>& cache, const ExactMatrix& base, int k) const;

  ExactMatrix a_, b_, ab_, ba_, sum_;
  RelationReport report_;
  // deque: references handed out stay valid while the cache grows.
  mutable std::deque<ExactMatrix> a_pows_, b_pows_, sum_pows_;
  mutable std::optional<std::optional<int>> nil_a_, nil_b_, nil_sum_;
};

struct CheckOptions {
  /// Negates every right-hand side and every boolean conclusion: a harness
  /// self-test that must produce failures.
  bool mutate = false;
  /// Relative tolerance of the EXP_CORR floating-point twin.
  double exp_rel_tol = 1e-10;
  /// Absolute slack of the spectral-radius inequalities.
  double radius_slack = 1e-8;
};

/// Throws std::invalid_argument on a missing required parameter or an n
/// outside the declared range.
IdentityResult check_identity(IdentityId id, const PairContext& ctx, const IdentityParams& params = {},
                              const CheckOptions& options = {});
IdentityResult check_identity(IdentityId id, const ExactMatrix& a, const ExactMatrix& b,
                              const IdentityParams& params = {}, const CheckOptions& options = {});

/// Binomial coefficient C(n, k) as a big integer (0 outside 0 <= k <= n).
BigInt binomial(int n, int k);

}  // namespace weakcomm

#endif  // WEAKCOMM_IDENTITIES_HPP
