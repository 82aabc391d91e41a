#include "weakcomm/identities.hpp"

#include <algorithm>
#include <stdexcept>

#include "weakcomm/numeric.hpp"
#include "weakcomm/poly.hpp"

namespace weakcomm {

// ---------------------------------------------------------------------------
// Declarations

const std::vector<IdentitySpec>& identity_specs() {
  using I = IdentityId;
  static const std::vector<IdentitySpec> specs = {
      {I::L1_I_i, "L1.I.i", "ab in comm(a)", true, 1, 8, false, false},
      {I::L1_I_ii, "L1.I.ii", "ab in comm(a)", true, 2, 8, false, false},
      {I::L1_I_iii, "L1.I.iii", "ab in comm(a)", false, 0, 0, false, false},
      {I::L1_II_i, "L1.II.i", "ab in comm(b)", true, 1, 8, false, false},
      {I::L1_II_ii, "L1.II.ii", "ab in comm(b)", true, 2, 8, false, false},
      {I::L1_II_iii, "L1.II.iii", "ab in comm(b)", false, 0, 0, false, false},
      {I::L1_III_i, "L1.III.i", "b in comm_l(a)", true, 1, 8, false, false},
      {I::L1_III_ii, "L1.III.ii", "b in comm_l(a)", true, 2, 8, false, false},
      {I::L1_III_iii, "L1.III.iii", "b in comm_l(a)", false, 0, 0, false, false},
      {I::L1_IV_i, "L1.IV.i", "b in comm_r(a)", true, 1, 8, false, false},
      {I::L1_IV_ii, "L1.IV.ii", "b in comm_r(a)", true, 2, 8, false, false},
      {I::L1_IV_iii, "L1.IV.iii", "b in comm_r(a)", false, 0, 0, false, false},
      {I::R_i, "R.i", "ab in comm(a)", false, 0, 0, true, true},
      {I::R_ii, "R.ii", "ba in comm(a)", false, 0, 0, true, true},
      {I::R_iii, "R.iii", "b in comm_w(a)", true, 1, 8, false, false},
      {I::R_iv, "R.iv", "b in comm_l(a) or b in comm_r(a)", false, 0, 0, false, false},
      {I::R_v, "R.v", "aba = a^2 b = b a^2", true, 2, 8, false, false},
      {I::NEWTON_R, "NEWTON_R", "b in comm_r(a)", true, 1, 8, false, false},
      {I::NEWTON_L, "NEWTON_L", "b in comm_l(a)", true, 1, 8, false, false},
      {I::BINOM, "BINOM", "b in comm_w(a), n != 2", true, 1, 8, false, false},
      {I::TELESCOPE, "TELESCOPE", "b in comm_w(a), n != 2", true, 1, 8, false, false},
      {I::EXP_CORR, "EXP_CORR", "b in comm_w(a)", false, 0, 0, false, false},
      {I::NIL_PROD, "NIL_PROD", "a or b nilpotent, ab or ba in comm(a) u comm(b)", false, 0, 0, false, false},
      {I::NIL_SUM, "NIL_SUM", "a, b nilpotent, b in comm_l(a) u comm_r(a)", false, 0, 0, false, false},
      {I::NIL_TELE, "NIL_TELE", "b in comm_l(a) n comm(a^n), or a in comm_r(b) n comm(b^n)", false, 0, 0, false,
       false},
      {I::RAD_PROD, "RAD_PROD", "ab in comm(a) u comm(b)", false, 0, 0, false, false},
      {I::RAD_SUM, "RAD_SUM", "b in comm_l(a) u comm_r(a)", false, 0, 0, false, false},
      {I::QUASI_CLOSURE, "QUASI_CLOSURE",
       "a or b nilpotent with ab in comm(a) u comm(b); or a, b nilpotent with b in comm_l(a) u comm_r(a)", false, 0,
       0, false, false},
      {I::SPEC_INCL, "SPEC_INCL", "N nilpotent, T in comm(NT)", false, 0, 0, false, false},
      {I::SPEC_EQ_N2, "SPEC_EQ_N2", "N nilpotent, and NT in comm(T) with N^2 = 0 or N in comm_r(T)", false, 0, 0,
       false, false},
      {I::SPEC_EQ_W, "SPEC_EQ_W", "N nilpotent, N in comm_w(T)", false, 0, 0, false, false},
      {I::KER_INCL, "KER_INCL", "N nilpotent, T in comm(NT), lambda != 0", false, 0, 0, true, false},
      {I::KRITERION_RANGE, "KRITERION_RANGE", "none", false, 0, 0, false, false},
  };
  return specs;
}

const IdentitySpec& identity_spec(IdentityId id) {
  for (const auto& s : identity_specs())
    if (s.id == id) return s;
  throw std::invalid_argument("identity_spec: unknown identity");
}

std::string_view identity_name(IdentityId id) { return identity_spec(id).name; }

std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (const auto& s : identity_specs())
    if (s.name == name) return s.id;
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// ---------------------------------------------------------------------------
// PairContext

PairContext::PairContext(ExactMatrix a, ExactMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != a_.cols() || b_.rows() != b_.cols() || a_.rows() != b_.rows())
    throw std::invalid_argument("PairContext: dimension mismatch");
  ab_ = a_ * b_;
  ba_ = b_ * a_;
  sum_ = a_ + b_;
  report_ = relation_check(a_, b_);
}

const ExactMatrix& PairContext::power(std::deque<ExactMatrix>& cache, const ExactMatrix& base, int k) const {
  if (k < 0) throw std::invalid_argument("PairContext: negative exponent");
  if (cache.empty()) cache.push_back(identity(base.rows()));
  while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
  return cache[static_cast<std::size_t>(k)];
}

const ExactMatrix& PairContext::a_pow(int k) const { return power(a_pows_, a_, k); }
const ExactMatrix& PairContext::b_pow(int k) const { return power(b_pows_, b_, k); }
const ExactMatrix& PairContext::sum_pow(int k) const { return power(sum_pows_, sum_, k); }

namespace {

std::optional<int> degree_from_powers(const PairContext& ctx, const ExactMatrix& (PairContext::*pow)(int) const) {
  for (int k = 1; k <= ctx.dim(); ++k)
    if (is_zero((ctx.*pow)(k))) return k;
  return std::nullopt;
}

}  // namespace

std::optional<int> PairContext::nil_a() const {
  if (!nil_a_) nil_a_ = degree_from_powers(*this, &PairContext::a_pow);
  return *nil_a_;
}
std::optional<int> PairContext::nil_b() const {
  if (!nil_b_) nil_b_ = degree_from_powers(*this, &PairContext::b_pow);
  return *nil_b_;
}
std::optional<int> PairContext::nil_sum() const {
  if (!nil_sum_) nil_sum_ = degree_from_powers(*this, &PairContext::sum_pow);
  return *nil_sum_;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

/// Accumulates sub-claims of one identity.
class Checker {
public:
  explicit Checker(bool mutate) : mutate_(mutate) {}

  void equal(const ExactMatrix& lhs, const ExactMatrix& rhs, const std::string& what) {
    ExactMatrix d = mutate_ ? ExactMatrix(lhs + rhs) : ExactMatrix(lhs - rhs);
    if (is_zero(d)) return;
    residual_ = std::max(residual_, frobenius_norm(d));
    if (!defect_) defect_ = std::move(d);
    fail(what);
  }

  void commutes(const ExactMatrix& x, const ExactMatrix& y, const std::string& what) {
    equal(x * y, y * x, what);
  }

  void claim(bool c, const std::string& what) {
    if (mutate_) c = !c;
    if (!c) fail(what);
  }

  /// lhs <= rhs, with the overshoot kept as residual.
  void at_most(double lhs, double rhs, const std::string& what) {
    residual_ = std::max(residual_, std::max(0.0, lhs - rhs));
    claim(lhs <= rhs, what);
  }

  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }

  bool ok() const { return ok_; }

  IdentityResult finish(IdentityId id, bool hypothesis_met, const IdentityParams& params) {
    IdentityResult r;
    r.id = id;
    r.hypothesis_met = hypothesis_met;
    r.holds = ok_;
    r.verdict = !hypothesis_met ? Verdict::vacuous : (ok_ ? Verdict::pass : Verdict::fail);
    r.residual = residual_;
    r.defect = std::move(defect_);
    r.detail = failure_.empty() ? notes_ : (notes_.empty() ? failure_ : failure_ + "; " + notes_);
    r.params = params;
    return r;
  }

private:
  void fail(const std::string& what) {
    if (ok_) failure_ = what;
    ok_ = false;
  }

  bool mutate_;
  bool ok_ = true;
  double residual_ = 0.0;
  std::optional<ExactMatrix> defect_;
  std::string failure_;
  std::string notes_;
};

GaussRational coeff(const BigInt& c) { return GaussRational(Rational(c)); }

std::string nstr(const char* fmt, int n) {
  std::string s(fmt);
  const auto pos = s.find("%n");
  if (pos != std::string::npos) s.replace(pos, 2, std::to_string(n));
  return s;
}

int resolve_n(const IdentitySpec& spec, const IdentityParams& params, int fallback) {
  const int n = params.n.value_or(fallback);
  if (n < spec.n_min || n > spec.n_max)
    throw std::invalid_argument(std::string(spec.name) + ": n=" + std::to_string(n) + " outside [" +
                                std::to_string(spec.n_min) + ", " + std::to_string(spec.n_max) + "]");
  return n;
}

/// sum_{j=0}^{n-1} b^j a^{n-1-j}
ExactMatrix sum_b_then_a(const PairContext& c, int n) {
  ExactMatrix s = zeros(c.dim());
  for (int j = 0; j < n; ++j) s += c.b_pow(j) * c.a_pow(n - 1 - j);
  return s;
}

/// sum_{j=0}^{n-1} a^{n-1-j} b^j
ExactMatrix sum_a_then_b(const PairContext& c, int n) {
  ExactMatrix s = zeros(c.dim());
  for (int j = 0; j < n; ++j) s += c.a_pow(n - 1 - j) * c.b_pow(j);
  return s;
}

bool full_rank(const ExactMatrix& m) { return rank(m) == m.rows(); }

bool is_hermitian(const ExactMatrix& m) { return exactly_equal(m, adjoint(m)); }

ExactMatrix shift(const ExactMatrix& m, const GaussRational& lambda) {
  ExactMatrix r = m;
  r.diagonal().array() -= lambda;
  return r;
}

}  // namespace

IdentityResult check_identity(IdentityId id, const PairContext& c, const IdentityParams& params,
                              const CheckOptions& options) {
  const IdentitySpec& spec = identity_spec(id);
  const RelationReport& rep = c.report();
  const ExactMatrix& a = c.a();
  const ExactMatrix& b = c.b();
  const Index dim = c.dim();
  Checker k(options.mutate);
  bool hyp = false;
  IdentityParams used = params;

  if (spec.needs_lambda && !params.lambda)
    throw std::invalid_argument(std::string(spec.name) + ": missing required parameter lambda");
  if (spec.needs_mu && !params.mu)
    throw std::invalid_argument(std::string(spec.name) + ": missing required parameter mu");

  switch (id) {
    case IdentityId::L1_I_i: {
      hyp = rep.ab_in_comm_a;
      const int n = resolve_n(spec, params, 4);
      used.n = n;
      for (int p = 1; p <= n; ++p) {
        const ExactMatrix apb = c.a_pow(p) * b;
        for (int m = 1; m <= n; ++m)
          k.commutes(apb, c.a_pow(m), "a^" + std::to_string(p) + " b in comm(a^" + std::to_string(m) + ")");
      }
      break;
    }
    case IdentityId::L1_I_ii: {
      hyp = rep.ab_in_comm_a;
      const int n = resolve_n(spec, params, 2);
      used.n = n;
      const ExactMatrix abn = mat_pow(c.ab(), n);
      const ExactMatrix ban = mat_pow(c.ba(), n);
      k.equal(abn, c.a_pow(n) * c.b_pow(n), nstr("(ab)^%n = a^n b^n", n));
      k.equal(ban, b * c.a_pow(n) * c.b_pow(n - 1), nstr("(ba)^%n = b a^n b^(n-1)", n));
      k.equal(ban, c.ba() * mat_pow(c.ab(), n - 1), nstr("(ba)^%n = (ba)(ab)^(n-1)", n));
      k.equal(ban, b * c.a_pow(n - 1) * c.b_pow(n - 1) * a, nstr("(ba)^%n = b a^(n-1) b^(n-1) a", n));
      break;
    }
    case IdentityId::L1_I_iii:
      hyp = rep.ab_in_comm_a;
      k.commutes(a * c.sum(), a, "a(a+b) in comm(a)");
      break;
    case IdentityId::L1_II_i: {
      hyp = rep.ab_in_comm_b;
      const int n = resolve_n(spec, params, 4);
      used.n = n;
      for (int p = 1; p <= n; ++p) {
        const ExactMatrix abp = a * c.b_pow(p);
        for (int m = 1; m <= n; ++m)
          k.commutes(abp, c.b_pow(m), "a b^" + std::to_string(p) + " in comm(b^" + std::to_string(m) + ")");
      }
      break;
    }
    case IdentityId::L1_II_ii: {
      hyp = rep.ab_in_comm_b;
      const int n = resolve_n(spec, params, 2);
      used.n = n;
      const ExactMatrix abn = mat_pow(c.ab(), n);
      const ExactMatrix ban = mat_pow(c.ba(), n);
      k.equal(abn, c.a_pow(n) * c.b_pow(n), nstr("(ab)^%n = a^n b^n", n));
      k.equal(ban, c.a_pow(n - 1) * c.b_pow(n) * a, nstr("(ba)^%n = a^(n-1) b^n a", n));
      k.equal(ban, mat_pow(c.ab(), n - 1) * c.ba(), nstr("(ba)^%n = (ab)^(n-1)(ba)", n));
      k.equal(ban, b * c.a_pow(n - 1) * c.b_pow(n - 1) * a, nstr("(ba)^%n = b a^(n-1) b^(n-1) a", n));
      break;
    }
    case IdentityId::L1_II_iii:
      hyp = rep.ab_in_comm_b;
      k.commutes(c.sum() * b, b, "(a+b)b in comm(b)");
      break;
    case IdentityId::L1_III_i:
    case IdentityId::L1_IV_i: {
      const bool left = id == IdentityId::L1_III_i;
      hyp = left ? rep.comm_l : rep.comm_r;
      const int n = resolve_n(spec, params, 4);
      used.n = n;
      for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
          const ExactMatrix x = c.a_pow(p) * c.b_pow(q);
          for (int r = 1; r <= n; ++r)
            k.commutes(x, left ? c.a_pow(r) : c.b_pow(r),
                       "a^" + std::to_string(p) + " b^" + std::to_string(q) + " in comm(" + (left ? "a" : "b") +
                           "^" + std::to_string(r) + ")");
        }
      break;
    }
    case IdentityId::L1_III_ii: {
      hyp = rep.comm_l;
      const int n = resolve_n(spec, params, 2);
      used.n = n;
      const ExactMatrix diff = a - b;
      const ExactMatrix base = c.a_pow(n) - c.b_pow(n);
      k.equal(base + b * c.a_pow(n - 1) - c.a_pow(n - 1) * b, sum_b_then_a(c, n) * diff,
              nstr("first telescoping form, n=%n", n));
      k.equal(base + c.b_pow(n - 1) * a - a * c.b_pow(n - 1), sum_a_then_b(c, n) * diff,
              nstr("second telescoping form, n=%n", n));
      break;
    }
    case IdentityId::L1_IV_ii: {
      hyp = rep.comm_r;
      const int n = resolve_n(spec, params, 2);
      used.n = n;
      const ExactMatrix diff = a - b;
      const ExactMatrix base = c.a_pow(n) - c.b_pow(n);
      k.equal(base + a * c.b_pow(n - 1) - c.b_pow(n - 1) * a, diff * sum_b_then_a(c, n),
              nstr("first telescoping form, n=%n", n));
      k.equal(base + c.a_pow(n - 1) * b - b * c.a_pow(n - 1), diff * sum_a_then_b(c, n),
              nstr("second telescoping form, n=%n", n));
      break;
    }
    case IdentityId::L1_III_iii:
      hyp = rep.comm_l;
      k.commutes(c.sum() * a, c.sum(), "(a+b)a in comm(a+b)");
      k.commutes(b * c.sum(), b, "b(a+b) in comm(b)");
      break;
    case IdentityId::L1_IV_iii:
      hyp = rep.comm_r;
      k.commutes(a * c.sum(), c.sum(), "a(a+b) in comm(a+b)");
      k.commutes(c.sum() * b, b, "(a+b)b in comm(b)");
      break;

    case IdentityId::R_i:
    case IdentityId::R_ii: {
      const bool first = id == IdentityId::R_i;
      hyp = first ? rep.ab_in_comm_a : rep.ba_in_comm_a;
      const ExactMatrix as = shift(a, *params.lambda);
      const ExactMatrix bs = shift(b, *params.mu);
      const ExactMatrix prod = first ? ExactMatrix(as * bs) : ExactMatrix(bs * as);
      const bool member = exactly_equal(prod * as, as * prod);
      const bool expected = rep.comm || params.lambda->is_zero();
      k.claim(member == expected, "membership <=> (ab = ba or lambda = 0)");
      IdentityResult r = k.finish(id, hyp, used);
      r.membership = member;
      return r;
    }
    case IdentityId::R_iii: {
      hyp = rep.comm_w;
      const int n = resolve_n(spec, params, 4);
      used.n = n;
      for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
          if (p * q >= 2)
            k.commutes(c.a_pow(p), c.b_pow(q), "a^" + std::to_string(p) + " in comm(b^" + std::to_string(q) + ")");
      break;
    }
    case IdentityId::R_iv: {
      hyp = rep.comm_l || rep.comm_r;
      const RelationReport shifted = relation_check(b, c.sum());
      if (rep.comm_l) k.claim(shifted.comm_l, "(a+b) in comm_l(b)");
      if (rep.comm_r) k.claim(shifted.comm_r, "(a+b) in comm_r(b)");
      if (rep.comm_w) k.claim(shifted.comm_w, "(a+b) in comm_w(b)");
      break;
    }
    case IdentityId::R_v: {
      hyp = rep.ab_in_comm_a && rep.ba_in_comm_a;
      const int n = resolve_n(spec, params, 4);
      used.n = n;
      for (int p = 2; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
          k.commutes(c.a_pow(p), c.b_pow(q), "a^" + std::to_string(p) + " in comm(b^" + std::to_string(q) + ")");
      break;
    }

    case IdentityId::NEWTON_R:
    case IdentityId::NEWTON_L: {
      const bool right = id == IdentityId::NEWTON_R;
      hyp = right ? rep.comm_r : rep.comm_l;
      const int n = resolve_n(spec, params, 3);
      used.n = n;
      ExactMatrix s = zeros(dim);
      for (int j = 1; j <= n; ++j) {
        const GaussRational cf = coeff(binomial(n - 1, j - 1));
        if (right)
          s += cf * ExactMatrix(c.a_pow(n - j) * c.b_pow(j) + c.b_pow(n - j) * c.a_pow(j));
        else
          s += cf * ExactMatrix(c.a_pow(j) * c.b_pow(n - j) + c.b_pow(j) * c.a_pow(n - j));
      }
      k.equal(c.sum_pow(n), s, nstr("(a+b)^%n expansion", n));
      break;
    }
    case IdentityId::BINOM: {
      const int n = resolve_n(spec, params, 3);
      used.n = n;
      hyp = rep.comm_w && n != 2;
      ExactMatrix s1 = zeros(dim);
      ExactMatrix s2 = zeros(dim);
      for (int j = 0; j <= n; ++j) {
        const GaussRational cf = coeff(binomial(n, j));
        s1 += cf * ExactMatrix(c.a_pow(j) * c.b_pow(n - j));
        s2 += cf * ExactMatrix(c.b_pow(j) * c.a_pow(n - j));
      }
      k.equal(c.sum_pow(n), s1, nstr("(a+b)^%n = sum C(n,k) a^k b^(n-k)", n));
      k.equal(c.sum_pow(n), s2, nstr("(a+b)^%n = sum C(n,k) b^k a^(n-k)", n));
      if (n == 2) k.note("n=2 excluded");
      break;
    }
    case IdentityId::TELESCOPE: {
      const int n = resolve_n(spec, params, 3);
      used.n = n;
      hyp = rep.comm_w && n != 2;
      const ExactMatrix lhs = c.a_pow(n) - c.b_pow(n);
      const ExactMatrix diff = a - b;
      const ExactMatrix s_ab = sum_a_then_b(c, n);
      const ExactMatrix s_ba = sum_b_then_a(c, n);
      k.equal(lhs, diff * s_ab, nstr("a^%n - b^n = (a-b) sum a^k b^(n-k-1)", n));
      k.equal(lhs, s_ab * diff, nstr("a^%n - b^n = (sum a^k b^(n-k-1))(a-b)", n));
      k.equal(lhs, diff * s_ba, nstr("a^%n - b^n = (a-b) sum b^(n-k-1) a^k", n));
      k.equal(lhs, s_ba * diff, nstr("a^%n - b^n = (sum b^(n-k-1) a^k)(a-b)", n));
      if (n == 2) k.note("n=2 excluded");
      break;
    }
    case IdentityId::EXP_CORR: {
      hyp = rep.comm_w;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      const ExactMatrix comm = c.ab() - c.ba();
      if (c.nil_a() && c.nil_b() && c.nil_sum()) {
        const ExactMatrix ea = exp_exact_nilpotent(a);
        const ExactMatrix eb = exp_exact_nilpotent(b);
        const ExactMatrix eab = ea * eb;
        k.equal(eab - exp_exact_nilpotent(c.sum()), comm / GaussRational(2), "exp(a)exp(b) - exp(a+b) = (ab-ba)/2");
        k.equal(eab - eb * ea, comm, "exp(a)exp(b) - exp(b)exp(a) = ab - ba");
        k.note("exact");
      }
      const CMatrix ca = to_cmatrix(a);
      const CMatrix cb = to_cmatrix(b);
      const CMatrix cc = to_cmatrix(comm);
      const CMatrix ea = expm(ca);
      const CMatrix eb = expm(cb);
      const CMatrix eab = ea * eb;
      const double scale = std::max(1.0, eab.norm());
      const double r1 = (eab - expm(ca + cb) - 0.5 * cc).norm() / scale;
      const double r2 = (eab - eb * ea - cc).norm() / scale;
      const double rel = std::max(r1, r2);
      k.claim(rel <= options.exp_rel_tol, "floating-point twin within relative tolerance");
      IdentityResult r = k.finish(id, hyp, used);
      r.numeric_residual = rel;
      return r;
    }

    case IdentityId::NIL_PROD:
    case IdentityId::QUASI_CLOSURE: {
      const bool ab_case = rep.ab_in_comm_a || rep.ab_in_comm_b;
      const bool ba_case = rep.ba_in_comm_a || rep.ba_in_comm_b;
      const auto da = c.nil_a();
      const auto db = c.nil_b();
      const bool prod_part = (da || db) && (id == IdentityId::NIL_PROD ? (ab_case || ba_case) : ab_case);
      const bool sum_part = id == IdentityId::QUASI_CLOSURE && da && db && (rep.comm_l || rep.comm_r);
      hyp = prod_part || sum_part;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      if (prod_part) {
        const auto dab = nilpotency_degree(c.ab());
        const auto dba = nilpotency_degree(c.ba());
        k.claim(dab.has_value(), "ab nilpotent");
        k.claim(dba.has_value(), "ba nilpotent");
        if (dab && dba) {
          for (const auto& dx : {da, db}) {
            if (!dx) continue;
            if (ab_case) {
              k.claim(*dab <= *dx, "d(ab) <= d(x)");
              k.claim(*dba <= *dx + 1, "d(ba) <= d(x) + 1");
            }
            if (ba_case && id == IdentityId::NIL_PROD) {
              k.claim(*dba <= *dx, "d(ba) <= d(x)");
              k.claim(*dab <= *dx + 1, "d(ab) <= d(x) + 1");
            }
          }
          k.note("d(ab)=" + std::to_string(*dab) + ", d(ba)=" + std::to_string(*dba));
        }
      }
      if (sum_part) k.claim(c.nil_sum().has_value(), "a+b nilpotent");
      break;
    }
    case IdentityId::NIL_SUM: {
      const auto da = c.nil_a();
      const auto db = c.nil_b();
      hyp = da && db && (rep.comm_l || rep.comm_r);
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      const auto ds = c.nil_sum();
      k.claim(ds.has_value(), "a+b nilpotent");
      if (ds) {
        k.claim(*ds <= *da + *db, "d(a+b) <= d(a) + d(b)");
        k.claim(std::max(*da, *db) - std::min(*da, *db) <= *ds, "max - min <= d(a+b)");
        k.note("d(a)=" + std::to_string(*da) + ", d(b)=" + std::to_string(*db) + ", d(a+b)=" + std::to_string(*ds));
      }
      break;
    }
    case IdentityId::NIL_TELE: {
      const int search = std::max<int>(8, 2 * static_cast<int>(dim));
      auto least = [&](bool on_a) -> std::optional<int> {
        for (int n = 1; n <= search; ++n) {
          const ExactMatrix& p = on_a ? c.a_pow(n) : c.b_pow(n);
          const ExactMatrix& other = on_a ? b : a;
          if (exactly_equal(p * other, other * p)) return n;
        }
        return std::nullopt;
      };
      std::optional<int> n_left;
      std::optional<int> n_right;
      if (rep.comm_l) n_left = least(true);
      if (rep.comm_r) n_right = least(false);
      hyp = n_left || n_right;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      if (n_left) {
        k.note("left form n=" + std::to_string(*n_left));
        for (int m = *n_left + 1; m <= *n_left + 4; ++m)
          k.equal(c.a_pow(m) - c.b_pow(m), sum_b_then_a(c, m) * (a - b), nstr("left form, m=%n", m));
      }
      if (n_right) {
        k.note("right form n=" + std::to_string(*n_right));
        for (int m = *n_right + 1; m <= *n_right + 4; ++m)
          k.equal(c.a_pow(m) - c.b_pow(m), (a - b) * sum_b_then_a(c, m), nstr("right form, m=%n", m));
      }
      break;
    }

    case IdentityId::RAD_PROD: {
      hyp = rep.ab_in_comm_a || rep.ab_in_comm_b;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      const double ra = spectral_radius_exact(a);
      const double rb = spectral_radius_exact(b);
      const double rab = spectral_radius_exact(c.ab());
      k.at_most(rab, ra * rb + options.radius_slack, "r(ab) <= r(a) r(b)");
      k.note("r(ab)=" + std::to_string(rab) + ", r(a)r(b)=" + std::to_string(ra * rb));
      break;
    }
    case IdentityId::RAD_SUM: {
      hyp = rep.comm_l || rep.comm_r;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      const double ra = spectral_radius_exact(a);
      const double rb = spectral_radius_exact(b);
      const double rs = spectral_radius_exact(c.sum());
      k.at_most(rs, ra + rb + options.radius_slack, "r(a+b) <= r(a) + r(b)");
      k.note("r(a+b)=" + std::to_string(rs) + ", r(a)+r(b)=" + std::to_string(ra + rb));
      break;
    }

    case IdentityId::SPEC_INCL: {
      hyp = c.nil_b() && rep.ba_in_comm_a;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      const ExactPoly rt = poly_radical_nonzero(charpoly(a));
      const ExactPoly rs = poly_radical_nonzero(charpoly(c.sum()));
      k.claim(divides(rt, rs), "nonzero spectrum of T inside that of T+N");
      break;
    }
    case IdentityId::SPEC_EQ_N2: {
      const bool sq_zero = is_zero(c.b_pow(2));
      hyp = c.nil_b() && ((rep.ba_in_comm_a && sq_zero) || rep.comm_r);
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      k.claim(poly_radical_nonzero(charpoly(a)) == poly_radical_nonzero(charpoly(c.sum())),
              "nonzero spectra of T and T+N equal");
      break;
    }
    case IdentityId::SPEC_EQ_W: {
      hyp = c.nil_b() && rep.comm_w;
      if (!hyp) {
        k.note("not evaluated");
        break;
      }
      k.claim(squarefree_part(charpoly(a)) == squarefree_part(charpoly(c.sum())), "spectra of T and T+N equal");
      k.claim(full_rank(a) == full_rank(c.sum()), "T invertible <=> T+N invertible");
      break;
    }
    case IdentityId::KER_INCL: {
      const GaussRational& lambda = *params.lambda;
      const auto p = c.nil_b();
      hyp = !lambda.is_zero() && p && rep.ba_in_comm_a;
      if (!hyp) {
        k.note(lambda.is_zero() ? "lambda = 0 excluded" : "not evaluated");
        break;
      }
      const ExactMatrix t_l = shift(a, lambda);
      const ExactMatrix tn_l = shift(c.sum(), lambda);
      const SubspaceBasis ker_t = kernel(t_l);
      const SubspaceBasis ker_tn = kernel(tn_l);
      k.claim(kernel(mat_pow(tn_l, *p)).contains(ker_t), "N(T - lambda) inside N((T+N-lambda)^p)");
      if (rep.ab_in_comm_b)
        k.claim(kernel(mat_pow(t_l, *p)).contains(ker_tn), "N(T+N-lambda) inside N((T-lambda)^p)");
      if (*p <= 2) k.claim(kernel(t_l * t_l).contains(ker_tn), "N(T+N-lambda) inside N((T-lambda)^2)");
      k.note("p=" + std::to_string(*p) + ", dim N(T-lambda)=" + std::to_string(ker_t.dim()));
      break;
    }
    case IdentityId::KRITERION_RANGE: {
      hyp = true;
      const ExactMatrix defect = c.ba() - c.ab();  // ST - TS
      const RelationReport dual = relation_check(adjoint(a), adjoint(b));
      k.claim(rep.ab_in_comm_a == dual.ba_in_comm_a, "TS in comm(T) <=> S*T* in comm(T*)");
      k.claim(rep.ab_in_comm_a == kernel(a).contains(range(defect)), "TS in comm(T) <=> R(ST-TS) in N(T)");
      k.claim(rep.ba_in_comm_a == kernel(defect).contains(range(a)), "ST in comm(T) <=> R(T) in N(ST-TS)");
      if (full_rank(a)) {
        k.claim(rep.ab_in_comm_a == rep.comm, "T injective: TS in comm(T) <=> S in comm(T)");
        k.claim(rep.ba_in_comm_a == rep.comm, "T onto: ST in comm(T) <=> S in comm(T)");
      }
      if (is_hermitian(a) && is_hermitian(b))
        k.claim(rep.ab_in_comm_a == rep.ba_in_comm_a, "self-adjoint: TS in comm(T) <=> ST in comm(T)");
      break;
    }
  }
  return k.finish(id, hyp, used);
}

IdentityResult check_identity(IdentityId id, const ExactMatrix& a, const ExactMatrix& b,
                              const IdentityParams& params, const CheckOptions& options) {
  return check_identity(id, PairContext(a, b), params, options);
}

}  // namespace weakcomm
