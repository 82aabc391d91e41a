#include "weakcomm/structure.hpp"

#include <stdexcept>

#include "weakcomm/relations.hpp"

namespace weakcomm {

ChainProfile chain_profile(const ExactMatrix& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("chain_profile: matrix is not square");
  const Index n = t.rows();
  ChainProfile c;
  const SubspaceBasis ker = kernel(t);
  ExactMatrix power = identity(n);
  for (Index k = 0; k <= n + 1; ++k) {
    const RankKernel rk = rank_kernel(power);
    c.range_dims.push_back(rk.rank);
    c.kernel_dims.push_back(n - rk.rank);
    if (k <= n) c.alpha_seq.push_back(ker.intersect(rk.image).dim());
    power = power * t;
  }
  for (Index k = 0; k <= n; ++k) c.beta_seq.push_back(c.range_dims[k] - c.range_dims[k + 1]);

  auto first_stable = [n](const std::vector<Index>& dims) {
    for (Index k = 0; k <= n; ++k)
      if (dims[k] == dims[k + 1]) return static_cast<int>(k);
    return static_cast<int>(n);
  };
  c.p = first_stable(c.kernel_dims);
  c.q = first_stable(c.range_dims);

  c.dis = static_cast<int>(n);
  for (Index m = n; m >= 0; --m) {
    if (c.alpha_seq[m] != c.alpha_seq[n]) break;
    c.dis = static_cast<int>(m);
  }
  c.m_T = 0;
  c.index = c.alpha_seq[0] - c.beta_seq[0];
  return c;
}

namespace {

void require_same(const ExactMatrix& a, const ExactMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

ExactMatrix shifted(const ExactMatrix& m, const GaussRational& lambda) {
  ExactMatrix r = m;
  r.diagonal().array() -= lambda;
  return r;
}

/// Matrix of x restricted to the invariant subspace u, in u's basis; nullopt
/// when u is not x-invariant.
std::optional<ExactMatrix> restrict_to(const ExactMatrix& x, const SubspaceBasis& u) {
  ExactMatrix r(u.dim(), u.dim());
  for (Index j = 0; j < u.dim(); ++j) {
    const auto coords = u.coordinates(x * u.vectors().col(j));
    if (!coords) return std::nullopt;
    r.col(j) = *coords;
  }
  return r;
}

}  // namespace

RangeKernelCriterion range_kernel_criterion(const ExactMatrix& s, const ExactMatrix& t) {
  require_same(s, t, "range_kernel_criterion");
  const ExactMatrix defect = s * t - t * s;
  const RelationReport rep = relation_check(t, s);
  return {kernel(t).contains(range(defect)), kernel(defect).contains(range(t)), rep.ab_in_comm_a,
          rep.ba_in_comm_a};
}

InvariantRestriction invariant_restriction(const ExactMatrix& s, const ExactMatrix& t, const GaussRational& lambda) {
  require_same(s, t, "invariant_restriction");
  if (lambda.is_zero()) throw std::invalid_argument("invariant_restriction: lambda must be nonzero");
  const RelationReport rep = relation_check(t, s);
  InvariantRestriction out{};
  out.hypothesis_met = rep.ba_in_comm_a;

  const SubspaceBasis m = kernel(shifted(t, lambda));
  out.m_dim = m.dim();
  const auto s_m = restrict_to(s, m);
  const auto t_m = restrict_to(t, m);
  out.invariant = s_m.has_value();
  out.restrictions_commute = s_m && t_m && exactly_equal(*s_m * *t_m, *t_m * *s_m);

  out.second_hypothesis_met = out.hypothesis_met && rep.ab_in_comm_b;
  const SubspaceBasis bsub = kernel(shifted(ExactMatrix(t + s), lambda));
  out.b_dim = bsub.dim();
  const auto s_b = restrict_to(s, bsub);
  const auto t_b = restrict_to(t, bsub);
  out.b_invariant = s_b.has_value();
  out.b_restrictions_commute = s_b && t_b && exactly_equal(*s_b * *t_b, *t_b * *s_b);
  return out;
}

KernelInclusion kernel_inclusion(const ExactMatrix& t, const ExactMatrix& n, const GaussRational& lambda, int p) {
  require_same(t, n, "kernel_inclusion");
  if (lambda.is_zero()) throw std::invalid_argument("kernel_inclusion: lambda must be nonzero");
  if (p < 1) throw std::invalid_argument("kernel_inclusion: p must be positive");
  KernelInclusion out{};
  const RelationReport rep = relation_check(t, n);
  if (!is_zero(mat_pow(n, p))) {
    out.status = KernelInclusionStatus::not_nilpotent_of_order_p;
    return out;
  }
  if (!rep.ba_in_comm_a) {
    out.status = KernelInclusionStatus::t_not_in_comm_nt;
    return out;
  }
  out.status = KernelInclusionStatus::ok;
  const ExactMatrix t_l = shifted(t, lambda);
  const ExactMatrix tn_l = shifted(ExactMatrix(t + n), lambda);
  const SubspaceBasis ker_tn = kernel(tn_l);
  out.forward = kernel(mat_pow(tn_l, p)).contains(kernel(t_l));
  out.reverse_applicable = rep.ab_in_comm_b;
  if (out.reverse_applicable) out.reverse = kernel(mat_pow(t_l, p)).contains(ker_tn);
  out.square_zero = is_zero(ExactMatrix(n * n));
  if (out.square_zero) out.reverse_square = kernel(t_l * t_l).contains(ker_tn);
  return out;
}

SpectrumEquality nonzero_spectrum_equal_exact(const ExactMatrix& a, const ExactMatrix& b) {
  require_same(a, b, "nonzero_spectrum_equal_exact");
  const ExactPoly ca = charpoly(a);
  const ExactPoly cb = charpoly(b);
  SpectrumEquality out{false, false, poly_radical_nonzero(ca), poly_radical_nonzero(cb), squarefree_part(ca),
                       squarefree_part(cb)};
  out.nonzero_equal = out.radical_a == out.radical_b;
  out.full_equal = out.full_radical_a == out.full_radical_b;
  return out;
}

DisPropagation dis_propagation(const ExactMatrix& s, const ExactMatrix& t) {
  require_same(s, t, "dis_propagation");
  DisPropagation out{};
  out.dis_s = chain_profile(s).dis;
  out.dis_t = chain_profile(t).dis;
  out.dis_ts = chain_profile(ExactMatrix(t * s)).dis;
  out.hypothesis_met = relation_check(t, s).comm_r && out.dis_ts == 0;
  out.holds = out.dis_s == 0 && out.dis_t <= 1;
  return out;
}

}  // namespace weakcomm
