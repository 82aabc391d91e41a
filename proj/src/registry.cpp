#include <sstream>

#include "weakcomm/instances.hpp"
#include "weakcomm/literal.hpp"
#include "weakcomm/poly.hpp"

namespace weakcomm {

namespace {

struct Entry {
  ExampleId id;
  std::string_view name;
  int default_dim;  ///< 0 for fixed-size examples
  int min_dim;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> v = {
      {ExampleId::SEX_I_PQ, "SEX_I_PQ", 0, 0},       {ExampleId::SEX_I_PS, "SEX_I_PS", 0, 0},
      {ExampleId::SEX_II_TS, "SEX_II_TS", 4, 2},     {ExampleId::SEX_II_MN, "SEX_II_MN", 0, 0},
      {ExampleId::SEX_III_TN, "SEX_III_TN", 2, 2},   {ExampleId::SEX_IV_N1N2, "SEX_IV_N1N2", 4, 3},
      {ExampleId::SEX_V_PQ, "SEX_V_PQ", 0, 0},       {ExampleId::REMARK_TN, "REMARK_TN", 0, 0},
      {ExampleId::EX4_RN, "EX4_RN", 5, 3},           {ExampleId::EXNILP_T, "EXNILP_T", 10, 2},
      {ExampleId::EXNILP_N, "EXNILP_N", 10, 4},      {ExampleId::EXNILP_Q, "EXNILP_Q", 10, 2},
  };
  return v;
}

const Entry& entry(ExampleId id) {
  for (const auto& e : entries())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown example id");
}

ExactMatrix unit(Index n, Index i, Index j, GaussRational v = 1) {
  ExactMatrix m = zeros(n);
  m(i - 1, j - 1) = std::move(v);
  return m;
}

bool commute(const ExactMatrix& x, const ExactMatrix& y) { return exactly_equal(x * y, y * x); }
bool same(const ExactMatrix& x, const ExactMatrix& y) { return exactly_equal(x, y); }
ExactMatrix prod(std::initializer_list<ExactMatrix> f) {
  auto it = f.begin();
  ExactMatrix r = *it;
  for (++it; it != f.end(); ++it) r = r * *it;
  return r;
}

bool nonzero_spectrum_empty(const ExactMatrix& x) {
  return poly_radical_nonzero(charpoly(x)) == ExactPoly::constant(1);
}

}  // namespace

const std::vector<ExampleId>& example_ids() {
  static const std::vector<ExampleId> v = [] {
    std::vector<ExampleId> ids;
    for (const auto& e : entries()) ids.push_back(e.id);
    return ids;
  }();
  return v;
}

std::string_view example_name(ExampleId id) { return entry(id).name; }

std::optional<ExampleId> example_from_name(std::string_view name) {
  for (const auto& e : entries())
    if (e.name == name) return e.id;
  return std::nullopt;
}

const ExactMatrix& ExampleInstance::matrix(std::string_view name) const {
  for (const auto& [n, m] : matrices)
    if (n == name) return m;
  throw std::out_of_range("example has no matrix named '" + std::string(name) + "'");
}

bool ExampleInstance::all_hold() const {
  for (const auto& c : claims)
    if (!c.holds) return false;
  return true;
}

RelationReport ExampleInstance::report() const { return relation_check(matrix(first), matrix(second)); }

ExampleInstance paper_example(ExampleId id, std::optional<int> dim, const std::vector<GaussRational>& params) {
  const Entry& e = entry(id);
  if (dim && e.default_dim == 0)
    throw std::invalid_argument(std::string(e.name) + " has a fixed size; no dimension is accepted");
  if (!params.empty() && id != ExampleId::SEX_II_MN)
    throw std::invalid_argument(std::string(e.name) + " takes no parameters");
  const int n = dim.value_or(e.default_dim);
  if (e.default_dim && n < e.min_dim)
    throw std::invalid_argument(std::string(e.name) + " needs dimension >= " + std::to_string(e.min_dim));

  ExampleInstance ex;
  ex.id = id;
  auto add = [&](std::string name, ExactMatrix m) { ex.matrices.emplace_back(std::move(name), std::move(m)); };
  auto claim = [&](std::string statement, bool holds) { ex.claims.push_back({std::move(statement), holds}); };

  switch (id) {
    case ExampleId::SEX_I_PQ: {
      const ExactMatrix p = unit(2, 1, 2);
      ExactMatrix q = unit(2, 1, 2);
      q(1, 1) = 1;
      add("P", p);
      add("Q", q);
      ex.first = "P", ex.second = "Q";
      const ExactMatrix pqp = prod({p, q, p}), p2q = prod({p, p, q}), qp2 = prod({q, p, p}),
                        qpq = prod({q, p, q}), q2p = prod({q, q, p}), pq2 = prod({p, q, q});
      claim("PQP = P^2Q", same(pqp, p2q));
      claim("P^2Q = QP^2", same(p2q, qp2));
      claim("QP^2 = QPQ", same(qp2, qpq));
      claim("QPQ = Q^2P", same(qpq, q2p));
      claim("Q^2P != PQ^2", !same(q2p, pq2));
      claim("PQ != QP", !commute(p, q));
      break;
    }
    case ExampleId::SEX_I_PS: {
      const ExactMatrix p = unit(2, 1, 2), s = unit(2, 2, 1);
      add("P", p);
      add("S", s);
      ex.first = "P", ex.second = "S";
      const ExactMatrix ps = p * s, sp = s * p;
      claim("S in comm(P^2)", commute(s, p * p));
      claim("P in comm(S^2)", commute(p, s * s));
      claim("PS does not commute with P", !commute(ps, p));
      claim("PS does not commute with S", !commute(ps, s));
      claim("SP does not commute with P", !commute(sp, p));
      claim("SP does not commute with S", !commute(sp, s));
      break;
    }
    case ExampleId::SEX_II_TS: {
      ExactMatrix t = identity(n);
      t(0, 0) = 1, t(1, 0) = 1, t(1, 1) = 0;
      const ExactMatrix s = unit(n, 1, 1);
      add("T", t);
      add("S", s);
      ex.first = "T", ex.second = "S";
      ex.model = "first two coordinates carry the action; T is the identity and S is zero on the tail";
      const ExactMatrix ts = adjoint(t), ss = adjoint(s);
      claim("S in comm_l(T)", relation_check(t, s).comm_l);
      claim("ST does not commute with T", !commute(s * t, t));
      claim("TS does not commute with S", !commute(t * s, s));
      claim("S* in comm_r(T*)", relation_check(ts, ss).comm_r);
      claim("T*S* does not commute with T*", !commute(ts * ss, ts));
      claim("S*T* does not commute with S*", !commute(ss * ts, ss));
      break;
    }
    case ExampleId::SEX_II_MN: {
      GaussRational x = 1, y = 1;
      if (!params.empty()) {
        if (params.size() != 2) throw std::invalid_argument("SEX_II_MN takes two parameters (x, y)");
        x = params[0];
        y = params[1];
      }
      if (y.is_zero() || (x + y).is_zero())
        throw std::invalid_argument("SEX_II_MN needs y != 0 and x != -y");
      ExactMatrix m(2, 2), nn(2, 2);
      m << 1, 1, 0, 0;
      nn << x, x, y, y;
      add("M", m);
      add("N", nn);
      ex.first = "N", ex.second = "M";
      claim("M in comm_l(N)", relation_check(nn, m).comm_l);
      claim("NM does not commute with M", !commute(nn * m, m));
      claim("MN does not commute with N", !commute(m * nn, nn));
      break;
    }
    case ExampleId::SEX_III_TN: {
      const ExactMatrix t = unit(n, 1, 2), nn = unit(n, 2, 1);
      add("T", t);
      add("N", nn);
      ex.first = "T", ex.second = "N";
      ex.model = "first two coordinates carry the action; both operators are zero on the tail";
      const ExactMatrix tn = t * nn, nt = nn * t;
      claim("T in comm(N^2)", commute(t, nn * nn));
      claim("N in comm(T^2)", commute(nn, t * t));
      claim("TN not in comm(T)", !commute(tn, t));
      claim("TN not in comm(N)", !commute(tn, nn));
      claim("NT not in comm(T)", !commute(nt, t));
      claim("NT not in comm(N)", !commute(nt, nn));
      break;
    }
    case ExampleId::SEX_IV_N1N2: {
      const ExactMatrix n1 = unit(n, 2, 1) + unit(n, 3, 2), n2 = unit(n, 2, 1, -1);
      add("N1", n1);
      add("N2", n2);
      ex.first = "N2", ex.second = "N1";
      ex.model = "first three coordinates carry the action; both operators are zero on the tail";
      claim("N1 in comm_w(N2)", relation_check(n2, n1).comm_w);
      claim("N1 not in comm(N2)", !commute(n1, n2));
      break;
    }
    case ExampleId::SEX_V_PQ: {
      const ExactMatrix p = unit(3, 2, 1, GaussRational::fraction(1, 2)) + unit(3, 3, 2, GaussRational::fraction(1, 3));
      const ExactMatrix q = unit(3, 2, 1, GaussRational::fraction(-1, 2));
      add("P", p);
      add("Q", q);
      ex.first = "Q", ex.second = "P";
      claim("PQP = 0", is_zero(prod({p, q, p})));
      claim("P^2Q = 0", is_zero(prod({p, p, q})));
      claim("QP^2 = 0", is_zero(prod({q, p, p})));
      claim("QPQ = 0", is_zero(prod({q, p, q})));
      claim("Q^2P = 0", is_zero(prod({q, q, p})));
      claim("PQ^2 = 0", is_zero(prod({p, q, q})));
      claim("P in comm_w(Q)", relation_check(q, p).comm_w);
      claim("PQ != QP", !commute(p, q));
      break;
    }
    case ExampleId::REMARK_TN: {
      const ExactMatrix t = unit(2, 1, 2), nn = unit(2, 2, 1);
      add("T", t);
      add("N", nn);
      ex.first = "T", ex.second = "N";
      const ExactPoly x2m1 = ExactPoly::x() * ExactPoly::x() - ExactPoly::constant(1);
      claim("TN^2 = 0", is_zero(prod({t, nn, nn})));
      claim("N^2T = 0", is_zero(prod({nn, nn, t})));
      claim("NT^2 = 0", is_zero(prod({nn, t, t})));
      claim("T^2N = 0", is_zero(prod({t, t, nn})));
      claim("sigma_p(T) without 0 is empty", nonzero_spectrum_empty(t));
      claim("sigma_p(N) without 0 is empty", nonzero_spectrum_empty(nn));
      claim("sigma_p(T+N) without 0 is {-1, 1}", poly_radical_nonzero(charpoly(ExactMatrix(t + nn))) == x2m1);
      break;
    }
    case ExampleId::EX4_RN: {
      LTwoOpSpec r;
      r.terms.push_back({ShiftDirection::down, {{}, {GaussRational(1)}, false, 0}});
      LTwoOpSpec nspec;
      nspec.finite_rank.push_back({2, 1, GaussRational(-1)});
      ex.operators = {{"R", r}, {"N", nspec}};
      const ExactMatrix rr = truncate(r, n), nn = truncate(nspec, n);
      add("R", rr);
      add("N", nn);
      ex.first = "R", ex.second = "N";
      ex.model = "sections of the unilateral shift and of N on the first n coordinates";
      claim("NR in comm(R)", commute(nn * rr, rr));
      claim("NR != RN", !commute(nn, rr));
      break;
    }
    case ExampleId::EXNILP_T: {
      const LTwoOpSpec t = exnilp_t();
      ex.operators = {{"T", t}};
      const ExactMatrix tt = truncate(t, n);
      add("T", tt);
      ex.first = ex.second = "T";
      ex.model = "section of the weighted shift on the first n coordinates";
      claim("T section is strictly lower triangular", is_zero(ExactMatrix(tt.triangularView<Eigen::Upper>())));
      claim("charpoly of the T section is x^n", charpoly(tt) == ExactPoly::monomial(1, n));
      claim("T has no finitely supported kernel vector", finite_support_kernel(t, n).dim() == 0);
      break;
    }
    case ExampleId::EXNILP_N: {
      const LTwoOpSpec t = exnilp_t(), nspec = exnilp_n();
      ex.operators = {{"T", t}, {"N", nspec}};
      const ExactMatrix tt = truncate(t, n), nn = truncate(nspec, n);
      add("T", tt);
      add("N", nn);
      ex.first = "T", ex.second = "N";
      ex.model = "sections on the first n coordinates; the last inequality needs n >= 4";
      const ProductChainCheck chain = product_chain(tt, nn);
      for (std::size_t i = 1; i < 6; ++i)
        claim(chain.names[0] + " = " + chain.names[i], same(chain.products[0], chain.products[i]));
      claim(chain.names[0] + " != " + chain.names[6], chain.last_differs);
      claim("N^2 = 0", is_zero(ExactMatrix(nn * nn)));
      claim("charpoly of the T+N section is x^n", charpoly(ExactMatrix(tt + nn)) == ExactPoly::monomial(1, n));
      claim("finitely supported kernel of T+N is span{e1}",
            finite_support_kernel(t + nspec, n) == SubspaceBasis::coordinate(n, {0}));
      break;
    }
    case ExampleId::EXNILP_Q: {
      const LTwoOpSpec t = exnilp_t(), q = exnilp_q();
      ex.operators = {{"T", t}, {"Q", q}};
      const ExactMatrix tt = truncate(t, n), qq = truncate(q, n);
      add("T", tt);
      add("Q", qq);
      ex.first = "T", ex.second = "Q";
      ex.model = "sections on the first n coordinates";
      const ExactMatrix s = tt + qq;
      claim("(T+Q)^2 = 0", is_zero(ExactMatrix(s * s)));
      claim("Q^2 = 0", is_zero(ExactMatrix(qq * qq)));
      claim("e1 is a kernel vector of T+Q", finite_support_kernel(t + q, n).contains(ExactVector(identity(n).col(0))));
      break;
    }
  }
  ex.dim = static_cast<int>(ex.matrices.front().second.rows());
  return ex;
}

std::string registry_text(const ExampleInstance& ex) {
  std::ostringstream os;
  os << "# " << example_name(ex.id) << ", dimension " << ex.dim << '\n';
  for (const auto& [name, m] : ex.matrices) os << name << " = " << format_matrix(m) << '\n';
  return os.str();
}

}  // namespace weakcomm
