#include "weakcomm/relations.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace weakcomm {

namespace detail {

void derive_flags(RelationReport& r) {
  r.comm_l = r.ab_in_comm_a && r.ba_in_comm_b;
  r.comm_r = r.ab_in_comm_b && r.ba_in_comm_a;
  r.comm_w = r.comm_l && r.comm_r;
  r.c1_pair = r.ab_in_comm_a || r.ba_in_comm_a || r.ba_in_comm_b;
  r.c2_pair = r.ab_in_comm_a || r.ba_in_comm_a || r.ab_in_comm_b;
  r.c3_pair = r.ab_in_comm_b || r.ba_in_comm_b;
}

}  // namespace detail

namespace {

void set_primitive(RelationReport& r, std::size_t k, bool value) {
  switch (k) {
    case 0: r.comm = value; break;
    case 1: r.ab_in_comm_a = value; break;
    case 2: r.ab_in_comm_b = value; break;
    case 3: r.ba_in_comm_a = value; break;
    default: r.ba_in_comm_b = value; break;
  }
}

template <class Matrix>
void require_pair(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("relation_check: dimension mismatch");
}

}  // namespace

RelationReport relation_check(const ExactMatrix& a, const ExactMatrix& b) {
  require_pair(a, b);
  const auto defects = detail::relation_defects(a, b);
  RelationReport r;
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const bool zero = is_zero(defects[k]);
    set_primitive(r, k, zero);
    r.residuals[std::string(detail::kPrimitiveNames[k])] = zero ? 0.0 : frobenius_norm(defects[k]);
  }
  detail::derive_flags(r);
  return r;
}

RelationReport relation_check_tol(const CMatrix& a, const CMatrix& b, double tol) {
  require_pair(a, b);
  require_finite(a, "relation_check_tol");
  require_finite(b, "relation_check_tol");
  if (tol < 0.0) throw std::invalid_argument("relation_check_tol: negative tolerance");
  const double na = a.norm();
  const double nb = b.norm();
  const double bound = tol * (1.0 + na * nb * (na + nb));
  const auto defects = detail::relation_defects(a, b);
  RelationReport r;
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const double d = defects[k].norm();
    set_primitive(r, k, d <= bound);
    r.residuals[std::string(detail::kPrimitiveNames[k])] = d;
  }
  detail::derive_flags(r);
  return r;
}

namespace {

using Pred = std::function<bool(const RelationReport&)>;

const std::vector<std::pair<std::string, Pred>>& predicate_table() {
  static const std::vector<std::pair<std::string, Pred>> table = {
      {"comm", [](const RelationReport& r) { return r.comm; }},
      {"comm_l", [](const RelationReport& r) { return r.comm_l; }},
      {"comm_r", [](const RelationReport& r) { return r.comm_r; }},
      {"comm_w", [](const RelationReport& r) { return r.comm_w; }},
      {"c1", [](const RelationReport& r) { return r.c1_pair; }},
      {"c2", [](const RelationReport& r) { return r.c2_pair; }},
      {"c3", [](const RelationReport& r) { return r.c3_pair; }},
      {"not_c1", [](const RelationReport& r) { return !r.c1_pair; }},
      {"not_c2", [](const RelationReport& r) { return !r.c2_pair; }},
      {"not_c3", [](const RelationReport& r) { return !r.c3_pair; }},
      {"not_comm", [](const RelationReport& r) { return !r.comm; }},
      {"comm_l_not_comm", [](const RelationReport& r) { return r.comm_l && !r.comm; }},
      {"comm_r_not_comm", [](const RelationReport& r) { return r.comm_r && !r.comm; }},
      {"comm_w_not_comm", [](const RelationReport& r) { return r.comm_w && !r.comm; }},
      {"comm_and_not_comm", [](const RelationReport& r) { return r.comm && !r.comm; }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& predicate_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, pred] : predicate_table()) v.push_back(name);
    return v;
  }();
  return names;
}

std::optional<bool> evaluate_predicate(std::string_view name, const RelationReport& r) {
  for (const auto& [n, pred] : predicate_table())
    if (n == name) return pred(r);
  return std::nullopt;
}

}  // namespace weakcomm
