// Weak-commutativity predicates of an ordered pair (a, b).
//
// relation_check(a, b) answers "is b in comm_*(a)?":
//   comm_l  <=>  ab in comm(a) and ba in comm(b)
//   comm_r  <=>  ab in comm(b) and ba in comm(a)
//   comm_w  <=>  comm_l and comm_r
// and the pointwise C-set conditions
//   c1  <=>  a in comm(ab) u comm(ba)  or  b in comm(ba)
//   c2  <=>  a in comm(ab) u comm(ba)  or  b in comm(ab)
//   c3  <=>  b in comm(ab) u comm(ba)
#ifndef WEAKCOMM_RELATIONS_HPP
#define WEAKCOMM_RELATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakcomm/exact.hpp"
#include "weakcomm/numeric.hpp"

namespace weakcomm {

struct RelationReport {
  bool comm = false;
  bool ab_in_comm_a = false;
  bool ab_in_comm_b = false;
  bool ba_in_comm_a = false;
  bool ba_in_comm_b = false;
  bool comm_l = false;
  bool comm_r = false;
  bool comm_w = false;
  bool c1_pair = false;
  bool c2_pair = false;
  bool c3_pair = false;
  /// Frobenius norm of each defining defect, keyed by the primitive flag
  /// name ("comm", "ab_in_comm_a", ...). Exact mode reports 0 for every
  /// satisfied flag.
  std::map<std::string, double> residuals;
};

RelationReport relation_check(const ExactMatrix& a, const ExactMatrix& b);

/// Each primitive flag is true iff its defect d satisfies
///   ||d||_F <= tol * (1 + ||a||_F ||b||_F (||a||_F + ||b||_F)).
RelationReport relation_check_tol(const CMatrix& a, const CMatrix& b, double tol);

/// Names accepted by evaluate_predicate, in a fixed order.
const std::vector<std::string>& predicate_names();

/// Named predicate over a report (comm, comm_l, ..., not_c3,
/// comm_w_not_comm, ...). nullopt for an unknown name.
std::optional<bool> evaluate_predicate(std::string_view name, const RelationReport& r);

namespace detail {

/// The five defining defects, in the order comm, ab_in_comm_a,
/// ab_in_comm_b, ba_in_comm_a, ba_in_comm_b.
template <class Matrix>
std::vector<Matrix> relation_defects(const Matrix& a, const Matrix& b) {
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  std::vector<Matrix> d;
  d.reserve(5);
  d.push_back(ab - ba);
  d.push_back(ab * a - a * ab);
  d.push_back(ab * b - b * ab);
  d.push_back(ba * a - a * ba);
  d.push_back(ba * b - b * ba);
  return d;
}

/// Fills the derived flags from the five primitive ones.
void derive_flags(RelationReport& r);

inline constexpr std::string_view kPrimitiveNames[5] = {
    "comm", "ab_in_comm_a", "ab_in_comm_b", "ba_in_comm_a", "ba_in_comm_b"};

}  // namespace detail

}  // namespace weakcomm

#endif  // WEAKCOMM_RELATIONS_HPP
