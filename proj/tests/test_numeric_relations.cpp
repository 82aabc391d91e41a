#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weakcomm/instances.hpp"
#include "weakcomm/numeric.hpp"
#include "weakcomm/relations.hpp"

using namespace weakcomm;
using oracle::M;

namespace {

const ExactMatrix P1 = M("0, 1; 0, 0");
const ExactMatrix Q1 = M("0, 1; 0, 1");
const ExactMatrix P5 = M("0, 0, 0; 1/2, 0, 0; 0, 1/3, 0");
const ExactMatrix Q5 = M("0, 0, 0; -1/2, 0, 0; 0, 0, 0");

bool has_point(const SpectrumSet& s, Complex z, int mult) {
  for (const auto& p : s.points)
    if (std::abs(p.value - z) < 1e-9 && p.multiplicity == mult) return true;
  return false;
}

}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("eigenvalues") {
    const SpectrumSet swap = eigenvalues(to_cmatrix(M("0, 1; 1, 0")));
    CHECK(swap.points.size() == 2);
    CHECK(has_point(swap, -1.0, 1));
    CHECK(has_point(swap, 1.0, 1));
    const SpectrumSet nil = eigenvalues(to_cmatrix(P1));
    CHECK(nil.points.size() == 1);
    CHECK(has_point(nil, 0.0, 2));
    const SpectrumSet d = eigenvalues(to_cmatrix(M("1/2, 0; 0, 1/3")));
    CHECK(has_point(d, 0.5, 1));
    CHECK(has_point(d, 1.0 / 3.0, 1));
    CHECK(d.total_multiplicity() == 2);
  }

  TEST_CASE("spectral radius") {
    CHECK(spectral_radius(to_cmatrix(P1)) == doctest::Approx(0.0));
    CHECK(spectral_radius(to_cmatrix(M("2, 0; 0, -3"))) == doctest::Approx(3.0));
    CHECK(spectral_radius(to_cmatrix(M("0, 1; 1, 0"))) == doctest::Approx(1.0));
    CHECK(spectral_radius_exact(M("0, 1; 1, 0")) == doctest::Approx(1.0));
    CHECK(spectral_radius_exact(P5) == 0.0);
    // A 6x6 Jordan block of 1: a direct eigensolve loses digits, the exact route does not.
    ExactMatrix j = oracle::eye(6);
    for (int i = 0; i + 1 < 6; ++i) j(i, i + 1) = 1;
    CHECK(std::abs(spectral_radius_exact(j) - 1.0) < 1e-12);
  }

  TEST_CASE("expm") {
    CHECK((expm(CMatrix::Zero(3, 3)) - CMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK((expm(to_cmatrix(Q5)) - to_cmatrix(oracle::add(oracle::eye(3), Q5))).norm() < 1e-12);
    CMatrix l = CMatrix::Zero(2, 2);
    l(0, 0) = l(1, 1) = std::log(2.0);
    CHECK((expm(l) - 2.0 * CMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((expm(to_cmatrix(P5)) - to_cmatrix(oracle::exp_series(P5))).norm() < 1e-12);
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(expm(bad), NumericError);
  }

  TEST_CASE("spectrum_compare") {
    const auto s = [](std::vector<Complex> v) { return SpectrumSet::cluster(v, kClusterTol); };
    CHECK(spectrum_compare(s({0.0, 1.0}), s({0.0, 0.0, 1.0}), 1e-8));
    CHECK(!spectrum_compare(s({-1.0, 1.0, 0.0}), s({0.0}), 1e-8));
    CHECK(spectrum_compare(s({0.0}), s({0.0}), 1e-8));
  }

  TEST_CASE("polynomial roots") {
    const auto r = polynomial_roots(ExactPoly({-1, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(std::abs(std::abs(r[0]) - 1.0) < 1e-12);
    CHECK(std::abs(r[0] + r[1]) < 1e-12);
  }
}

TEST_SUITE("relations") {
  TEST_CASE("first registry pair") {
    const RelationReport r = relation_check(P1, Q1);
    CHECK(!r.comm);
    CHECK(r.comm_l);
    CHECK(!r.comm_r);
    CHECK(!r.comm_w);
    CHECK(r.residuals.at("comm") > 0.0);
    CHECK(r.residuals.at("ab_in_comm_a") == 0.0);
  }

  TEST_CASE("fourth registry pair") {
    const ExactMatrix n1 = M("0, 0, 0, 0; 1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 0, 0");
    const ExactMatrix n2 = M("0, 0, 0, 0; -1, 0, 0, 0; 0, 0, 0, 0; 0, 0, 0, 0");
    const RelationReport r = relation_check(n2, n1);
    CHECK(!r.comm);
    CHECK(r.comm_w);
  }

  TEST_CASE("a pair (a, a) satisfies every flag") {
    const ExactMatrix a = M("1, 2, i; 0, -1/2, 3; 4, 0, 1");
    const RelationReport r = relation_check(a, a);
    CHECK((r.comm && r.comm_l && r.comm_r && r.comm_w && r.c1_pair && r.c2_pair && r.c3_pair));
  }

  TEST_CASE("flags match the definitions on random pairs") {
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
      const int n = static_cast<int>(rng.uniform(2, 4));
      const auto c = all_classes()[static_cast<std::size_t>(t % 5)];
      ExactMatrix a, b;
      if (c == RelationClass::none || (c == RelationClass::comm_w && n == 2)) {
        a = random_small_matrix(rng, n, n);
        b = random_small_matrix(rng, n, n);
      } else {
        const SampledPair sp = sample_pair(c, n, rng.next(), c != RelationClass::comm);
        a = sp.a;
        b = sp.b;
      }
      const RelationReport r = relation_check(a, b);
      const oracle::Flags f = oracle::flags(a, b);
      CHECK(r.comm == f.comm);
      CHECK(r.comm_l == f.comm_l);
      CHECK(r.comm_r == f.comm_r);
      CHECK(r.comm_w == f.comm_w);
    }
  }

  TEST_CASE("dimension 2 over {0, 1, -1}: weak commutativity forces commutativity") {
    // 3^8 pairs, exhaustively.
    int comm_w = 0, noncommuting_l = 0;
    for (int code = 0; code < 6561; ++code) {
      ExactMatrix a(2, 2), b(2, 2);
      int c = code;
      for (int k = 0; k < 8; ++k, c /= 3) (k < 4 ? a : b)(k % 4 / 2, k % 2) = GaussRational(c % 3 - 1);
      const RelationReport r = relation_check(a, b);
      const oracle::Flags f = oracle::flags(a, b);
      REQUIRE(r.comm_w == f.comm_w);
      REQUIRE(r.comm_l == f.comm_l);
      if (r.comm_w) {
        ++comm_w;
        CHECK(r.comm);
      }
      if (r.comm_l && !r.comm) ++noncommuting_l;
    }
    CHECK(comm_w > 0);
    CHECK(noncommuting_l > 0);
  }

  TEST_CASE("tolerance mode") {
    CMatrix p = to_cmatrix(P5), q = to_cmatrix(Q5);
    CMatrix noise = CMatrix::Zero(3, 3);
    noise(0, 2) = 1e-14;
    noise(1, 1) = -1e-14;
    CHECK(relation_check_tol(q + noise, p, 1e-10).comm_w);
    CHECK(!relation_check_tol(to_cmatrix(P1), to_cmatrix(Q1), 1e-10).comm_r);
    const RelationReport z = relation_check_tol(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), 1e-10);
    CHECK((z.comm && z.comm_l && z.comm_r && z.comm_w));
  }

  TEST_CASE("predicates") {
    RelationReport r;
    r.comm_w = true;
    CHECK(evaluate_predicate("comm_w_not_comm", r) == true);
    CHECK(evaluate_predicate("comm_and_not_comm", r) == false);
    CHECK(!evaluate_predicate("no_such_predicate", r).has_value());
    for (const auto& name : predicate_names()) CHECK(evaluate_predicate(name, r).has_value());
  }
}
