#include "weakcomm/numeric.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace weakcomm {

CMatrix to_cmatrix(const ExactMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) c(i, j) = a(i, j).to_complex();
  return c;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw NumericError(std::string(what) + ": non-finite entry");
}

double frobenius_norm(const CMatrix& a) { return a.norm(); }

int SpectrumSet::total_multiplicity() const {
  int s = 0;
  for (const auto& p : points) s += p.multiplicity;
  return s;
}

double SpectrumSet::max_modulus() const {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(p.value));
  return m;
}

namespace {

bool lex_less(const Complex& a, const Complex& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

struct Cluster {
  Complex sum;
  int count;
  Complex centroid() const { return sum / static_cast<double>(count); }
};

}  // namespace

SpectrumSet SpectrumSet::cluster(const std::vector<Complex>& values, double tol) {
  std::vector<Complex> v = values;
  std::sort(v.begin(), v.end(), lex_less);

  // Single linkage via union-find over all pairs (n is small).
  std::vector<std::size_t> parent(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (std::abs(v[i] - v[j]) <= tol) parent[find(j)] = find(i);

  std::vector<Cluster> clusters;
  std::vector<std::ptrdiff_t> slot(v.size(), -1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
      clusters.push_back({0.0, 0});
    }
    auto& c = clusters[static_cast<std::size_t>(slot[r])];
    c.sum += v[i];
    ++c.count;
  }

  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j)
        if (std::abs(clusters[i].centroid() - clusters[j].centroid()) <= tol) {
          clusters[i].sum += clusters[j].sum;
          clusters[i].count += clusters[j].count;
          clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }

  SpectrumSet s;
  s.cluster_tol = tol;
  for (const auto& c : clusters) s.points.push_back({c.centroid(), c.count});
  std::sort(s.points.begin(), s.points.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return lex_less(a.value, b.value); });
  return s;
}

namespace {

bool exactly_triangular(const CMatrix& a) {
  bool upper = true;
  bool lower = true;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      if (i > j && a(i, j) != Complex(0.0)) upper = false;
      if (i < j && a(i, j) != Complex(0.0)) lower = false;
    }
  return upper || lower;
}

}  // namespace

SpectrumSet eigenvalues(const CMatrix& a, double cluster_tol) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("eigenvalues: matrix must be square and nonempty");
  require_finite(a, "eigenvalues");

  const double scale = Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
  const double tol = cluster_tol * (scale > 0.0 ? scale : 1.0);

  std::vector<Complex> values;
  if (exactly_triangular(a)) {
    for (Index i = 0; i < a.rows(); ++i) values.push_back(a(i, i));
  } else {
    const CMatrix scaled = a / scale;
    Eigen::ComplexEigenSolver<CMatrix> solver(scaled, false);
    if (solver.info() != Eigen::Success) throw NumericError("eigenvalues: QR iteration did not converge");
    for (Index i = 0; i < a.rows(); ++i) values.push_back(solver.eigenvalues()(i) * scale);
  }
  return SpectrumSet::cluster(values, tol);
}

double spectral_radius(const CMatrix& a) { return eigenvalues(a).max_modulus(); }

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix is not square");
  require_finite(a, "expm");
  CMatrix e = a.exp();
  if (!e.allFinite()) throw NumericError("expm: overflow");
  return e;
}

bool spectrum_compare(const SpectrumSet& s1, const SpectrumSet& s2, double exclude_zero_radius) {
  const double tol = std::max(s1.cluster_tol, s2.cluster_tol);
  auto covered = [&](const SpectrumSet& from, const SpectrumSet& into) {
    for (const auto& p : from.points) {
      if (std::abs(p.value) <= exclude_zero_radius) continue;
      const bool hit = std::any_of(into.points.begin(), into.points.end(), [&](const SpectrumPoint& q) {
        return std::abs(q.value) > exclude_zero_radius && std::abs(q.value - p.value) <= tol;
      });
      if (!hit) return false;
    }
    return true;
  };
  return covered(s1, s2) && covered(s2, s1);
}

std::vector<Complex> polynomial_roots(const ExactPoly& p) {
  if (p.is_zero()) throw std::domain_error("polynomial_roots: zero polynomial");
  const ExactPoly m = p.monic();
  const int d = m.degree();
  if (d == 0) return {};
  if (d == 1) return {(-m.coeff(0)).to_complex()};
  CMatrix companion = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -m.coeff(i).to_complex();
  require_finite(companion, "polynomial_roots");
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericError("polynomial_roots: QR iteration did not converge");
  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  return roots;
}

double spectral_radius_exact(const ExactMatrix& a) {
  const ExactPoly rad = poly_radical_nonzero(charpoly(a));
  double r = 0.0;
  for (const auto& z : polynomial_roots(rad)) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace weakcomm
