#include <algorithm>
#include <limits>

#include "weakcomm/instances.hpp"

namespace weakcomm {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

Rng Rng::split(std::uint64_t stream) const {
  Rng mixer(state_ ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
  return Rng(mixer.next());
}

GaussRational small_scalar(Rng& rng, bool complex) {
  static const std::vector<GaussRational> real = {0, 1, -1, 2, -2, GaussRational::fraction(1, 2),
                                                  GaussRational::fraction(-1, 2)};
  if (complex && rng.chance(1, 4)) return rng.chance(1, 2) ? GaussRational::imag_unit() : -GaussRational::imag_unit();
  return rng.pick(real);
}

namespace {

GaussRational nonzero_scalar(Rng& rng, bool complex = false) {
  GaussRational s;
  do s = small_scalar(rng, complex);
  while (s.is_zero());
  return s;
}

ExactMatrix sparse_small_matrix(Rng& rng, Index rows, Index cols, bool complex) {
  ExactMatrix m = ExactMatrix::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      if (rng.chance(1, 2)) m(i, j) = small_scalar(rng, complex);
  return m;
}

ExactMatrix block_diag(const std::vector<ExactMatrix>& blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  ExactMatrix m = zeros(n);
  Index at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return m;
}

/// Nilpotent shift on a block of size k: ones on the subdiagonal.
ExactMatrix jordan_shift(Index k) {
  ExactMatrix j = zeros(k);
  for (Index i = 0; i + 1 < k; ++i) j(i + 1, i) = 1;
  return j;
}

ExactMatrix strictly_lower(Rng& rng, Index k, bool complex) {
  ExactMatrix m = zeros(k);
  for (Index j = 0; j < k; ++j)
    for (Index i = j + 1; i < k; ++i)
      if (rng.chance(2, 3)) m(i, j) = small_scalar(rng, complex);
  return m;
}

struct Pair {
  ExactMatrix a, b;
};

void conjugate(Rng& rng, Pair& p) {
  const auto [u, v] = random_unimodular(rng, p.a.rows());
  p.a = u * p.a * v;
  p.b = u * p.b * v;
}

/// A commuting pair (C, c0 + c1 C + c2 C^2); nilpotent when asked.
Pair commuting_block(Rng& rng, Index k, bool complex, bool nilpotent) {
  Pair p;
  p.a = nilpotent || rng.chance(1, 3) ? strictly_lower(rng, k, complex) : random_small_matrix(rng, k, k, complex);
  if (!nilpotent && rng.chance(1, 2)) p.a.diagonal().array() += small_scalar(rng, complex);
  const GaussRational c0 = nilpotent ? GaussRational(0) : small_scalar(rng, complex);
  p.b = p.a * small_scalar(rng, complex) + p.a * p.a * small_scalar(rng, complex);
  p.b.diagonal().array() += c0;
  return p;
}

Pair direct_sum(const Pair& x, const Pair& y) {
  return {block_diag({x.a, y.a}), block_diag({x.b, y.b})};
}

void scale_pair(Rng& rng, Pair& p, bool complex) {
  p.a *= nonzero_scalar(rng, complex);
  p.b *= nonzero_scalar(rng, complex);
}

/// Matrices strictly block-lower for a flag of three blocks: every product of
/// three of them vanishes, so any two form a comm_w pair.
Pair flag_pair(Rng& rng, Index m, bool complex) {
  Index s1 = rng.uniform(1, m - 2);
  Index s2 = rng.uniform(1, m - s1 - 1);
  Index s3 = m - s1 - s2;
  auto one = [&] {
    ExactMatrix x = zeros(m);
    x.block(s1, 0, s2, s1) = random_small_matrix(rng, s2, s1, complex);
    x.block(s1 + s2, 0, s3, s1) = random_small_matrix(rng, s3, s1, complex);
    x.block(s1 + s2, s1, s3, s2) = random_small_matrix(rng, s3, s2, complex);
    return x;
  };
  Pair p;
  p.a = one();
  p.b = one();
  return p;
}

Pair comm_w_candidate(Rng& rng, int dim, bool complex) {
  Pair p;
  if (dim >= 3) {
    const Index m = rng.chance(1, 4) ? dim : rng.uniform(3, dim);
    p = flag_pair(rng, m, complex);
    if (m < dim) p = direct_sum(p, commuting_block(rng, dim - m, complex, rng.chance(1, 2)));
  } else {
    p = commuting_block(rng, dim, complex, rng.chance(1, 2));
  }
  if (rng.chance(1, 2)) std::swap(p.a, p.b);
  if (rng.chance(1, 4)) p = {p.b, ExactMatrix(p.a + p.b)};
  if (rng.chance(3, 4)) conjugate(rng, p);
  if (rng.chance(1, 2)) scale_pair(rng, p, complex);
  return p;
}

/// 2 x 2 comm_l seeds: M = [[1,1],[0,0]] with N = [[x,x],[y,y]], and the
/// block T = [[1,0],[1,0]], S = [[1,0],[0,0]].
Pair comm_l_seed(Rng& rng, bool complex) {
  Pair p;
  if (rng.chance(1, 2)) {
    GaussRational x, y;
    do {
      x = small_scalar(rng, complex);
      y = small_scalar(rng, complex);
    } while (y.is_zero() || (x + y).is_zero());
    p.a = ExactMatrix(2, 2);
    p.a << 1, 1, 0, 0;
    p.b = ExactMatrix(2, 2);
    p.b << x, x, y, y;
  } else {
    p.a = ExactMatrix(2, 2);
    p.a << 1, 0, 1, 0;
    p.b = ExactMatrix(2, 2);
    p.b << 1, 0, 0, 0;
  }
  return p;
}

/// a = p w^T, b = q w^T: ab = (w.q) a and ba = (w.p) b.
Pair rank_one_comm_l(Rng& rng, Index k, bool complex) {
  const ExactMatrix w = random_small_matrix(rng, k, 1, complex);
  return {ExactMatrix(random_small_matrix(rng, k, 1, complex) * w.transpose()),
          ExactMatrix(random_small_matrix(rng, k, 1, complex) * w.transpose())};
}

Pair comm_l_candidate(Rng& rng, int dim, bool complex) {
  Pair p;
  Index used;
  if (rng.chance(1, 2)) {
    p = comm_l_seed(rng, complex);
    used = 2;
  } else {
    used = rng.uniform(2, dim);
    p = rank_one_comm_l(rng, used, complex);
  }
  while (used < dim) {
    const Index k = rng.uniform(1, dim - used);
    Pair extra;
    if (k >= 2 && rng.chance(1, 3)) extra = rank_one_comm_l(rng, k, complex);
    else if (k >= 3 && rng.chance(1, 3)) extra = flag_pair(rng, k, complex);
    else extra = commuting_block(rng, k, complex, false);
    p = direct_sum(p, extra);
    used += k;
  }
  if (rng.chance(1, 2)) std::swap(p.a, p.b);
  if (rng.chance(3, 4)) conjugate(rng, p);
  if (rng.chance(1, 2)) scale_pair(rng, p, complex);
  return p;
}

Pair transpose_pair(const Pair& p) { return {p.a.transpose(), p.b.transpose()}; }

/// Column-major vec: vec(X B) with X unknown is (B^T kron I) vec X, and
/// vec(A X B) is (B^T kron A) vec X.
ExactMatrix kron(const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j) k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return k;
}

/// Draws a, solves the linear half of the comm_l (or comm_r) condition for
/// b, and leaves the quadratic half to re-verification.
Pair constraint_candidate(Rng& rng, int dim, bool right, bool complex) {
  const ExactMatrix a = random_structured_matrix(rng, dim);
  const ExactMatrix id = identity(dim);
  // comm_l: a b a - a^2 b = 0.  comm_r: b a^2 - a b a = 0.
  const ExactMatrix system = right ? ExactMatrix(kron((a * a).transpose(), id) - kron(a.transpose(), a))
                                   : ExactMatrix(kron(a.transpose(), a) - kron(id, a * a));
  const ExactMatrix basis = detail::null_space(system);
  ExactVector v = ExactVector::Zero(dim * dim);
  for (Index j = 0; j < basis.cols(); ++j)
    if (rng.chance(1, 3)) v += basis.col(j) * small_scalar(rng, complex);
  ExactMatrix b(dim, dim);
  for (Index j = 0; j < dim; ++j) b.col(j) = v.segment(j * dim, dim);
  return {a, b};
}

Pair rejection_candidate(Rng& rng, int dim, bool complex) {
  return {sparse_small_matrix(rng, dim, dim, complex), sparse_small_matrix(rng, dim, dim, complex)};
}

Pair comm_candidate(Rng& rng, int dim, bool complex) {
  Pair p = commuting_block(rng, dim, complex, false);
  if (rng.chance(1, 2)) p.a = random_structured_matrix(rng, dim), p.b = p.a * small_scalar(rng, complex);
  if (rng.chance(1, 2)) p.b.diagonal().array() += small_scalar(rng, complex);
  if (rng.chance(1, 2)) conjugate(rng, p);
  return p;
}

}  // namespace

ExactMatrix random_small_matrix(Rng& rng, Index rows, Index cols, bool complex) {
  ExactMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = small_scalar(rng, complex);
  return m;
}

std::pair<ExactMatrix, ExactMatrix> random_unimodular(Rng& rng, Index n, int ops) {
  ExactMatrix u = identity(n), v = identity(n);
  if (n < 2) return {u, v};
  if (ops <= 0) ops = static_cast<int>(n) + 1;
  for (int k = 0; k < ops; ++k) {
    const Index i = rng.uniform(0, n - 1);
    Index j = rng.uniform(0, n - 2);
    if (j >= i) ++j;
    const GaussRational c = rng.chance(1, 2) ? 1 : -1;
    // u <- E u with E = I + c e_i e_j^T;  v <- v E^-1.
    u.row(i) += c * u.row(j);
    v.col(j) -= c * v.col(i);
  }
  return {u, v};
}

std::string_view class_name(RelationClass c) {
  switch (c) {
    case RelationClass::comm: return "comm";
    case RelationClass::comm_l: return "comm_l";
    case RelationClass::comm_r: return "comm_r";
    case RelationClass::comm_w: return "comm_w";
    case RelationClass::none: return "none";
  }
  return "none";
}

std::optional<RelationClass> class_from_name(std::string_view name) {
  for (RelationClass c : all_classes())
    if (class_name(c) == name) return c;
  return std::nullopt;
}

const std::vector<RelationClass>& all_classes() {
  static const std::vector<RelationClass> v = {RelationClass::comm, RelationClass::comm_l, RelationClass::comm_r,
                                               RelationClass::comm_w, RelationClass::none};
  return v;
}

bool in_class(const RelationReport& r, RelationClass c, bool require_noncommuting) {
  if (require_noncommuting && r.comm) return false;
  switch (c) {
    case RelationClass::comm: return r.comm;
    case RelationClass::comm_l: return r.comm_l;
    case RelationClass::comm_r: return r.comm_r;
    case RelationClass::comm_w: return r.comm_w;
    case RelationClass::none: return !r.comm_l && !r.comm_r;
  }
  return false;
}

SampledPair sample_pair(RelationClass c, int dim, std::uint64_t seed, bool require_noncommuting) {
  SamplerOptions o;
  o.require_noncommuting = require_noncommuting;
  return sample_pair(c, dim, seed, o);
}

SampledPair sample_pair(RelationClass c, int dim, std::uint64_t seed, const SamplerOptions& options) {
  if (dim < 2 || dim > 8) throw std::invalid_argument("sample_pair: dim must lie in [2, 8]");
  const std::string label = std::string(class_name(c)) + " dim " + std::to_string(dim);
  if (options.require_noncommuting && c == RelationClass::comm)
    throw SamplerExhausted("sample_pair: a commuting pair cannot be noncommuting", 0);
  if (options.require_noncommuting && c == RelationClass::comm_w && dim == 2)
    throw SamplerExhausted("sample_pair: every comm_w pair of 2 x 2 matrices commutes", 0);

  const Rng base = Rng(seed).split(static_cast<std::uint64_t>(c) * 64 + static_cast<std::uint64_t>(dim));
  SampledPair out;
  for (int attempt = 0; attempt < options.budget; ++attempt) {
    Rng rng = base.split(static_cast<std::uint64_t>(attempt));
    const bool complex = rng.chance(1, 4);
    const auto roll = rng.uniform(0, 99);
    Pair p;
    std::string strategy = "structured";
    switch (c) {
      case RelationClass::comm:
        if (roll < 90) p = comm_candidate(rng, dim, complex);
        else strategy = "rejection", p = rejection_candidate(rng, dim, complex);
        break;
      case RelationClass::comm_w:
        if (roll < 90) p = comm_w_candidate(rng, dim, complex);
        else strategy = "rejection", p = rejection_candidate(rng, dim, complex);
        break;
      case RelationClass::comm_l:
      case RelationClass::comm_r: {
        const bool right = c == RelationClass::comm_r;
        if (roll < 70) {
          p = comm_l_candidate(rng, dim, complex);
          if (right) p = transpose_pair(p);
        } else if (roll < 90) {
          strategy = "constraint";
          p = constraint_candidate(rng, dim, right, complex);
        } else {
          strategy = "rejection";
          p = rejection_candidate(rng, dim, complex);
        }
        break;
      }
      case RelationClass::none:
        if (roll < 80) {
          strategy = "rejection";
          p = rejection_candidate(rng, dim, complex);
        } else {
          p = {random_structured_matrix(rng, dim), random_structured_matrix(rng, dim)};
        }
        break;
    }
    if (options.mutate) options.mutate(p.a, p.b);
    out.attempts = attempt + 1;
    if (!in_class(relation_check(p.a, p.b), c, options.require_noncommuting)) {
      ++out.rejected;
      continue;
    }
    out.a = std::move(p.a);
    out.b = std::move(p.b);
    out.strategy = std::move(strategy);
    return out;
  }
  throw SamplerExhausted("sample_pair: budget of " + std::to_string(options.budget) + " exhausted for " + label +
                             " (" + std::to_string(out.rejected) + " candidates rejected)",
                         out.attempts);
}

ExactMatrix random_structured_matrix(Rng& rng, int dim) {
  static const std::vector<GaussRational> eigen = {0, 0, 1, -1, 2, GaussRational::fraction(1, 2),
                                                   GaussRational::imag_unit()};
  std::vector<ExactMatrix> blocks;
  int used = 0;
  while (used < dim) {
    const int k = static_cast<int>(rng.uniform(1, std::min(3, dim - used)));
    ExactMatrix j = jordan_shift(k);
    j.diagonal().array() += rng.pick(eigen);
    blocks.push_back(j);
    used += k;
  }
  const auto [u, v] = random_unimodular(rng, dim);
  return u * block_diag(blocks) * v;
}

Perturbation sample_perturbation(PerturbationKind kind, int dim, std::uint64_t seed) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("sample_perturbation: dim must lie in [1, 8]");
  Rng rng = Rng(seed).split(1000 + static_cast<std::uint64_t>(kind) * 64 + static_cast<std::uint64_t>(dim));
  const bool complex = rng.chance(1, 4);
  Perturbation out;
  ExactMatrix t, n;

  if (kind == PerturbationKind::comm_w) {
    // Flag pair (both nilpotent) plus commuting blocks (lambda + d J, c J).
    const Index flag = dim >= 4 && rng.chance(2, 3) ? rng.uniform(3, dim - 1) : 0;
    std::vector<ExactMatrix> tb, nb;
    if (flag) {
      Pair f = flag_pair(rng, flag, complex);
      tb.push_back(f.a);
      nb.push_back(f.b);
    }
    Index used = flag;
    while (used < dim) {
      const Index k = rng.uniform(1, std::min<Index>(3, dim - used));
      const ExactMatrix j = jordan_shift(k);
      const GaussRational lambda = rng.chance(1, 5) ? GaussRational(0) : nonzero_scalar(rng, complex);
      ExactMatrix d = j * small_scalar(rng, complex);
      d.diagonal().array() += lambda;
      tb.push_back(d);
      nb.push_back(j * small_scalar(rng, complex));
      if (!lambda.is_zero()) out.nonzero_eigenvalues.push_back(lambda);
      used += k;
    }
    if (out.nonzero_eigenvalues.empty()) {
      tb.back().diagonal().array() += 1;
      out.nonzero_eigenvalues.push_back(1);
    }
    t = block_diag(tb);
    n = block_diag(nb);
  } else {
    // T = diag(D, 0) with D invertible; N = [[N11, N12], [0, N22]].
    const Index d1 = rng.uniform(1, dim);
    const Index d2 = dim - d1;
    std::vector<ExactMatrix> db, nb;
    Index used = 0;
    while (used < d1) {
      const Index k = rng.uniform(1, std::min<Index>(3, d1 - used));
      const ExactMatrix j = jordan_shift(k);
      const GaussRational lambda = nonzero_scalar(rng, complex);
      ExactMatrix d = j * small_scalar(rng, complex);
      d.diagonal().array() += lambda;
      db.push_back(d);
      nb.push_back(kind == PerturbationKind::square_zero ? zeros(k) : ExactMatrix(j * small_scalar(rng, complex)));
      out.nonzero_eigenvalues.push_back(lambda);
      used += k;
    }
    t = zeros(dim);
    t.topLeftCorner(d1, d1) = block_diag(db);
    n = zeros(dim);
    n.topLeftCorner(d1, d1) = block_diag(nb);
    if (d2 > 0) {
      ExactMatrix n22, n12;
      if (kind == PerturbationKind::square_zero) {
        // N22 = u v^T with v.u = 0; rows of N12 orthogonal to u.
        const ExactMatrix u = random_small_matrix(rng, d2, 1, complex);
        const ExactMatrix perp = detail::null_space(u.transpose());
        ExactVector v = ExactVector::Zero(d2);
        for (Index j = 0; j < perp.cols(); ++j) v += perp.col(j) * small_scalar(rng, complex);
        n22 = u * v.transpose();
        n12 = ExactMatrix::Zero(d1, d2);
        for (Index r = 0; r < d1; ++r)
          for (Index j = 0; j < perp.cols(); ++j) n12.row(r) += perp.col(j).transpose() * small_scalar(rng, complex);
      } else {
        n22 = strictly_lower(rng, d2, complex);
        const auto [u, v] = random_unimodular(rng, d2);
        n22 = u * n22 * v;
        if (kind == PerturbationKind::comm_r) {
          // Rows of N12 in the left kernel of N22.
          const ExactMatrix left = detail::null_space(n22.transpose());
          n12 = ExactMatrix::Zero(d1, d2);
          for (Index r = 0; r < d1; ++r)
            for (Index j = 0; j < left.cols(); ++j) n12.row(r) += left.col(j).transpose() * small_scalar(rng, complex);
        } else {
          n12 = random_small_matrix(rng, d1, d2, complex);
        }
      }
      n.topRightCorner(d1, d2) = n12;
      n.bottomRightCorner(d2, d2) = n22;
    }
  }

  // Distinct nonzero eigenvalues, in a fixed order.
  auto& ev = out.nonzero_eigenvalues;
  std::sort(ev.begin(), ev.end(), [](const GaussRational& x, const GaussRational& y) { return lex_compare(x, y) < 0; });
  ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
  out.zero_eigenvalue = rank(t) < dim;

  const auto [u, v] = random_unimodular(rng, dim);
  out.t = u * t * v;
  out.n = u * n * v;
  out.nilpotency = nilpotency_degree(out.n).value_or(0);

  const RelationReport tn = relation_check(out.t, out.n);
  bool ok = out.nilpotency > 0;
  switch (kind) {
    case PerturbationKind::kernel_inclusion:
      ok = ok && tn.ba_in_comm_a;
      break;
    case PerturbationKind::square_zero:
      ok = ok && tn.ba_in_comm_a && out.nilpotency <= 2;
      break;
    case PerturbationKind::comm_r:
      ok = ok && tn.comm_r;
      break;
    case PerturbationKind::comm_w:
      ok = ok && tn.comm_w;
      break;
  }
  if (!ok) throw std::logic_error("sample_perturbation: construction violated its hypothesis");
  return out;
}

}  // namespace weakcomm
