#include <algorithm>
#include <thread>

#include "weakcomm/instances.hpp"

namespace weakcomm {

namespace {

const std::vector<GaussRational>& search_alphabet() {
  static const std::vector<GaussRational> v = {
      0, 1, -1, 2, -2, GaussRational::fraction(1, 2), GaussRational::fraction(-1, 2),
      GaussRational::imag_unit(), -GaussRational::imag_unit()};
  return v;
}

// Zero probability zeros/8 per entry, fixed per pair. Sparse draws reach
// nilpotent flag patterns that dense draws almost never hit.
ExactMatrix draw(Rng& rng, int dim, int zeros) {
  ExactMatrix m(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i)
      m(i, j) = rng.chance(zeros, 8) ? GaussRational(0) : rng.pick(search_alphabet());
  return m;
}

/// Smallest global index satisfying the predicate within one stream, or -1.
std::int64_t scan_stream(std::string_view predicate, int dim, std::int64_t budget, std::uint64_t seed, int stream,
                         ExactMatrix& a, ExactMatrix& b) {
  Rng rng = Rng(seed).split(static_cast<std::uint64_t>(stream));
  for (std::int64_t g = stream; g < budget; g += kSearchStreams) {
    const int zeros = static_cast<int>(rng.uniform(0, 6));
    a = draw(rng, dim, zeros);
    b = draw(rng, dim, zeros);
    if (*evaluate_predicate(predicate, relation_check(a, b))) return g;
  }
  return -1;
}

}  // namespace

SearchOutcome search_witness(std::string_view predicate, int dim, std::int64_t budget, std::uint64_t seed,
                             int threads) {
  if (!evaluate_predicate(predicate, RelationReport{}))
    throw std::invalid_argument("search_witness: unknown predicate '" + std::string(predicate) + "'");
  if (budget < 1) throw std::invalid_argument("search_witness: budget must be positive");
  if (dim < 1 || dim > 8) throw std::invalid_argument("search_witness: dim must lie in [1, 8]");

  struct Hit {
    std::int64_t g = -1;
    ExactMatrix a, b;
  };
  std::vector<Hit> hits(kSearchStreams);
  auto run = [&](int s) { hits[s].g = scan_stream(predicate, dim, budget, seed, s, hits[s].a, hits[s].b); };

  threads = std::clamp(threads, 1, kSearchStreams);
  if (threads == 1) {
    for (int s = 0; s < kSearchStreams; ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < kSearchStreams; s += threads) run(s);
      });
    for (auto& t : pool) t.join();
  }

  const Hit* best = nullptr;
  for (const auto& h : hits)
    if (h.g >= 0 && (!best || h.g < best->g)) best = &h;

  SearchOutcome out;
  if (!best) {
    out.samples_tried = budget;
    return out;
  }
  out.samples_tried = best->g + 1;
  if (!*evaluate_predicate(predicate, relation_check(best->a, best->b)))
    throw std::logic_error("search_witness: witness failed re-verification");
  out.witness = WitnessRecord{best->a, best->b, std::string(predicate), seed, out.samples_tried, dim};
  return out;
}

}  // namespace weakcomm
