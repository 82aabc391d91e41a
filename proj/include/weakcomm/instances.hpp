// Instance supply: the registry of worked examples, seeded generators for
// each relation class, and a deterministic witness search.
#ifndef WEAKCOMM_INSTANCES_HPP
#define WEAKCOMM_INSTANCES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weakcomm/exact.hpp"
#include "weakcomm/relations.hpp"
#include "weakcomm/shiftlab.hpp"

namespace weakcomm {

/// SplitMix64. Written out rather than taken from <random> so that streams
/// are byte-identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform integer in [lo, hi], by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(int numerator, int denominator) { return uniform(0, denominator - 1) < numerator; }
  /// Independent generator for a numbered sub-stream.
  Rng split(std::uint64_t stream) const;

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

private:
  std::uint64_t state_;
};

/// Small nonzero-biased scalar from {0, +-1, +-2, +-1/2} (and +-i when
/// complex is set).
GaussRational small_scalar(Rng& rng, bool complex = false);
ExactMatrix random_small_matrix(Rng& rng, Index rows, Index cols, bool complex = false);
/// Product of random elementary operations together with its exact inverse.
std::pair<ExactMatrix, ExactMatrix> random_unimodular(Rng& rng, Index n, int ops = 0);

// ---------------------------------------------------------------------------
// Relation classes

enum class RelationClass { comm, comm_l, comm_r, comm_w, none };

std::string_view class_name(RelationClass c);
std::optional<RelationClass> class_from_name(std::string_view name);
const std::vector<RelationClass>& all_classes();

/// comm/comm_l/comm_r/comm_w: that flag of relation_check(a, b) holds.
/// none: neither comm_l nor comm_r holds.
/// With require_noncommuting, additionally ab != ba.
bool in_class(const RelationReport& r, RelationClass c, bool require_noncommuting);

class SamplerExhausted : public std::runtime_error {
public:
  SamplerExhausted(const std::string& what, int attempts) : std::runtime_error(what), attempts(attempts) {}
  int attempts;
};

struct SampledPair {
  ExactMatrix a, b;
  std::string strategy;  ///< "structured", "constraint" or "rejection"
  int attempts = 0;      ///< candidates drawn, including this one
  int rejected = 0;      ///< candidates that failed re-verification
};

struct SamplerOptions {
  bool require_noncommuting = true;
  int budget = 4000;
  /// Test hook applied to each candidate before it is re-verified.
  std::function<void(ExactMatrix&, ExactMatrix&)> mutate;
};

/// Deterministic in (class, dim, seed). 2 <= dim <= 8. Every returned pair
/// has passed relation_check for the requested class. Throws
/// SamplerExhausted when the budget runs out, and immediately for a
/// noncommuting comm_w request at dim 2, where none exists.
SampledPair sample_pair(RelationClass c, int dim, std::uint64_t seed, const SamplerOptions& options);
SampledPair sample_pair(RelationClass c, int dim, std::uint64_t seed, bool require_noncommuting);

/// P J P^-1 with random Jordan blocks (eigenvalues often 0 or repeated).
ExactMatrix random_structured_matrix(Rng& rng, int dim);

// ---------------------------------------------------------------------------
// Nilpotent perturbations (T, N) with known spectra

enum class PerturbationKind {
  kernel_inclusion,  ///< T in comm(NT), N nilpotent
  square_zero,       ///< T in comm(NT), N^2 = 0
  comm_r,            ///< N in comm_r(T), N nilpotent
  comm_w,            ///< N in comm_w(T), N nilpotent
};

struct Perturbation {
  ExactMatrix t, n;
  /// Distinct nonzero eigenvalues of T as built (at least one).
  std::vector<GaussRational> nonzero_eigenvalues;
  /// Whether 0 is an eigenvalue of T as built.
  bool zero_eigenvalue = false;
  int nilpotency = 0;  ///< least p with N^p = 0 (1 when N = 0)
};

Perturbation sample_perturbation(PerturbationKind kind, int dim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Witness search

struct WitnessRecord {
  ExactMatrix a, b;
  std::string predicate;
  std::uint64_t seed = 0;
  std::int64_t samples_tried = 0;
  int dim = 0;
};

struct SearchOutcome {
  std::optional<WitnessRecord> witness;
  std::int64_t samples_tried = 0;
};

inline constexpr int kSearchStreams = 8;
/// Entries drawn from {0, +-1, +-2, +-1/2, +-i}, each pair at its own zero
/// density in {0, 1/8, ..., 6/8}. Sample g (0-based) comes
/// from stream g mod kSearchStreams; the smallest satisfying g wins, so the
/// result does not depend on the thread count. Throws std::invalid_argument
/// for an unknown predicate or budget < 1.
SearchOutcome search_witness(std::string_view predicate, int dim, std::int64_t budget, std::uint64_t seed,
                             int threads = 1);

// ---------------------------------------------------------------------------
// Registry of worked examples

enum class ExampleId {
  SEX_I_PQ, SEX_I_PS, SEX_II_TS, SEX_II_MN, SEX_III_TN, SEX_IV_N1N2, SEX_V_PQ,
  REMARK_TN, EX4_RN, EXNILP_T, EXNILP_N, EXNILP_Q,
};

const std::vector<ExampleId>& example_ids();
std::string_view example_name(ExampleId id);
std::optional<ExampleId> example_from_name(std::string_view name);

struct Claim {
  std::string statement;
  bool holds;
};

struct ExampleInstance {
  ExampleId id;
  int dim = 0;
  std::vector<std::pair<std::string, ExactMatrix>> matrices;
  /// l^2 operators behind the sections, for the shift examples.
  std::vector<std::pair<std::string, LTwoOpSpec>> operators;
  /// Names of the pair (a, b) whose relation_check is tabulated.
  std::string first, second;
  std::vector<Claim> claims;
  /// Modelling note (tail choice for l^2 examples).
  std::string model;

  const ExactMatrix& matrix(std::string_view name) const;
  bool all_hold() const;
  RelationReport report() const;
};

/// dim applies to the l^2 examples (defaults: SEX_II_TS 4, SEX_III_TN 2,
/// SEX_IV_N1N2 4, EX4_RN 5, EXNILP_* 10) and must not be given for the
/// matrix examples. params apply to SEX_II_MN only: (x, y), default (1, 1),
/// with y != 0 and x != -y. Throws std::invalid_argument otherwise.
ExampleInstance paper_example(ExampleId id, std::optional<int> dim = std::nullopt,
                              const std::vector<GaussRational>& params = {});

/// Registry file body: one "NAME = literal" line per matrix.
std::string registry_text(const ExampleInstance& ex);

}  // namespace weakcomm

#endif  // WEAKCOMM_INSTANCES_HPP
