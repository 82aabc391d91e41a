// Every identity on every sampled pair, with deterministic tallies.
#ifndef WEAKCOMM_SUITE_HPP
#define WEAKCOMM_SUITE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weakcomm/identities.hpp"
#include "weakcomm/instances.hpp"

namespace weakcomm {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::vector<int> dims = {2, 3, 4};
  int samples = 250;  ///< per (class, dim)
  std::vector<RelationClass> classes = all_classes();
  /// Empty means every identity.
  std::vector<IdentityId> identities;
  CheckOptions options;
  /// Identity whose checks run in mutate mode (harness self-test).
  std::optional<IdentityId> mutate;
  int threads = 1;
};

struct FailureRecord {
  std::string pair_class;
  int dim = 0;
  int index = 0;
  std::string params;
  std::string detail;
  std::string a, b;  ///< matrix literals
  double residual = 0.0;
};

struct IdentityTally {
  int pass = 0;
  int fail = 0;
  int vacuous = 0;
  double max_residual = 0.0;  ///< over passing checks
  std::optional<FailureRecord> first_failure;
};

struct SamplerTally {
  int instances = 0;
  std::int64_t attempts = 0;
  std::int64_t rejected = 0;
  std::map<std::string, int> strategies;
  int noncommuting = 0;
  std::vector<std::string> errors;
};

struct SuiteResult {
  std::map<std::string, IdentityTally> identities;  ///< keyed by identity name
  std::map<std::string, SamplerTally> samplers;     ///< keyed by "class/dim"
  int failures() const;
  int sampler_errors() const;
  bool ok() const { return failures() == 0 && sampler_errors() == 0; }
};

/// Whether the suite asks for noncommuting pairs of class c at dim d:
/// yes for comm_l and comm_r, and for comm_w from dim 3 on.
bool suite_requires_noncommuting(RelationClass c, int dim);

/// Seed of instance `index` of (c, dim) under the run seed.
std::uint64_t instance_seed(std::uint64_t seed, RelationClass c, int dim, int index);

/// Parameters tried for one identity on one pair.
std::vector<IdentityParams> parameter_sets(IdentityId id, const PairContext& ctx);

/// Nonzero eigenvalues of a that are Gaussian rationals with small
/// denominators, each certified by exact evaluation of the characteristic
/// polynomial.
std::vector<GaussRational> certified_rational_eigenvalues(const ExactMatrix& a, int max_count = 2);

std::string params_string(const IdentityParams& p);

SuiteResult verify_suite(const SuiteConfig& config);

}  // namespace weakcomm

#endif  // WEAKCOMM_SUITE_HPP
