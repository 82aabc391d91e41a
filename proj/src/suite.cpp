#include "weakcomm/suite.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "weakcomm/literal.hpp"
#include "weakcomm/numeric.hpp"
#include "weakcomm/poly.hpp"

namespace weakcomm {

int SuiteResult::failures() const {
  int f = 0;
  for (const auto& [name, t] : identities) f += t.fail;
  return f;
}

int SuiteResult::sampler_errors() const {
  int e = 0;
  for (const auto& [name, t] : samplers) e += static_cast<int>(t.errors.size());
  return e;
}

bool suite_requires_noncommuting(RelationClass c, int dim) {
  switch (c) {
    case RelationClass::comm_l:
    case RelationClass::comm_r: return true;
    case RelationClass::comm_w: return dim >= 3;
    default: return false;
  }
}

std::uint64_t instance_seed(std::uint64_t seed, RelationClass c, int dim, int index) {
  return Rng(seed)
      .split(static_cast<std::uint64_t>(c) * 1024 + static_cast<std::uint64_t>(dim))
      .split(static_cast<std::uint64_t>(index))
      .next();
}

std::vector<GaussRational> certified_rational_eigenvalues(const ExactMatrix& a, int max_count) {
  const ExactPoly p = poly_radical_nonzero(charpoly(a));
  std::vector<GaussRational> out;
  if (p.degree() < 1) return out;
  for (const Complex& z : polynomial_roots(p)) {
    for (long q = 1; q <= 12; ++q) {
      const GaussRational cand(Rational(std::lround(z.real() * q), q), Rational(std::lround(z.imag() * q), q));
      if (!cand.is_zero() && p(cand).is_zero()) {
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
        break;
      }
    }
    if (static_cast<int>(out.size()) >= max_count) break;
  }
  std::sort(out.begin(), out.end(), [](const GaussRational& x, const GaussRational& y) { return lex_compare(x, y) < 0; });
  return out;
}

std::vector<IdentityParams> parameter_sets(IdentityId id, const PairContext& ctx) {
  using I = IdentityId;
  auto ns = [](std::initializer_list<int> v) {
    std::vector<IdentityParams> out;
    for (int n : v) out.push_back({n, std::nullopt, std::nullopt});
    return out;
  };
  switch (id) {
    // The bound forms check every exponent up to n, so one n covers the rest.
    case I::L1_I_i: case I::L1_II_i: case I::L1_III_i: case I::L1_IV_i: case I::R_iii: case I::R_v:
      return ns({4});
    case I::L1_I_ii: case I::L1_II_ii: return ns({2, 3, 4});
    case I::L1_III_ii: case I::L1_IV_ii: return ns({2, 3, 4, 5});
    case I::NEWTON_R: case I::NEWTON_L: return ns({1, 2, 3, 4, 5, 6, 7, 8});
    case I::BINOM: case I::TELESCOPE: return ns({1, 3, 4, 5, 6});
    case I::R_i: case I::R_ii:
      return {{std::nullopt, GaussRational(0), GaussRational(1)},
              {std::nullopt, GaussRational(1), GaussRational::fraction(1, 2)}};
    case I::KER_INCL: {
      std::vector<IdentityParams> out;
      for (const auto& l : certified_rational_eigenvalues(ctx.a())) out.push_back({std::nullopt, l, std::nullopt});
      return out;
    }
    default: return {IdentityParams{}};
  }
}

std::string params_string(const IdentityParams& p) {
  std::string s;
  auto add = [&s](const std::string& kv) { s += (s.empty() ? "" : " ") + kv; };
  if (p.n) add("n=" + std::to_string(*p.n));
  if (p.lambda) add("lambda=" + p.lambda->to_string());
  if (p.mu) add("mu=" + p.mu->to_string());
  return s;
}

namespace {

struct CheckRecord {
  std::size_t identity;  ///< index into the identity list
  Verdict verdict;
  double residual;
  std::optional<FailureRecord> failure;
};

struct ItemResult {
  bool sampled = false;
  std::string error;
  SampledPair pair;
  std::vector<CheckRecord> checks;
};

struct Item {
  RelationClass c;
  int dim;
  int index;
};

ItemResult run_item(const Item& it, const SuiteConfig& cfg, const std::vector<IdentityId>& ids) {
  ItemResult r;
  try {
    r.pair = sample_pair(it.c, it.dim, instance_seed(cfg.seed, it.c, it.dim, it.index),
                         suite_requires_noncommuting(it.c, it.dim));
    r.sampled = true;
  } catch (const SamplerExhausted& e) {
    r.error = e.what();
    r.pair.attempts = e.attempts;
    return r;
  }
  const PairContext ctx(r.pair.a, r.pair.b);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    CheckOptions opt = cfg.options;
    opt.mutate = cfg.mutate && *cfg.mutate == ids[k];
    for (const IdentityParams& p : parameter_sets(ids[k], ctx)) {
      const IdentityResult res = check_identity(ids[k], ctx, p, opt);
      CheckRecord rec{k, res.verdict, res.residual, std::nullopt};
      if (res.verdict == Verdict::fail) {
        rec.failure = FailureRecord{std::string(class_name(it.c)), it.dim, it.index, params_string(p), res.detail,
                                    format_matrix(r.pair.a), format_matrix(r.pair.b), res.residual};
      }
      r.checks.push_back(std::move(rec));
    }
  }
  return r;
}

}  // namespace

SuiteResult verify_suite(const SuiteConfig& config) {
  std::vector<IdentityId> ids = config.identities;
  if (ids.empty())
    for (const auto& s : identity_specs()) ids.push_back(s.id);

  std::vector<Item> items;
  for (RelationClass c : config.classes)
    for (int d : config.dims)
      for (int i = 0; i < config.samples; ++i) items.push_back({c, d, i});

  std::vector<ItemResult> results(items.size());
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = run_item(items[i], config, ids);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < items.size(); i += static_cast<std::size_t>(threads))
          results[i] = run_item(items[i], config, ids);
      });
    for (auto& t : pool) t.join();
  }

  SuiteResult out;
  for (IdentityId id : ids) out.identities[std::string(identity_name(id))];
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    const ItemResult& r = results[i];
    SamplerTally& st = out.samplers[std::string(class_name(it.c)) + "/" + std::to_string(it.dim)];
    st.attempts += r.pair.attempts;
    if (!r.sampled) {
      st.errors.push_back("instance " + std::to_string(it.index) + ": " + r.error);
      continue;
    }
    ++st.instances;
    st.rejected += r.pair.rejected;
    ++st.strategies[r.pair.strategy];
    if (!exactly_equal(r.pair.a * r.pair.b, r.pair.b * r.pair.a)) ++st.noncommuting;
    for (const CheckRecord& c : r.checks) {
      IdentityTally& t = out.identities[std::string(identity_name(ids[c.identity]))];
      switch (c.verdict) {
        case Verdict::pass:
          ++t.pass;
          t.max_residual = std::max(t.max_residual, c.residual);
          break;
        case Verdict::fail:
          ++t.fail;
          if (!t.first_failure) t.first_failure = c.failure;
          break;
        case Verdict::vacuous: ++t.vacuous; break;
      }
    }
  }
  return out;
}

}  // namespace weakcomm
