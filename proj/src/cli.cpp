#include "weakcomm/cli.hpp"

#include <json.hpp>
#include <sstream>

#include "weakcomm/instances.hpp"
#include "weakcomm/literal.hpp"
#include "weakcomm/poly.hpp"
#include "weakcomm/shiftlab.hpp"
#include "weakcomm/suite.hpp"

namespace weakcomm {

namespace {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json relations_json(const RelationReport& r) {
  json j;
  j["comm"] = r.comm;
  j["ab_in_comm_a"] = r.ab_in_comm_a;
  j["ab_in_comm_b"] = r.ab_in_comm_b;
  j["ba_in_comm_a"] = r.ba_in_comm_a;
  j["ba_in_comm_b"] = r.ba_in_comm_b;
  j["comm_l"] = r.comm_l;
  j["comm_r"] = r.comm_r;
  j["comm_w"] = r.comm_w;
  j["c1"] = r.c1_pair;
  j["c2"] = r.c2_pair;
  j["c3"] = r.c3_pair;
  j["residuals"] = r.residuals;
  return j;
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|' || c == '*' || c == '_') out += '\\';
    out += c;
  }
  return out;
}

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------

json run_verify(const RunConfig& cfg, int& exit_code) {
  if (!cfg.seed) throw ConfigError("verify needs --seed");
  if (cfg.samples < 1) throw ConfigError("--samples must be positive");
  if (cfg.dims.empty()) throw ConfigError("--dims must not be empty");
  for (int d : cfg.dims)
    if (d < 2 || d > 8) throw ConfigError("dimensions must lie in [2, 8]");

  SuiteConfig sc;
  sc.seed = *cfg.seed;
  sc.dims = cfg.dims;
  sc.samples = cfg.samples;
  sc.threads = cfg.threads;
  sc.options.exp_rel_tol = cfg.exp_rel_tol;
  sc.options.radius_slack = cfg.radius_slack;
  if (!cfg.classes.empty()) {
    sc.classes.clear();
    for (const auto& c : cfg.classes) {
      const auto rc = class_from_name(c);
      if (!rc) throw ConfigError("unknown relation class '" + c + "'");
      sc.classes.push_back(*rc);
    }
  }
  for (const auto& name : cfg.identities) {
    const auto id = identity_from_name(name);
    if (!id) throw ConfigError("unknown identity '" + name + "'");
    sc.identities.push_back(*id);
  }
  if (cfg.mutate) {
    const auto id = identity_from_name(*cfg.mutate);
    if (!id) throw ConfigError("unknown identity '" + *cfg.mutate + "'");
    sc.mutate = *id;
  }

  const SuiteResult res = verify_suite(sc);

  json j;
  j["config"] = {{"seed", *cfg.seed},
                 {"dims", cfg.dims},
                 {"samples", cfg.samples},
                 {"exp_rel_tol", cfg.exp_rel_tol},
                 {"radius_slack", cfg.radius_slack},
                 {"mutate", cfg.mutate ? json(*cfg.mutate) : json(nullptr)}};
  json classes = json::array();
  for (RelationClass c : sc.classes) classes.push_back(class_name(c));
  j["config"]["classes"] = classes;

  int pass = 0, fail = 0, vacuous = 0;
  json ids = json::object();
  for (const auto& [name, t] : res.identities) {
    json e = {{"pass", t.pass}, {"fail", t.fail}, {"vacuous", t.vacuous}, {"max_residual", t.max_residual},
              {"hypothesis", std::string(identity_spec(*identity_from_name(name)).hypothesis)}};
    if (t.first_failure) {
      const FailureRecord& f = *t.first_failure;
      e["first_failure"] = {{"class", f.pair_class}, {"dim", f.dim},       {"index", f.index},
                            {"params", f.params},    {"detail", f.detail}, {"a", f.a},
                            {"b", f.b},              {"residual", f.residual}};
    } else {
      e["first_failure"] = nullptr;
    }
    ids[name] = e;
    pass += t.pass;
    fail += t.fail;
    vacuous += t.vacuous;
  }
  j["identities"] = ids;

  json samplers = json::object();
  for (const auto& [key, s] : res.samplers)
    samplers[key] = {{"instances", s.instances}, {"attempts", s.attempts}, {"rejected", s.rejected},
                     {"noncommuting", s.noncommuting}, {"strategies", s.strategies}, {"errors", s.errors}};
  j["samplers"] = samplers;
  j["summary"] = {{"checks", pass + fail + vacuous},
                  {"pass", pass},
                  {"fail", fail},
                  {"vacuous", vacuous},
                  {"sampler_errors", res.sampler_errors()},
                  {"ok", res.ok()}};
  exit_code = res.ok() ? 0 : 1;
  return j;
}

json example_json(const ExampleInstance& ex) {
  json j;
  j["id"] = example_name(ex.id);
  j["dim"] = ex.dim;
  j["model"] = ex.model;
  json mats = json::array();
  for (const auto& [name, m] : ex.matrices) mats.push_back({{"name", name}, {"literal", format_matrix(m)}});
  j["matrices"] = mats;
  json ops = json::array();
  for (const auto& [name, op] : ex.operators) ops.push_back({{"name", name}, {"spec", op.to_text()}});
  j["operators"] = ops;
  j["pair"] = {ex.first, ex.second};
  j["relations"] = relations_json(ex.report());
  json claims = json::array();
  for (const auto& c : ex.claims) claims.push_back({{"statement", c.statement}, {"holds", c.holds}});
  j["claims"] = claims;
  j["all_hold"] = ex.all_hold();
  return j;
}

json run_example(const RunConfig& cfg, int& exit_code) {
  std::vector<ExampleId> ids;
  if (cfg.example == "all") {
    if (cfg.example_dim || !cfg.example_params.empty())
      throw ConfigError("--dim and --param need a single example id");
    ids = example_ids();
  } else {
    const auto id = example_from_name(cfg.example);
    if (!id) throw ConfigError("unknown example '" + cfg.example + "'");
    ids.push_back(*id);
  }
  std::vector<GaussRational> params;
  for (const auto& p : cfg.example_params) {
    try {
      params.push_back(GaussRational::parse(p));
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  json list = json::array();
  bool ok = true;
  for (ExampleId id : ids) {
    ExampleInstance ex;
    try {
      ex = paper_example(id, cfg.example_dim, params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    ok = ok && ex.all_hold();
    list.push_back(example_json(ex));
  }
  exit_code = ok ? 0 : 1;
  return {{"examples", list}, {"all_hold", ok}};
}

json run_search(const RunConfig& cfg, int& exit_code) {
  if (!cfg.seed) throw ConfigError("search needs --seed");
  if (!evaluate_predicate(cfg.predicate, RelationReport{}))
    throw ConfigError("unknown predicate '" + cfg.predicate + "'");
  if (cfg.budget < 1) throw ConfigError("--budget must be positive");
  if (cfg.search_dim < 1 || cfg.search_dim > 8) throw ConfigError("--dim must lie in [1, 8]");
  const SearchOutcome out = search_witness(cfg.predicate, cfg.search_dim, cfg.budget, *cfg.seed, cfg.threads);
  json j = {{"predicate", cfg.predicate},
            {"dim", cfg.search_dim},
            {"budget", cfg.budget},
            {"seed", *cfg.seed},
            {"streams", kSearchStreams},
            {"found", out.witness.has_value()},
            {"samples_tried", out.samples_tried}};
  if (out.witness)
    j["witness"] = {{"a", format_matrix(out.witness->a)},
                    {"b", format_matrix(out.witness->b)},
                    {"relations", relations_json(relation_check(out.witness->a, out.witness->b))}};
  else
    j["witness"] = nullptr;
  exit_code = 0;
  return j;
}

LTwoOpSpec parse_op(const std::string& expr) {
  LTwoOpSpec spec;
  std::string term;
  std::istringstream in(expr);
  bool any = false;
  while (std::getline(in, term, '+')) {
    term.erase(0, term.find_first_not_of(' '));
    term.erase(term.find_last_not_of(' ') + 1);
    if (term == "T") spec = spec + exnilp_t();
    else if (term == "N") spec = spec + exnilp_n();
    else if (term == "Q") spec = spec + exnilp_q();
    else throw ConfigError("unknown operator '" + term + "' (use T, N, Q joined by '+')");
    any = true;
  }
  if (!any) throw ConfigError("empty operator expression");
  return spec;
}

json run_truncate(const RunConfig& cfg, int& exit_code) {
  LTwoOpSpec spec;
  if (cfg.spec_text) {
    try {
      spec = LTwoOpSpec::parse(*cfg.spec_text);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else {
    spec = parse_op(cfg.op);
  }
  if (cfg.sizes.empty()) throw ConfigError("--n must not be empty");
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] < std::max(2, spec.support() + 1)) throw ConfigError("section size too small for the operator");
    if (i && cfg.sizes[i] <= cfg.sizes[i - 1]) throw ConfigError("--n must be strictly ascending");
  }

  const auto conv = eigen_convergence(spec, cfg.sizes, cfg.cluster_tol);
  json rows = json::array();
  std::optional<SubspaceBasis> first_kernel;
  bool stable = true;
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    const int n = cfg.sizes[i];
    const ExactMatrix m = truncate(spec, n);
    const SubspaceBasis ker = finite_support_kernel(spec, n);
    if (!first_kernel) first_kernel = ker;
    else stable = stable && same_finite_support_span(*first_kernel, ker);
    json kv = json::array();
    for (Index c = 0; c < ker.dim(); ++c) {
      // Report the finitely supported part only.
      Index last = 0;
      for (Index r = 0; r < n; ++r)
        if (!ker.vectors()(r, c).is_zero()) last = r;
      kv.push_back(format_matrix(ker.vectors().col(c).head(last + 1).transpose()));
    }
    json spectrum = json::array();
    for (const auto& p : conv[i].spectrum.points)
      spectrum.push_back({{"re", p.value.real()}, {"im", p.value.imag()}, {"multiplicity", p.multiplicity}});
    const auto nil = nilpotency_degree(m);
    rows.push_back({{"n", n},
                    {"charpoly", charpoly(m).to_string()},
                    {"nilpotency_degree", nil ? json(*nil) : json(nullptr)},
                    {"square_zero", is_zero(ExactMatrix(m * m))},
                    {"finite_support_kernel", kv},
                    {"spectrum", spectrum},
                    {"max_modulus", conv[i].max_modulus}});
  }
  exit_code = 0;
  return {{"operator", spec.to_text()}, {"sizes", cfg.sizes}, {"rows", rows}, {"kernel_stable", stable},
          {"note", "section spectra are evidence only; finitely supported kernel vectors are exact"}};
}

// ---------------------------------------------------------------------------
// Markdown

void md_relations(std::ostringstream& os, const json& r) {
  os << "| flag | value |\n|---|---|\n";
  for (const char* k : {"comm", "ab_in_comm_a", "ab_in_comm_b", "ba_in_comm_a", "ba_in_comm_b", "comm_l", "comm_r",
                        "comm_w", "c1", "c2", "c3"})
    os << "| " << md_escape(k) << " | " << (r[k].get<bool>() ? "yes" : "no") << " |\n";
  os << "\nresiduals: ";
  bool first = true;
  for (const auto& [k, v] : r["residuals"].items()) {
    os << (first ? "" : ", ") << md_escape(k) << " = " << fixed(v.get<double>());
    first = false;
  }
  os << "\n";
}

std::string markdown(const json& j) {
  std::ostringstream os;
  const std::string cmd = j["command"];
  os << "# weakcomm " << cmd << "\n\n";
  if (j.contains("error")) {
    os << "configuration error: " << j["error"].get<std::string>() << "\n";
    return os.str();
  }
  if (cmd == "verify") {
    const json& c = j["config"];
    const json& s = j["summary"];
    os << "seed " << c["seed"] << ", dims " << c["dims"].dump() << ", " << c["samples"]
       << " samples per class and dimension";
    if (!c["mutate"].is_null()) os << ", mutated identity " << c["mutate"].get<std::string>();
    os << "\n\n";
    os << "checks " << s["checks"] << ": pass " << s["pass"] << ", fail " << s["fail"] << ", vacuous "
       << s["vacuous"] << ", sampler errors " << s["sampler_errors"] << "\n\n";
    os << "| identity | pass | fail | vacuous | max residual |\n|---|---|---|---|---|\n";
    for (const auto& [name, t] : j["identities"].items())
      os << "| " << md_escape(name) << " | " << t["pass"] << " | " << t["fail"] << " | " << t["vacuous"] << " | "
         << fixed(t["max_residual"].get<double>()) << " |\n";
    for (const auto& [name, t] : j["identities"].items()) {
      if (t["first_failure"].is_null()) continue;
      const json& f = t["first_failure"];
      os << "\n## first failure of " << md_escape(name) << "\n\n"
         << "class " << f["class"].get<std::string>() << ", dim " << f["dim"] << ", instance " << f["index"]
         << ", params `" << f["params"].get<std::string>() << "`\n\n"
         << "- detail: " << md_escape(f["detail"].get<std::string>()) << "\n"
         << "- a = `" << f["a"].get<std::string>() << "`\n"
         << "- b = `" << f["b"].get<std::string>() << "`\n";
    }
    os << "\n| sampler | instances | attempts | noncommuting | errors |\n|---|---|---|---|---|\n";
    for (const auto& [key, t] : j["samplers"].items())
      os << "| " << md_escape(key) << " | " << t["instances"] << " | " << t["attempts"] << " | "
         << t["noncommuting"] << " | " << t["errors"].size() << " |\n";
  } else if (cmd == "example") {
    for (const json& ex : j["examples"]) {
      os << "## " << md_escape(ex["id"].get<std::string>()) << " (dimension " << ex["dim"] << ")\n\n";
      if (!ex["model"].get<std::string>().empty()) os << ex["model"].get<std::string>() << "\n\n";
      for (const json& m : ex["matrices"])
        os << "```\n" << m["name"].get<std::string>() << " =\n"
           << pretty_matrix(parse_matrix(m["literal"].get<std::string>())) << "```\n\n";
      os << "relations of (" << ex["pair"][0].get<std::string>() << ", " << ex["pair"][1].get<std::string>()
         << "):\n\n";
      md_relations(os, ex["relations"]);
      os << "\n";
      for (const json& c : ex["claims"])
        os << "- [" << (c["holds"].get<bool>() ? "holds" : "FAILS") << "] " << md_escape(c["statement"]) << "\n";
      os << "\n";
    }
  } else if (cmd == "search") {
    os << "predicate `" << j["predicate"].get<std::string>() << "`, dim " << j["dim"] << ", budget " << j["budget"]
       << ", seed " << j["seed"] << "\n\n";
    if (j["found"].get<bool>()) {
      os << "witness after " << j["samples_tried"] << " samples\n\n"
         << "- a = `" << j["witness"]["a"].get<std::string>() << "`\n"
         << "- b = `" << j["witness"]["b"].get<std::string>() << "`\n\n";
      md_relations(os, j["witness"]["relations"]);
    } else {
      os << "no witness in " << j["samples_tried"] << " samples\n";
    }
  } else if (cmd == "truncate") {
    os << "```\n" << j["operator"].get<std::string>() << "```\n\n";
    os << "| n | charpoly | nilpotency | square zero | kernel vectors | max modulus |\n|---|---|---|---|---|---|\n";
    for (const json& r : j["rows"]) {
      std::string kv;
      for (const json& v : r["finite_support_kernel"]) kv += (kv.empty() ? "" : "; ") + ("`" + v.get<std::string>() + "`");
      os << "| " << r["n"] << " | " << md_escape(r["charpoly"].get<std::string>()) << " | "
         << (r["nilpotency_degree"].is_null() ? std::string("-") : r["nilpotency_degree"].dump()) << " | "
         << (r["square_zero"].get<bool>() ? "yes" : "no") << " | " << (kv.empty() ? "-" : kv) << " | "
         << fixed(r["max_modulus"].get<double>()) << " |\n";
    }
    os << "\nkernel stable across sizes: " << (j["kernel_stable"].get<bool>() ? "yes" : "no") << "\n\n"
       << j["note"].get<std::string>() << "\n";
  }
  os << "\nexit status " << j["exit_code"] << "\n";
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
  json j;
  int exit_code = 0;
  try {
    if (config.threads < 1) throw ConfigError("--threads must be positive");
    if (config.command == "verify") j = run_verify(config, exit_code);
    else if (config.command == "example") j = run_example(config, exit_code);
    else if (config.command == "search") j = run_search(config, exit_code);
    else if (config.command == "truncate") j = run_truncate(config, exit_code);
    else throw ConfigError("unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    j = json::object();
    j["error"] = e.what();
    exit_code = 2;
  }
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = config.command;
  j["exit_code"] = exit_code;
  RunResult r;
  r.exit_code = exit_code;
  r.report = config.format == ReportFormat::json ? j.dump(2) + "\n" : markdown(j);
  return r;
}

}  // namespace weakcomm
