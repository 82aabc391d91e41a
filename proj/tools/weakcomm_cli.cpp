// weakcomm: command-line front end.
//
//   weakcomm verify --dims 2,3,4 --samples 250 --seed 7 --format json
//   weakcomm example SEX_V_PQ
//   weakcomm search --predicate comm_w_not_comm --dim 3 --budget 10000 --seed 1
//   weakcomm truncate --op T+N --n 10,20,40
//   weakcomm example --export-registry data/registry
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weakcomm/cli.hpp"
#include "weakcomm/instances.hpp"

namespace {

int export_registry(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create " << dir << ": " << ec.message() << "\n";
    return 2;
  }
  for (weakcomm::ExampleId id : weakcomm::example_ids()) {
    const auto ex = weakcomm::paper_example(id);
    const fs::path path = fs::path(dir) / (std::string(weakcomm::example_name(id)) + ".txt");
    std::ofstream out(path, std::ios::binary);
    out << weakcomm::registry_text(ex);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  weakcomm::RunConfig cfg;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  std::string spec_file;
  std::string export_dir;
  std::string mutate;

  CLI::App app{"Weak-commutativity verification lab over exact Gaussian-rational matrices"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };

  auto* verify = app.add_subcommand("verify", "run the identity suite on sampled pairs");
  add_common(verify);
  auto* verify_seed = verify->add_option("--seed", seed, "run seed (required)");
  verify->add_option("--dims", cfg.dims, "matrix dimensions")->delimiter(',');
  verify->add_option("--samples", cfg.samples, "pairs per relation class and dimension");
  verify->add_option("--classes", cfg.classes, "relation classes (default: all)")->delimiter(',');
  verify->add_option("--identities", cfg.identities, "identities to check (default: all)")->delimiter(',');
  verify->add_option("--mutate", mutate, "run this identity in mutate mode (harness self-test)");
  verify->add_option("--threads", cfg.threads, "worker threads");
  verify->add_option("--exp-tol", cfg.exp_rel_tol, "relative Frobenius tolerance of the numeric exponential");
  verify->add_option("--radius-slack", cfg.radius_slack, "additive slack of the spectral radius bounds");

  auto* example = app.add_subcommand("example", "reproduce a registry example");
  add_common(example);
  example->add_option("id", cfg.example, "example id or 'all'");
  example->add_option("--dim", cfg.example_dim, "dimension of scalable examples");
  example->add_option("--param", cfg.example_params, "example parameter (repeatable)");
  example->add_option("--export-registry", export_dir, "write every example's registry file into this directory");

  auto* search = app.add_subcommand("search", "seeded search for a relation witness");
  add_common(search);
  auto* search_seed = search->add_option("--seed", seed, "run seed (required)");
  search->add_option("--predicate", cfg.predicate, "predicate name")->required();
  search->add_option("--dim", cfg.search_dim, "matrix dimension");
  search->add_option("--budget", cfg.budget, "number of sampled pairs");
  search->add_option("--threads", cfg.threads, "worker threads");

  auto* trunc = app.add_subcommand("truncate", "finite sections of a shift operator");
  add_common(trunc);
  trunc->add_option("--op", cfg.op, "sum of T, N, Q, e.g. T+N");
  trunc->add_option("--spec-file", spec_file, "operator spec file (overrides --op)");
  trunc->add_option("--n", cfg.sizes, "section sizes, ascending")->delimiter(',');
  trunc->add_option("--cluster-tol", cfg.cluster_tol, "eigenvalue clustering tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (verify_seed->count() || search_seed->count()) cfg.seed = seed;
  if (!mutate.empty()) cfg.mutate = mutate;
  cfg.format = format == "markdown" ? weakcomm::ReportFormat::markdown : weakcomm::ReportFormat::json;

  if (!export_dir.empty()) return export_registry(export_dir);

  if (!spec_file.empty()) {
    std::ifstream in(spec_file, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << spec_file << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg.spec_text = ss.str();
  }

  const weakcomm::RunResult res = weakcomm::run(cfg);
  if (out_path.empty()) {
    std::cout << res.report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << res.report;
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
  }
  return res.exit_code;
}
