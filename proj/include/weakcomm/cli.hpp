// Batch entry point behind the command-line tool.
//
// Exit status: 0 when nothing failed (vacuous verdicts do not count), 1 on a
// verified failure, 2 on a configuration error. Reports carry no timings or
// thread counts, so the same configuration gives the same bytes.
#ifndef WEAKCOMM_CLI_HPP
#define WEAKCOMM_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weakcomm {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { json, markdown };

struct RunConfig {
  std::string command;  ///< verify, example, search, truncate
  std::optional<std::uint64_t> seed;
  ReportFormat format = ReportFormat::json;
  int threads = 1;

  // verify
  std::vector<int> dims = {2, 3, 4};
  int samples = 250;
  std::vector<std::string> classes;     ///< empty: all
  std::vector<std::string> identities;  ///< empty: all
  std::optional<std::string> mutate;    ///< identity run in mutate mode
  double exp_rel_tol = 1e-10;
  double radius_slack = 1e-8;

  // example
  std::string example = "all";
  std::optional<int> example_dim;
  std::vector<std::string> example_params;

  // search
  std::string predicate;
  int search_dim = 2;
  std::int64_t budget = 10000;

  // truncate
  std::string op = "T+N";
  std::optional<std::string> spec_text;  ///< overrides op
  std::vector<int> sizes = {10, 20, 40};
  double cluster_tol = 1e-8;
};

struct RunResult {
  int exit_code = 0;
  std::string report;
};

RunResult run(const RunConfig& config);

}  // namespace weakcomm

#endif  // WEAKCOMM_CLI_HPP
