#pragma once

#include <optional>
#include <string>

#include "specdec/rational.hpp"

namespace specdec {

/// Options shared by the CLI subcommands; one command per process.
struct AnalysisConfig {
  std::string fractal;        // catalog name or definition-file path
  int level = 3;              // oracle / matrix level
  double lambda_max = 100.0;  // spectrum window
  int depth = 12;             // julia cover depth
  int k_max = 8;              // gap interval count
  std::optional<Rational> b_override;
  std::string method = "all";  // gaps: julia | crit | ratio | all
  bool dirichlet = false;
  int n0_override = -1;
  bool counting = false;      // spectrum: emit the counting function instead
  std::string format = "json";  // json | csv
  std::string out;              // output path; empty = stdout
  int precision = 12;
  int max_level = 8;
};

struct CommandResult {
  std::string output;
  int exit_code = 0;
};

CommandResult cmd_analyze(const AnalysisConfig& cfg);
CommandResult cmd_spectrum(const AnalysisConfig& cfg);
CommandResult cmd_julia(const AnalysisConfig& cfg);
CommandResult cmd_gaps(const AnalysisConfig& cfg);
CommandResult cmd_oracle(const AnalysisConfig& cfg);
CommandResult cmd_matrix(const AnalysisConfig& cfg);

/// Dispatches, writes the output (file or stdout), maps errors to exit code
/// 1 with the message on stderr.
int run_command(const std::string& name, const AnalysisConfig& cfg);

}  // namespace specdec
