#include <CLI11.hpp>

#include <string>

#include "specdec/catalog.hpp"
#include "specdec/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral decimation toolkit for fully symmetric finitely ramified fractals"};
  app.require_subcommand(1);

  specdec::AnalysisConfig cfg;
  std::string b_override;

  auto add_fractal = [&](CLI::App* sub) {
    std::string names;
    for (const auto& n : specdec::catalog_names()) names += (names.empty() ? "" : ", ") + n;
    sub->add_option("fractal", cfg.fractal, "Catalog name (" + names + ") or definition file")
        ->required();
    sub->add_option("--format", cfg.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--precision", cfg.precision, "Decimal digits for rendered values")
        ->check(CLI::Range(1, 30));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Full pipeline report");
  add_fractal(analyze);
  analyze->add_option("--lambda-max", cfg.lambda_max, "Spectrum window for gap cross-checks");
  analyze->add_option("--k-max", cfg.k_max, "Gap intervals to compute");
  analyze->add_option("--b-override", b_override, "Override the branch bound b (rational)");
  analyze->add_option("--max-level", cfg.max_level, "Anchoring level cap");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Limit Laplacian eigenvalues");
  add_fractal(spectrum);
  spectrum->add_option("--lambda-max", cfg.lambda_max, "Report eigenvalues below this value");
  spectrum->add_option("--n0", cfg.n0_override, "Anchoring level override");
  spectrum->add_flag("--dirichlet", cfg.dirichlet, "Dirichlet variant (oracle path)");
  spectrum->add_flag("--counting", cfg.counting, "Emit the counting function CSV");
  spectrum->add_option("--max-level", cfg.max_level, "Anchoring level cap");

  CLI::App* julia = app.add_subcommand("julia", "Julia set covers and classification");
  add_fractal(julia);
  julia->add_option("--depth", cfg.depth, "Preimage cover depth")->check(CLI::Range(0, 20));

  CLI::App* gaps = app.add_subcommand("gaps", "Gap verdicts and certified gap intervals");
  add_fractal(gaps);
  gaps->add_option("--method", cfg.method, "julia | crit | ratio | all")
      ->check(CLI::IsMember({"julia", "crit", "ratio", "all"}));
  gaps->add_option("--k-max", cfg.k_max, "Gap intervals to compute");
  gaps->add_option("--b-override", b_override, "Override the branch bound b (rational)");
  gaps->add_option("--lambda-max", cfg.lambda_max, "Spectrum window for stray checks");
  gaps->add_option("--max-level", cfg.max_level, "Anchoring level cap");

  CLI::App* oracle = app.add_subcommand("oracle", "Dense eigensolve of M_n");
  add_fractal(oracle);
  oracle->add_option("--level", cfg.level, "Graph level n")->check(CLI::Range(0, 8));
  oracle->add_flag("--dirichlet", cfg.dirichlet, "Remove boundary rows and columns");

  CLI::App* matrix = app.add_subcommand("matrix", "Exact Laplacian entries as p/q CSV");
  add_fractal(matrix);
  matrix->add_option("--level", cfg.level, "Graph level n")->check(CLI::Range(0, 8));

  CLI11_PARSE(app, argc, argv);

  try {
    if (!b_override.empty()) cfg.b_override = specdec::rational_from_string(b_override);
  } catch (const specdec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    return specdec::run_command(sub->get_name(), cfg);
  }
  return 1;
}
