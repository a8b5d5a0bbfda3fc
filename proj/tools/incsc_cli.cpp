#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "incsc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Incremental strong-connectivity workload tool"};
  app.require_subcommand(1);

  // run
  std::string script_path;
  incsc::cli::RunOptions opts;
  auto* run = app.add_subcommand("run", "Replay a workload script");
  run->add_option("file", script_path, "script file, or '-' for stdin")->required();
  run->add_flag("--oracle", opts.oracle, "diff every answer against the brute-force oracle");
  run->add_flag("--stats", opts.stats, "print update/query counters to stderr");
  run->add_flag("--bench", opts.bench, "time incremental vs full recompute per insertion");

  // generate
  int gen_n = 0;
  long long gen_m = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_model = "uniform";
  double gen_rate = 0.0;
  auto* gen = app.add_subcommand("generate", "Emit a reproducible workload script");
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--m", gen_m, "edge insertions")->required();
  gen->add_option("--seed", gen_seed, "random seed")->required();
  gen->add_option("--model", gen_model, "uniform | cycle-first");
  gen->add_option("--query-rate", gen_rate, "probability of a query after each insertion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) {
    incsc::cli::RunResult result;
    if (script_path == "-") {
      result = incsc::cli::run_script(std::cin, opts);
    } else {
      std::ifstream in(script_path);
      if (!in) {
        std::cerr << "cannot open '" << script_path << "'\n";
        return 2;
      }
      result = incsc::cli::run_script(in, opts);
    }
    std::cout << result.output;
    std::cerr << result.diagnostics;
    return result.exit_code;
  }

  std::string error;
  std::string script = incsc::cli::generate_script(gen_n, gen_m, gen_seed,
                                                   gen_model, gen_rate, &error);
  if (!error.empty()) {
    std::cerr << error << '\n';
    return 2;
  }
  std::cout << script;
  return 0;
}
