// banachmc: batch driver for the Banach-space-valued integration experiments.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "banach/error.hpp"
#include "runner.hpp"

namespace {

struct Raw {
  std::string subcommand;
  std::string config;
  std::string format = "csv";
  bool no_timestamp = false;
};

}  // namespace

int main(int argc, char** argv) {
  using banach::cli::RunConfig;
  using banach::cli::Subcommand;

  CLI::App app{"Monte Carlo integration of Banach-space-valued functions and Rademacher-average "
               "experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  Raw raw;

  app.add_option("--config", raw.config, "flat key=value file; command-line flags override it");
  app.add_option("--algo", cfg.algo, "std | sep")->capture_default_str();
  app.add_option("--space", cfg.space, "scalar | lq:<q>:<m> (q may be inf)")->capture_default_str();
  app.add_option("--problem", cfg.problem,
                 "const | poly | expsum | trig | coordinate-mix | lacunary, with :key=value params")
      ->capture_default_str();
  app.add_option("--d", cfg.d, "dimension of the cube")->capture_default_str();
  app.add_option("--r", cfg.r, "smoothness / interpolation degree")->capture_default_str();
  app.add_option("--p", cfg.p, "moment exponent in [1,2]")->capture_default_str();
  app.add_option("--n", cfg.n, "sample count, list a,b,c or geometric grid a..bxq")
      ->capture_default_str();
  app.add_option("--k", cfg.k, "interp-check cell grid")->capture_default_str();
  app.add_option("--m", cfg.m, "foolset subdivision grid")->capture_default_str();
  app.add_option("--trials", cfg.trials, "independent repetitions")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--family", cfg.family, "basis | constant | random | all")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "partition fraction (default 8^d/(2*9^d))");
  app.add_option("--grid", cfg.grid, "evaluation grid points per axis")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--in", cfg.input, "fit: rates CSV to re-analyse");
  app.add_option("--out", cfg.out, "output file (written atomically); stdout when omitted");
  app.add_option("--format", raw.format, "csv | jsonl")->capture_default_str();
  app.add_flag("--no-timestamp", raw.no_timestamp, "omit the generated-at header line");

  const char* names[] = {"integrate", "rates", "interp-check", "typeconst",
                         "foolset",   "partition-demo", "lemma2", "fit"};
  const char* help[] = {
      "one estimate with the standard or separated Monte Carlo method",
      "error moments over an n grid and the fitted log-log slope",
      "sup-norm interpolation error over a k grid",
      "lower estimates of the equal-norm type constant",
      "integrals of the bump fooling family",
      "inductive partition of a vector family into low-moment blocks",
      "moments of sums of bounded mean-zero vectors",
      "re-fit a rates CSV offline",
  };
  for (std::size_t i = 0; i < std::size(names); ++i) {
    app.add_subcommand(names[i], help[i])->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    raw.subcommand = app.get_subcommands().front()->get_name();
    if (!raw.config.empty()) {
      // Re-apply explicit flags after the file so they take precedence.
      RunConfig from_file;
      banach::cli::apply_config_file(raw.config, from_file);
      cfg = from_file;
      for (const auto* opt : app.get_options()) {
        if (opt->count() == 0) continue;
        const std::string name = opt->get_single_name();
        if (name == "config" || name == "help" || name == "format" || name == "no-timestamp") {
          continue;
        }
        for (const auto& v : opt->results()) banach::cli::apply_option(name, v, cfg);
      }
    }
    cfg.subcommand = banach::cli::parse_subcommand(raw.subcommand);
    if (app.count("--format") || raw.config.empty()) cfg.format = banach::cli::parse_format(raw.format);
    if (raw.no_timestamp) cfg.timestamp = false;
  } catch (const banach::UsageError& e) {
    std::cerr << "banachmc: " << e.what() << '\n' << app.help();
    return 2;
  }

  return banach::cli::run(cfg, std::cout, std::cout, std::cerr);
}
