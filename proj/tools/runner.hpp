#pragma once

// Experiment driver behind the banachmc executable. Every subcommand writes
// one self-contained data file (CSV or JSON lines) and prints a one-line
// summary.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "banach/montecarlo.hpp"

namespace banach::cli {

enum class Subcommand {
  Integrate,
  Rates,
  InterpCheck,
  TypeConst,
  FoolSet,
  PartitionDemo,
  Lemma2,
  Fit,
};

enum class OutputFormat { Csv, Jsonl };

std::string_view to_string(Subcommand cmd) noexcept;
Subcommand parse_subcommand(std::string_view name);
OutputFormat parse_format(std::string_view name);

struct RunConfig {
  Subcommand subcommand = Subcommand::Integrate;
  std::string algo = "std";
  std::string space = "scalar";
  std::string problem = "expsum";
  std::size_t d = 1;
  int r = 0;
  double p = 2.0;
  // Single value, comma list, or geometric grid `a..bxq`.
  std::string n = "64";
  // interp-check: k grid; foolset: m grid.
  std::string k = "2..64x2";
  std::string m = "2..4x1";
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string family = "all";
  // <= 0 selects 8^d / (2 * 9^d).
  double gamma = 0.0;
  std::size_t grid = 4097;
  std::size_t threads = 1;
  std::string input;  // fit
  std::string out;    // empty: data goes to the data stream
  OutputFormat format = OutputFormat::Csv;
  bool timestamp = true;
};

// `a..bxq` (a, a*q, ... <= b; q may be 1 for an arithmetic step of 1),
// `a,b,c`, or a single integer.
std::vector<std::size_t> parse_grid(std::string_view spelling);

// Reads a flat `key=value` file (blank lines and `#` comments ignored) and
// applies it to `config`. Keys use the command-line option names.
void apply_config_file(const std::string& path, RunConfig& config);
void apply_option(std::string_view key, std::string_view value, RunConfig& config);

// Comment line naming the relation a subcommand exercises.
std::string_view relation_for(Subcommand cmd) noexcept;

struct FitSummary {
  RateReport report;
  std::string algo;
  std::size_t d = 1;
  int r = 0;
  double p = 1.0;
  double theoretical = 0.0;
};

// Re-fits a `rates` CSV (schema algo,space,problem,d,r,p,n,trials,value,stderr,seed).
FitSummary fit_and_summarize(std::string_view csv_content);
FitSummary fit_and_summarize_file(const std::string& path);

// Dispatches `config`; returns the process exit code (0 ok, 2 usage, 3 numeric).
// Error messages go to `err`; the summary line to `summary`; data to the
// `out` file, or to `data` when no file is configured.
int run(const RunConfig& config, std::ostream& summary, std::ostream& data, std::ostream& err);

// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, std::string_view content);

}  // namespace banach::cli
