#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "banach/error.hpp"
#include "json.hpp"
#include "runner.hpp"

using namespace banach;
using namespace banach::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string summary, data, err;
};

Outcome run_config(const RunConfig& cfg) {
  std::ostringstream s, d, e;
  const int code = run(cfg, s, d, e);
  return {code, s.str(), d.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "banachmc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(BANACHMC_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string rates_csv(const std::vector<std::pair<std::size_t, double>>& rows) {
  std::string s = "# banachmc rates\nalgo,space,problem,d,r,p,n,trials,value,stderr,seed\n";
  for (auto [n, v] : rows) {
    s += "sep,scalar,expsum,1,1,2," + std::to_string(n) + ",10," + format_double(v) + ",0.001,0\n";
  }
  return s;
}

}  // namespace

TEST(ParseGrid, Spellings) {
  EXPECT_EQ(parse_grid("8..1024x2"), (std::vector<std::size_t>{8, 16, 32, 64, 128, 256, 512, 1024}));
  EXPECT_EQ(parse_grid("2..4x1"), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(parse_grid("3,5,9"), (std::vector<std::size_t>{3, 5, 9}));
  EXPECT_EQ(parse_grid("100"), (std::vector<std::size_t>{100}));
  EXPECT_EQ(parse_grid("1..100x10"), (std::vector<std::size_t>{1, 10, 100}));
  for (const char* bad : {"", "a", "8..", "8..4x2", "1..8x0", "0", "4,x"}) {
    EXPECT_THROW(parse_grid(bad), UsageError) << bad;
  }
}

TEST(Run, IntegrateConstant) {
  RunConfig cfg;
  cfg.problem = "const";
  cfg.n = "100";
  cfg.seed = 1;
  cfg.timestamp = false;
  const auto out = run_config(cfg);
  ASSERT_EQ(out.code, 0) << out.err;
  EXPECT_NE(out.data.find("std,scalar,const,1,0,100,1,1,0,100"), std::string::npos) << out.data;
  EXPECT_NE(out.summary.find("value=1 error=0"), std::string::npos) << out.summary;
}

TEST(Run, TypeconstBasisRatio) {
  RunConfig cfg;
  cfg.subcommand = Subcommand::TypeConst;
  cfg.space = "lq:1:8";
  cfg.p = 1;
  cfg.n = "8";
  cfg.family = "basis";
  cfg.timestamp = false;
  const auto out = run_config(cfg);
  ASSERT_EQ(out.code, 0) << out.err;
  EXPECT_NE(out.data.find("lq:1:8,1,8,basis,1,exact,0"), std::string::npos) << out.data;
}

TEST(Run, RatesWritesOneRowPerN) {
  RunConfig cfg;
  cfg.subcommand = Subcommand::Rates;
  cfg.algo = "sep";
  cfg.problem = "lacunary:s=1.05";
  cfg.r = 1;
  cfg.n = "8..1024x2";
  cfg.trials = 200;
  cfg.seed = 42;
  cfg.timestamp = false;
  const auto out = run_config(cfg);
  ASSERT_EQ(out.code, 0) << out.err;
  std::istringstream lines(out.data);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("algo,", 0) != 0) ++rows;
  }
  EXPECT_EQ(rows, 8);
  const auto fit = fit_and_summarize(out.data);
  EXPECT_NEAR(fit.report.slope, -1.5, 0.2);
  EXPECT_DOUBLE_EQ(fit.theoretical, -1.5);
  EXPECT_NE(out.summary.find("theoretical=-1.5"), std::string::npos) << out.summary;
}

TEST(Run, HeaderEchoesRelation) {
  for (Subcommand cmd : {Subcommand::Integrate, Subcommand::Rates, Subcommand::InterpCheck,
                         Subcommand::TypeConst, Subcommand::FoolSet, Subcommand::PartitionDemo,
                         Subcommand::Lemma2}) {
    RunConfig cfg;
    cfg.subcommand = cmd;
    cfg.timestamp = false;
    cfg.trials = 20;
    cfg.n = cmd == Subcommand::Rates ? "8,16,32" : (cmd == Subcommand::PartitionDemo ? "6" : "8");
    cfg.k = "2,4";
    cfg.m = "2,3";
    cfg.r = cmd == Subcommand::FoolSet ? 1 : 0;
    cfg.grid = 257;
    if (cmd == Subcommand::PartitionDemo) cfg.space = "lq:2:3";
    if (cmd == Subcommand::InterpCheck) cfg.r = 1;
    const auto out = run_config(cfg);
    ASSERT_EQ(out.code, 0) << to_string(cmd) << ": " << out.err;
    const std::string first = out.data.substr(0, out.data.find('\n'));
    EXPECT_EQ(first, "# banachmc " + std::string(to_string(cmd)) + ": " +
                         std::string(relation_for(cmd)));
    EXPECT_FALSE(relation_for(cmd).empty());
  }
}

TEST(Run, TimestampLineIsOptional) {
  RunConfig cfg;
  cfg.problem = "const";
  const auto with = run_config(cfg);
  EXPECT_NE(with.data.find("# generated "), std::string::npos);
  cfg.timestamp = false;
  const auto without = run_config(cfg);
  EXPECT_EQ(without.data.find("# generated "), std::string::npos);
}

TEST(Run, ByteIdenticalReruns) {
  RunConfig cfg;
  cfg.subcommand = Subcommand::Rates;
  cfg.problem = "expsum:seed=3";
  cfg.space = "lq:1.5:3";
  cfg.d = 2;
  cfg.n = "4..64x2";
  cfg.trials = 25;
  cfg.seed = 9;
  cfg.timestamp = false;
  const auto a = scratch("rerun_a.csv"), b = scratch("rerun_b.csv");
  cfg.out = a.string();
  ASSERT_EQ(run_config(cfg).code, 0);
  cfg.out = b.string();
  cfg.threads = 3;
  ASSERT_EQ(run_config(cfg).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Run, AtomicWriteLeavesNoTemporaries) {
  const fs::path dir = scratch("atomic");
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunConfig cfg;
  cfg.problem = "const";
  cfg.timestamp = false;
  cfg.out = (dir / "out.csv").string();
  ASSERT_EQ(run_config(cfg).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    EXPECT_EQ(e.path().filename(), "out.csv");
  }
  EXPECT_EQ(files, 1U);
}

TEST(Run, JsonLinesMirrorCsvColumns) {
  RunConfig cfg;
  cfg.subcommand = Subcommand::Rates;
  cfg.n = "8,16,32";
  cfg.trials = 10;
  cfg.timestamp = false;
  cfg.format = OutputFormat::Jsonl;
  const auto out = run_config(cfg);
  ASSERT_EQ(out.code, 0) << out.err;
  std::istringstream lines(out.data);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("{\"comment\":", 0), 0U);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto j = nlohmann::json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys.size(), 11U);
    for (const char* k : {"algo", "space", "problem", "d", "r", "p", "n", "trials", "value",
                          "stderr", "seed"}) {
      EXPECT_TRUE(j.contains(k)) << k;
    }
  }
  EXPECT_EQ(rows, 3);
}

TEST(Run, ExitCodes) {
  RunConfig cfg;
  cfg.problem = "nonsense";
  EXPECT_EQ(run_config(cfg).code, 2);
  cfg.problem = "const:c=nan";
  EXPECT_EQ(run_config(cfg).code, 3);
  cfg.problem = "const";
  cfg.space = "lq:0.5:2";
  EXPECT_EQ(run_config(cfg).code, 2);
  RunConfig part;
  part.subcommand = Subcommand::PartitionDemo;
  part.n = "21";
  part.space = "lq:2:3";
  EXPECT_EQ(run_config(part).code, 2);
}

TEST(Executable, ExitCodesAndConfigFile) {
  EXPECT_EQ(shell("integrate --problem const --n 10"), 0);
  EXPECT_EQ(shell("integrate --no-such-flag 1"), 2);
  EXPECT_EQ(shell("frobnicate"), 2);
  EXPECT_EQ(shell("integrate --problem const:c=nan"), 3);

  const fs::path conf = scratch("run.conf");
  const fs::path out = scratch("from_config.csv");
  spit(conf, "# integrate from a config file\nproblem=poly:deg=1\nn = 5\nseed=4\nout=" +
                 out.string() + "\nno-timestamp=true\n");
  ASSERT_EQ(shell("integrate --config " + conf.string()), 0);
  const std::string content = slurp(out);
  EXPECT_NE(content.find("std,scalar,poly:deg=1,1,0,5,4,"), std::string::npos) << content;
  // Flags override the file.
  ASSERT_EQ(shell("integrate --config " + conf.string() + " --seed 6"), 0);
  EXPECT_NE(slurp(out).find(",5,6,"), std::string::npos);
}

TEST(ConfigFile, Parsing) {
  const fs::path conf = scratch("parse.conf");
  spit(conf, "algo=sep\n\n  # comment\nr=2\nspace = lq:inf:4\nformat=jsonl\n");
  RunConfig cfg;
  apply_config_file(conf.string(), cfg);
  EXPECT_EQ(cfg.algo, "sep");
  EXPECT_EQ(cfg.r, 2);
  EXPECT_EQ(cfg.space, "lq:inf:4");
  EXPECT_EQ(cfg.format, OutputFormat::Jsonl);
  spit(conf, "bogus=1\n");
  EXPECT_THROW(apply_config_file(conf.string(), cfg), UsageError);
  spit(conf, "r\n");
  EXPECT_THROW(apply_config_file(conf.string(), cfg), UsageError);
  EXPECT_THROW(apply_config_file(scratch("missing.conf").string(), cfg), UsageError);
  EXPECT_THROW(apply_option("r", "two", cfg), UsageError);
}

TEST(Fit, ExactPowerLaw) {
  std::vector<std::pair<std::size_t, double>> rows;
  for (std::size_t n = 8; n <= 1024; n *= 2) rows.push_back({n, std::pow(n, -1.5)});
  const auto fit = fit_and_summarize(rates_csv(rows));
  EXPECT_NEAR(fit.report.slope, -1.5, 1e-9);
  EXPECT_NEAR(fit.report.r2, 1.0, 1e-12);
  EXPECT_EQ(fit.algo, "sep");
  EXPECT_EQ(fit.r, 1);
  EXPECT_DOUBLE_EQ(fit.theoretical, -1.5);

  const fs::path p = scratch("fit.csv");
  spit(p, rates_csv(rows));
  EXPECT_NEAR(fit_and_summarize_file(p.string()).report.slope, -1.5, 1e-9);
}

TEST(Fit, EmptyAndMalformedInput) {
  EXPECT_THROW(fit_and_summarize(""), UsageError);
  EXPECT_THROW(fit_and_summarize("# only a comment\n"), UsageError);
  EXPECT_THROW(fit_and_summarize("algo,space,problem,d,r,p,n,trials,value,stderr,seed\n"),
               UsageError);
  EXPECT_THROW(fit_and_summarize("algo,space,problem,d,r,p,n,trials,value\nstd,scalar,x,1,0,2,4,2,1\n"),
               UsageError);
  EXPECT_THROW(fit_and_summarize_file(scratch("does_not_exist.csv").string()), UsageError);
}

TEST(Fit, ZeroRowIsExcludedAndNoted) {
  auto csv = rates_csv({{8, 0.125}, {16, 0.0}, {32, 1.0 / 32}, {64, 1.0 / 64}});
  const auto fit = fit_and_summarize(csv);
  EXPECT_NEAR(fit.report.slope, -1.0, 1e-12);
  ASSERT_EQ(fit.report.notes.size(), 1U);
  RunConfig cfg;
  cfg.subcommand = Subcommand::Fit;
  const fs::path p = scratch("zero.csv");
  spit(p, csv);
  cfg.input = p.string();
  const auto out = run_config(cfg);
  EXPECT_EQ(out.code, 0) << out.err;
  EXPECT_NE(out.summary.find("excluded"), std::string::npos) << out.summary;
}
