#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "json.hpp"

#include "banach/error.hpp"
#include "banach/functions.hpp"
#include "banach/interp.hpp"
#include "banach/rademacher.hpp"
#include "banach/rng.hpp"
#include "banach/stats.hpp"

namespace banach::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::pair<Subcommand, std::string_view> kSubcommands[] = {
    {Subcommand::Integrate, "integrate"},     {Subcommand::Rates, "rates"},
    {Subcommand::InterpCheck, "interp-check"}, {Subcommand::TypeConst, "typeconst"},
    {Subcommand::FoolSet, "foolset"},         {Subcommand::PartitionDemo, "partition-demo"},
    {Subcommand::Lemma2, "lemma2"},           {Subcommand::Fit, "fit"},
};

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(Subcommand cmd) noexcept {
  for (const auto& [c, name] : kSubcommands) {
    if (c == cmd) return name;
  }
  return "?";
}

Subcommand parse_subcommand(std::string_view name) {
  for (const auto& [c, n] : kSubcommands) {
    if (n == name) return c;
  }
  throw UsageError("unknown subcommand '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "jsonl") return OutputFormat::Jsonl;
  throw UsageError("unknown format '" + std::string(name) + "' (expected csv or jsonl)");
}

std::vector<std::size_t> parse_grid(std::string_view spelling) {
  const std::string s = trim(spelling);
  std::vector<std::size_t> out;
  if (s.empty()) throw UsageError("empty grid");
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const auto x = s.find('x', dots);
    if (x == std::string::npos) throw UsageError("grid '" + s + "' must look like a..bxq");
    const auto a = parse_number<std::size_t>(std::string_view(s).substr(0, dots), "grid start");
    const auto b = parse_number<std::size_t>(std::string_view(s).substr(dots + 2, x - dots - 2),
                                             "grid end");
    const auto q = parse_number<std::size_t>(std::string_view(s).substr(x + 1), "grid ratio");
    if (a < 1 || b < a || q < 1) throw UsageError("grid '" + s + "' needs 1 <= a <= b and q >= 1");
    for (std::size_t v = a; v <= b; v = q == 1 ? v + 1 : v * q) {
      out.push_back(v);
      if (q > 1 && v > b / q) break;
    }
    return out;
  }
  std::string_view rest = s;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto v = parse_number<std::size_t>(trim(rest.substr(0, comma)), "grid value");
    if (v < 1) throw UsageError("grid values must be >= 1");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

void apply_option(std::string_view key, std::string_view value, RunConfig& c) {
  const std::string v = trim(value);
  if (key == "subcommand") c.subcommand = parse_subcommand(v);
  else if (key == "algo") c.algo = v;
  else if (key == "space") c.space = v;
  else if (key == "problem") c.problem = v;
  else if (key == "d") c.d = parse_number<std::size_t>(v, "d");
  else if (key == "r") c.r = parse_number<int>(v, "r");
  else if (key == "p") c.p = parse_number<double>(v, "p");
  else if (key == "n") c.n = v;
  else if (key == "k") c.k = v;
  else if (key == "m") c.m = v;
  else if (key == "trials") c.trials = parse_number<std::size_t>(v, "trials");
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(v, "seed");
  else if (key == "family") c.family = v;
  else if (key == "gamma") c.gamma = parse_number<double>(v, "gamma");
  else if (key == "grid") c.grid = parse_number<std::size_t>(v, "grid");
  else if (key == "threads") c.threads = parse_number<std::size_t>(v, "threads");
  else if (key == "in") c.input = v;
  else if (key == "out") c.out = v;
  else if (key == "format") c.format = parse_format(v);
  else if (key == "no-timestamp") c.timestamp = !(v.empty() || v == "true" || v == "1");
  else throw UsageError("unknown option '" + std::string(key) + "'");
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_option(trim(std::string_view(t).substr(0, eq)), std::string_view(t).substr(eq + 1), config);
  }
}

std::string_view relation_for(Subcommand cmd) noexcept {
  switch (cmd) {
    case Subcommand::Integrate:
      return "A0 f = (1/n) sum_i f(xi_i); Ar f = S(P_k f) + A0(f - P_k f), k = ceil(n^(1/d))";
    case Subcommand::Rates:
    case Subcommand::Fit:
      return "(E||S f - A_n f||^p)^(1/p) <= c sigma_{p,n}(X) n^(-r/d-1+1/p) ||f||_{C^r}";
    case Subcommand::InterpCheck:
      return "sup_{f in B_{C^r}} ||f - P_k f||_{C(Q,X)} <= c k^(-r)";
    case Subcommand::TypeConst:
      return "(E||sum eps_i x_i||^p)^(1/p) <= sigma_{p,n}(X) n^(1/p) max_i ||x_i||";
    case Subcommand::FoolSet:
      return "S f_i = c0^-1 sigma m^(-r-d) ||(x_i)||_inf^-1 x_i, f_i = c0^-1 m^-r ||(x_i)||_inf^-1 x_i psi(m(t - t_i))";
    case Subcommand::PartitionDemo:
      return "|I_l| >= gamma |K \\ U_{j<l} I_j|, |K \\ U_{j<=l} I_j| <= (1-gamma)^l n, E||sum eps_i x_i|| <= sum_l E||sum_{I_l} eps_i x_i||";
    case Subcommand::Lemma2:
      return "(E||sum eta_i||^p)^(1/p) <= c sigma_{p,n}(X) n^(1/p) max_i ||eta_i||_inf";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string csv_field(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_float()) {
    s = format_double(v.get<double>());
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return s;
}

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Json> values) {
    if (values.size() != columns_.size()) throw std::logic_error("table row has the wrong width");
    rows_.push_back(std::move(values));
  }

  std::string render(OutputFormat format, const std::vector<std::string>& header) const {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
      for (const auto& h : header) os << "# " << h << '\n';
      for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
      os << '\n';
      for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
        os << '\n';
      }
    } else {
      for (const auto& h : header) os << Json{{"comment", h}}.dump() << '\n';
      for (const auto& row : rows_) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = row[c];
        os << obj.dump() << '\n';
      }
    }
    return os.str();
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Json>> rows_;
};

std::vector<std::string> header_lines(const RunConfig& c) {
  std::vector<std::string> lines;
  lines.push_back("banachmc " + std::string(to_string(c.subcommand)) + ": " +
                  std::string(relation_for(c.subcommand)));
  if (c.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << "generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    lines.push_back(os.str());
  }
  return lines;
}

void emit(const RunConfig& c, const Table& table, std::ostream& data) {
  const std::string content = table.render(c.format, header_lines(c));
  if (c.out.empty()) {
    data << content;
  } else {
    write_atomically(c.out, content);
  }
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

double resolved_gamma(const RunConfig& c) { return c.gamma > 0.0 ? c.gamma : default_gamma(c.d); }

std::size_t single_n(const RunConfig& c) {
  const auto grid = parse_grid(c.n);
  if (grid.size() != 1) throw UsageError("this subcommand takes a single --n value");
  return grid.front();
}

int effective_r(Algorithm algo, int r) { return algo == Algorithm::Standard ? 0 : r; }

// ---------------------------------------------------------------------------
// Subcommands

void run_integrate(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const auto f = registry_problem(c.problem, c.d, space);
  const auto algo = parse_algorithm(c.algo);
  const std::size_t n = single_n(c);
  const int r = effective_r(algo, c.r);

  Element value;
  std::size_t cardinality = n;
  if (algo == Algorithm::Standard) {
    value = standard_mc(f, n, c.seed);
  } else {
    const SeparatedMonteCarlo estimator(f, n, r);
    value = estimator.estimate(c.seed);
    cardinality = estimator.cardinality();
  }
  Json error = nullptr;
  if (f.exact_integral) error = norm(space, axpy(space, -1.0, value, *f.exact_integral));

  Table table({"algo", "space", "problem", "d", "r", "n", "seed", "value", "error", "cardinality"});
  table.add({std::string(to_string(algo)), space.to_string(), f.name, c.d, r, n, c.seed,
             format_element(value), error, cardinality});
  emit(c, table, data);
  summary << "integrate " << to_string(algo) << ' ' << f.name << " n=" << n
          << " value=" << format_element(value);
  if (!error.is_null()) summary << " error=" << format_double(error.get<double>());
  summary << " cardinality=" << cardinality << '\n';
}

void run_rates(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const auto f = registry_problem(c.problem, c.d, space);
  const auto algo = parse_algorithm(c.algo);
  const auto ns = parse_grid(c.n);
  const int r = effective_r(algo, c.r);
  ErrorMomentOptions options;
  options.threads = c.threads;
  const RateReport report = rate_experiment(algo, f, ns, r, c.p, c.trials, c.seed, options);

  Table table({"algo", "space", "problem", "d", "r", "p", "n", "trials", "value", "stderr", "seed"});
  std::vector<RatePoint> first_moments;
  for (const auto& pt : report.points) {
    table.add({std::string(to_string(algo)), space.to_string(), f.name, c.d, r, c.p, pt.n, c.trials,
               pt.moment.value, pt.moment.std_error, c.seed});
    ErrorMoment m1 = pt.moment;
    m1.p = 1.0;
    m1.value = pt.moment.mean_norm;
    first_moments.push_back({pt.n, m1});
  }
  emit(c, table, data);
  const double theory = theoretical_exponent(r, c.d, c.p);
  summary << "rates " << to_string(algo) << ' ' << f.name << " d=" << c.d << " r=" << r
          << " p=" << format_double(c.p) << ": slope=" << fixed(report.slope)
          << " r2=" << fixed(report.r2) << " theoretical=" << fixed(theory);
  try {
    const RateReport first = rate_fit(first_moments);
    summary << " first-moment-slope=" << fixed(first.slope);
  } catch (const UsageError&) {
    summary << " first-moment-slope=n/a";
  }
  for (const auto& note : report.notes) summary << " [" << note << "]";
  summary << '\n';
}

void run_interp_check(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const auto f = registry_problem(c.problem, c.d, space);
  const auto ks = parse_grid(c.k);
  Table table({"problem", "d", "r", "k", "nodes", "weight_sum", "sup_error"});
  std::vector<RatePoint> points;
  for (std::size_t k : ks) {
    const auto op = build_interp(c.r, k, c.d);
    const double err = sup_error_estimate(op, f, c.grid);
    double wsum = 0.0;
    for (double w : op.weights()) wsum += w;
    table.add({f.name, c.d, c.r, k, op.node_count(), wsum, err});
    ErrorMoment m;
    m.value = err;
    points.push_back({k, m});
  }
  emit(c, table, data);
  summary << "interp-check " << f.name << " d=" << c.d << " r=" << c.r;
  if (points.size() >= 3) {
    const auto report = rate_fit(points);
    summary << ": slope=" << fixed(report.slope) << " theoretical=" << fixed(-double(c.r));
    for (const auto& note : report.notes) summary << " [" << note << "]";
  }
  summary << '\n';
}

void run_typeconst(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const std::size_t n = single_n(c);
  std::vector<VectorFamily> families;
  if (c.family == "all") {
    if (n <= space.dim()) families.push_back(basis_family(space, n));
    families.push_back(constant_family(space, n));
    families.push_back(random_unit_family(space, n, c.seed));
  } else {
    families.push_back(named_family(c.family, space, n, c.seed));
  }
  const auto est = sigma_lower_bound(space, c.p, n, families, c.seed);
  Table table({"space", "p", "n", "family", "ratio", "method", "stderr"});
  for (const auto& fr : est.ratios) {
    table.add({space.to_string(), c.p, n, fr.family, fr.ratio,
               std::string(to_string(fr.moment.method)), fr.moment.std_error});
  }
  emit(c, table, data);
  summary << "typeconst " << space.to_string() << " p=" << format_double(c.p) << " n=" << n
          << ": ratio=" << format_double(est.lower_bound) << " witness=" << est.witness_family
          << '\n';
}

void run_foolset(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto ms = parse_grid(c.m);
  Table table({"m", "r", "d", "space", "c0", "sigma", "patterns", "min_scaled_norm",
               "max_scaled_norm"});
  double lo = INFINITY, hi = 0.0;
  for (std::size_t m : ms) {
    std::size_t count = 1;
    for (std::size_t a = 0; a < c.d; ++a) count *= m;
    const auto space = SpaceDescriptor::lq(Exponent(1.0), count);
    std::vector<Element> vectors;
    for (std::size_t i = 1; i <= count; ++i) vectors.push_back(basis_vector(space, i));
    const auto family = make_fooling_family(m, c.r, c.d, space, vectors);
    std::vector<Element> integrals;
    for (std::size_t i = 0; i < count; ++i) integrals.push_back(family.integral(i));

    // All sign patterns when there are at most 2^12, otherwise seeded draws.
    const bool all = count <= 12;
    const std::size_t patterns = all ? (std::size_t{1} << count) : 4096;
    CounterStream stream(derive_seed(c.seed, m));
    double pmin = INFINITY, pmax = 0.0;
    const double scale = std::pow(static_cast<double>(m), c.r);
    for (std::size_t pat = 0; pat < patterns; ++pat) {
      Element sum = space.zero();
      for (std::size_t i = 0; i < count; ++i) {
        const double eps = all ? (((pat >> i) & 1U) ? -1.0 : 1.0) : stream.sign();
        axpy_inplace(space, eps, integrals[i], sum);
      }
      const double v = norm(space, sum) * scale;
      pmin = std::min(pmin, v);
      pmax = std::max(pmax, v);
    }
    lo = std::min(lo, pmin);
    hi = std::max(hi, pmax);
    table.add({m, c.r, c.d, space.to_string(), family.c0, family.sigma, patterns, pmin, pmax});
  }
  emit(c, table, data);
  summary << "foolset r=" << c.r << " d=" << c.d << ": m^r ||sum eps_i S f_i|| in ["
          << format_double(lo) << ", " << format_double(hi) << "] relative spread "
          << format_double(hi > 0 ? (hi - lo) / hi : 0.0) << '\n';
}

void run_partition_demo(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const std::size_t n = single_n(c);
  const std::string fam = c.family == "all" ? "random" : c.family;
  const auto family = named_family(fam, space, n, c.seed);
  const double gamma = resolved_gamma(c);
  SubsetSearchOptions options;
  options.sampled = n > kSubsetSearchCutoff;
  options.seed = c.seed;
  const auto trace = greedy_partition(space, family.vectors, gamma, c.p, options);
  const auto rec = reconstruct_full_moment(trace, space, family.vectors, c.p);

  Table table({"block", "size", "remaining_before", "moment", "indices"});
  for (std::size_t l = 0; l < trace.blocks.size(); ++l) {
    std::string idx;
    for (std::size_t i : trace.blocks[l]) idx += (idx.empty() ? "" : " ") + std::to_string(i);
    table.add({l + 1, trace.blocks[l].size(), trace.remaining_before[l], trace.per_block_moment[l],
               idx});
  }
  emit(c, table, data);
  summary << "partition-demo " << space.to_string() << " n=" << n
          << " gamma=" << format_double(gamma) << ": blocks=" << trace.blocks.size()
          << " (bound " << partition_step_bound(n, gamma) << ") block_sum="
          << format_double(rec.block_sum) << " full_moment=" << format_double(rec.full_moment)
          << " invariants=" << (trace.satisfies_invariants(n) ? "ok" : "VIOLATED")
          << " bound=" << (rec.bound_holds ? "ok" : "VIOLATED") << '\n';
  if (!rec.bound_holds || !trace.satisfies_invariants(n)) {
    throw NumericError("partition invariants violated");
  }
}

void run_lemma2(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  const auto space = SpaceDescriptor::parse(c.space);
  const auto ns = parse_grid(c.n);
  const auto points = bounded_sum_diagnostic(space.dim(), ns, c.p, c.trials, c.seed);
  Table table({"m", "p", "n", "trials", "moment", "ratio", "stderr"});
  double lo = INFINITY, hi = 0.0;
  for (const auto& pt : points) {
    table.add({space.dim(), c.p, pt.n, c.trials, pt.moment, pt.ratio, pt.std_error});
    lo = std::min(lo, pt.ratio);
    hi = std::max(hi, pt.ratio);
  }
  emit(c, table, data);
  summary << "lemma2 l_1^" << space.dim() << " p=" << format_double(c.p)
          << ": ratio range [" << format_double(lo) << ", " << format_double(hi) << "]\n";
}

void run_fit(const RunConfig& c, std::ostream& summary, std::ostream& data) {
  if (c.input.empty()) throw UsageError("fit needs --in <rates.csv>");
  const FitSummary fit = fit_and_summarize_file(c.input);
  Table table({"algo", "d", "r", "p", "points", "slope", "intercept", "r2", "theoretical"});
  table.add({fit.algo, fit.d, fit.r, fit.p, fit.report.points.size() - fit.report.notes.size(),
             fit.report.slope, fit.report.intercept, fit.report.r2, fit.theoretical});
  if (!c.out.empty() || c.format == OutputFormat::Jsonl) emit(c, table, data);
  summary << "fit " << c.input << ": slope=" << fixed(fit.report.slope)
          << " r2=" << fixed(fit.report.r2) << " theoretical=" << fixed(fit.theoretical);
  for (const auto& note : fit.report.notes) summary << " [" << note << "]";
  summary << '\n';
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

FitSummary fit_and_summarize(std::string_view content) {
  static const std::vector<std::string> kSchema = {"algo", "space", "problem", "d",     "r",   "p",
                                                   "n",    "trials", "value",  "stderr", "seed"};
  std::istringstream in{std::string(content)};
  std::string line;
  bool have_header = false;
  FitSummary out;
  std::vector<RatePoint> points;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields != kSchema) throw UsageError("CSV header does not match the rates schema");
      have_header = true;
      continue;
    }
    if (fields.size() != kSchema.size()) throw UsageError("CSV row has the wrong number of fields");
    out.algo = fields[0];
    out.d = parse_number<std::size_t>(fields[3], "d");
    out.r = parse_number<int>(fields[4], "r");
    out.p = parse_number<double>(fields[5], "p");
    RatePoint pt;
    pt.n = parse_number<std::size_t>(fields[6], "n");
    pt.moment.p = out.p;
    pt.moment.trials = parse_number<std::size_t>(fields[7], "trials");
    pt.moment.value = parse_number<double>(fields[8], "value");
    pt.moment.std_error = parse_number<double>(fields[9], "stderr");
    points.push_back(pt);
  }
  if (!have_header) throw UsageError("empty results file");
  if (points.empty()) throw UsageError("results file has no data rows");
  out.report = rate_fit(std::move(points));
  out.theoretical = theoretical_exponent(out.r, out.d, out.p);
  return out;
}

FitSummary fit_and_summarize_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return fit_and_summarize(ss.str());
}

void write_atomically(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw UsageError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot rename into '" + path + "': " + ec.message());
  }
}

int run(const RunConfig& config, std::ostream& summary, std::ostream& data, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Integrate: run_integrate(config, summary, data); break;
      case Subcommand::Rates: run_rates(config, summary, data); break;
      case Subcommand::InterpCheck: run_interp_check(config, summary, data); break;
      case Subcommand::TypeConst: run_typeconst(config, summary, data); break;
      case Subcommand::FoolSet: run_foolset(config, summary, data); break;
      case Subcommand::PartitionDemo: run_partition_demo(config, summary, data); break;
      case Subcommand::Lemma2: run_lemma2(config, summary, data); break;
      case Subcommand::Fit: run_fit(config, summary, data); break;
    }
  } catch (const UsageError& e) {
    err << "banachmc " << to_string(config.subcommand) << ": " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "banachmc " << to_string(config.subcommand) << ": numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "banachmc " << to_string(config.subcommand) << ": " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace banach::cli
