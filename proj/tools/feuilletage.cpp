#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "feuilletage/campaign.hpp"
#include "feuilletage/oracle.hpp"
#include "feuilletage/report.hpp"

namespace fs = std::filesystem;
using namespace feuilletage;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int64_t parse_size(const std::string& token) {
  try {
    if (token.starts_with("2^")) {
      const int e = std::stoi(token.substr(2));
      if (e < 0 || e > 40) throw UsageError("exponent out of range in '" + token + "'");
      return std::int64_t{1} << e;
    }
    std::size_t used = 0;
    const auto v = std::stoll(token, &used);
    if (used != token.size()) throw UsageError("bad size '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad size '" + token + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token += ch;
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

// "2048,4096", "2^11..2^17" (powers of two), or a mix.
std::vector<std::int64_t> parse_sizes(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& token : split_list(text)) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_size(token));
      continue;
    }
    auto lo = parse_size(token.substr(0, dots));
    const auto hi = parse_size(token.substr(dots + 2));
    if (lo < 1 || hi < lo) throw UsageError("bad range '" + token + "'");
    for (; lo <= hi; lo *= 2) out.push_back(lo);
  }
  return out;
}

std::vector<double> parse_deciles(const std::string& text) {
  std::vector<double> out;
  for (const auto& token : split_list(text)) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::logic_error&) {
      throw UsageError("bad decile '" + token + "'");
    }
  }
  return out;
}

struct GenerateArgs {
  int depth = 2;
  std::string mode = "feuilletage";
  std::string sizes;
  std::string references;
  std::int64_t maps = 100;
  std::int64_t roots = 10;
  std::int64_t batches = 1;
  std::string deciles = "0.75,0.5,0.25";
  std::string root_mode = "corner";
  std::uint64_t seed = 1;
  std::string output = "campaign";
  int workers = 0;
};

struct FitArgs {
  std::string dir = "campaign";
  std::string references;
  std::string deciles = "0.75,0.5,0.25";
  std::string output;
  std::string plots;
};

struct ReportArgs {
  std::vector<std::string> fits;
  std::string histograms;
};

// Splices `key=value` lines of a --config file in front of the command-line
// flags; options take the last value, so flags override the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> in(argv, argv + argc), out;
  std::size_t sub = 1;
  while (sub < in.size() && in[sub] != "generate" && in[sub] != "fit") ++sub;
  std::string config;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i > sub && in[i] == "--config" && i + 1 < in.size()) {
      config = in[++i];
    } else if (i > sub && in[i].starts_with("--config=")) {
      config = in[i].substr(9);
    } else {
      out.push_back(in[i]);
    }
  }
  if (config.empty()) return out;
  std::ifstream file(config);
  if (!file) throw UsageError("cannot read config file " + config);
  std::vector<std::string> from_file;
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      const auto e = t.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    from_file.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(sub) + 1, from_file.begin(), from_file.end());
  return out;
}

int cmd_generate(const GenerateArgs& a) {
  CampaignConfig c;
  c.depth = a.depth;
  try {
    c.mode = parse_measure_mode(a.mode);
    c.root_mode = parse_root_mode(a.root_mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  c.sizes = parse_sizes(a.sizes);
  c.references = parse_sizes(a.references);
  c.maps = a.maps;
  c.roots = a.roots;
  c.batches = a.batches;
  c.deciles = parse_deciles(a.deciles);
  c.seed = a.seed;
  c.output_dir = a.output;
  c.workers = a.workers;
  if (auto why = validate(c)) throw UsageError(*why);
  const auto summary = run_campaign(c, &std::cerr);
  std::cout << "wrote " << summary.written << " histogram files, skipped " << summary.skipped << " complete files in "
            << c.output_dir.string() << '\n';
  return kOk;
}

int cmd_fit(const FitArgs& a) {
  const auto references = parse_sizes(a.references);
  const auto deciles = parse_deciles(a.deciles);
  if (references.empty()) throw UsageError("no n0 given");
  if (deciles.empty()) throw UsageError("no deciles given");
  for (double d : deciles)
    if (!(d > 0.0 && d <= 1.0)) throw UsageError("deciles must lie in (0, 1]");

  const auto set = load_histograms(a.dir);
  const auto report = fit_campaign(set, references, deciles);

  const fs::path out_path = a.output.empty() ? fs::path(a.dir) / "fit_report.txt" : fs::path(a.output);
  {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    write_fit_report(out, report);
  }
  write_plot_files(a.plots.empty() ? fs::path(a.dir) / "plots" : fs::path(a.plots), report);

  std::ostringstream summary;
  write_fit_report(summary, report);
  std::istringstream in(summary.str());
  std::cout << format_table(read_fit_summary(in));
  std::cout << "fit report: " << out_path.string() << '\n';
  return kOk;
}

int cmd_report(const ReportArgs& a) {
  std::vector<SummaryRow> rows;
  for (const auto& path : a.fits) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto more = read_fit_summary(in);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  std::cout << format_table(rows);
  std::cout << "\n# machine-readable\nD,mode,n0,decile,d_H,std,batches\n";
  for (const auto& r : rows)
    std::cout << r.depth << ',' << r.mode << ',' << r.n0 << ',' << r.decile << ',' << r.d_h << ',' << r.std << ','
              << r.batches << '\n';
  if (!a.histograms.empty()) {
    const auto set = load_histograms(a.histograms);
    std::cout << "\n# diameter scaling (D=" << set.campaign.depth << ", " << to_string(set.campaign.mode) << ")\n"
              << format_diameter_table(diameter_summary(set), set.campaign.depth);
  }
  return kOk;
}

int cmd_oracle(const oracle::SuiteOptions& options) {
  if (options.max_n < 1) throw UsageError("--max-n must be >= 1");
  if (options.seeds < 1) throw UsageError("--seeds must be >= 1");
  if (options.max_depth < 1) throw UsageError("--max-depth must be >= 1");
  const auto result = oracle::run_suite(options, &std::cout);
  return result.passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random discrete feuilletages: generation, distance histograms, dimension fits"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_file;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "simulate distance histograms per (n, batch)");
  generate->add_option("--config", config_file, "key=value file; flags override it");
  generate->add_option("-D,--D", gen.depth, "folding depth")->capture_default_str();
  generate->add_option("--mode", gen.mode, "tree | feuilletage")->capture_default_str();
  generate->add_option("--n", gen.sizes, "sizes, e.g. 2^11..2^17 or 2048,4096")->required();
  generate->add_option("--n0", gen.references, "reference sizes (must be among --n)");
  generate->add_option("--maps", gen.maps, "realizations per (n, batch)")->capture_default_str();
  generate->add_option("--roots", gen.roots, "roots per realization")->capture_default_str();
  generate->add_option("--batches", gen.batches)->capture_default_str();
  generate->add_option("--deciles", gen.deciles)->capture_default_str();
  generate->add_option("--root-mode", gen.root_mode, "corner | class")->capture_default_str();
  generate->add_option("--seed", gen.seed, "master seed")->capture_default_str();
  generate->add_option("-o,--out", gen.output, "output directory")->capture_default_str();
  generate->add_option("--workers", gen.workers, "threads, 0 = all")->capture_default_str();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "collapse histograms and fit d_H");
  fit_cmd->add_option("--config", config_file, "key=value file; flags override it");
  fit_cmd->add_option("--dir", fit.dir, "histogram directory")->capture_default_str();
  fit_cmd->add_option("--n0", fit.references, "reference sizes")->required();
  fit_cmd->add_option("--deciles", fit.deciles)->capture_default_str();
  fit_cmd->add_option("-o,--out", fit.output, "fit report path (default <dir>/fit_report.txt)");
  fit_cmd->add_option("--plots", fit.plots, "plot data directory (default <dir>/plots)");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "tables across fit reports, diameter summary");
  report->add_option("fits", rep.fits, "fit report files")->required();
  report->add_option("--histograms", rep.histograms, "histogram directory for the diameter summary");

  oracle::SuiteOptions orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force consistency checks");
  oracle_cmd->add_option("--max-n", orc.max_n)->capture_default_str();
  oracle_cmd->add_option("--seeds", orc.seeds)->capture_default_str();
  oracle_cmd->add_option("--max-depth", orc.max_depth)->capture_default_str();
  oracle_cmd->add_option("--seed", orc.seed)->capture_default_str();

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  std::vector<char*> argp;
  for (auto& a : args) argp.push_back(a.data());

  try {
    app.parse(static_cast<int>(argp.size()), argp.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*fit_cmd) return cmd_fit(fit);
    if (*report) return cmd_report(rep);
    if (*oracle_cmd) return cmd_oracle(orc);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
