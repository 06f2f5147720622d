// bdlab: command-line front end for the birth-death process experiments.
//
//   bdlab <subcommand> --config PATH [--seed U64] [--out PATH] [--format csv|json]
//                      [--threads N]
//
// Exit codes: 0 success, 2 config error, 3 precondition error, 4 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bdlab/config.hpp"
#include "bdlab/errors.hpp"
#include "bdlab/experiments.hpp"
#include "bdlab/results.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kPreconditionError = 3;
constexpr int kIoError = 4;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  unsigned threads = 0;
  std::string profile;
  bool reference_walk = false;
};

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw bdlab::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw bdlab::IoError("failed writing '" + path + "'");
}

bdlab::ExperimentConfig prepare(const Options& opt) {
  auto cfg = bdlab::load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  return cfg;
}

void emit(const bdlab::ResultTable& table, const bdlab::ExperimentConfig& cfg, const Options& opt) {
  std::string format = !opt.format.empty() ? opt.format
                       : !cfg.output_format.empty() ? cfg.output_format : "csv";
  const auto fmt = bdlab::parse_format(format);
  const std::string path = !opt.out.empty() ? opt.out : cfg.output_path;
  if (path.empty()) {
    std::cout << (fmt == bdlab::OutputFormat::csv ? bdlab::to_csv(table) : bdlab::to_json_text(table));
    return;
  }
  bdlab::emit_results(table, fmt, path);
}

int run(const std::string& command, const Options& opt) {
  const auto cfg = prepare(opt);
  if (command == "simulate") {
    write_text(bdlab::simulate_csv(cfg, opt.reference_walk, opt.threads),
               !opt.out.empty() ? opt.out : cfg.output_path);
  } else if (command == "rate-eval") {
    write_text(bdlab::rate_eval_csv(cfg, bdlab::load_profile(opt.profile)),
               !opt.out.empty() ? opt.out : cfg.output_path);
  } else if (command == "poisson-check") {
    emit(bdlab::run_poisson_check(cfg, opt.threads), cfg, opt);
  } else if (command == "marginal-scan") {
    emit(bdlab::run_marginal_ldp_scan(cfg, opt.threads), cfg, opt);
  } else if (command == "consistency-check") {
    emit(bdlab::run_consistency_check(cfg, opt.threads), cfg, opt);
  } else if (command == "level-cross-scan") {
    emit(bdlab::run_level_cross_scan(cfg, opt.threads), cfg, opt);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birth-death process simulation and large-deviation checks"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Experiment config (JSON)")->required();
    sub->add_option("--seed", opt.seed, "Override the config seed");
    sub->add_option("--out", opt.out, "Output path (default: config output.path, else stdout)");
    sub->add_option("--threads", opt.threads, "Worker threads; 0 runs sequentially");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* simulate = app.add_subcommand("simulate", "Dump simulated trajectories at the first T");
  add_common(simulate);
  simulate->add_flag("--reference-walk", opt.reference_walk, "Simulate the symmetric walk instead");
  auto* rate_eval = app.add_subcommand("rate-eval", "Evaluate the rate functionals of a profile");
  add_common(rate_eval);
  rate_eval->add_option("--profile", opt.profile, "Profile file")->required();
  for (const char* name : {"poisson-check", "marginal-scan", "consistency-check", "level-cross-scan"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub);
    add_format(sub);
  }
  app.get_subcommand("poisson-check")->description("Compare terminal histograms with the exact Poisson law");
  app.get_subcommand("marginal-scan")->description("Exact normalized marginal log-probabilities over T");
  app.get_subcommand("consistency-check")->description("Direct vs change-of-measure estimates");
  app.get_subcommand("level-cross-scan")->description("Level-crossing decay with exact terminal anchor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), opt);
  } catch (const bdlab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const bdlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const bdlab::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}
