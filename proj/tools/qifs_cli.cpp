#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qifs/experiment.hpp"

namespace {

using qifs::json;

json load_config_file(const std::string& path, int* exit_code) {
  std::ifstream f(path);
  if (!f) {
    *exit_code = qifs::kExitIoError;
    std::cout << json{{"code", qifs::kExitIoError},
                      {"kind", "io-error"},
                      {"message", "cannot read config file: " + path}}
                     .dump(2)
              << "\n";
    return {};
  }
  try {
    json cfg = json::parse(f);
    *exit_code = qifs::kExitOk;
    return cfg;
  } catch (const json::parse_error& e) {
    // e.what() carries the byte offset of the malformed token.
    *exit_code = qifs::kExitBadConfig;
    std::cout << json{{"code", qifs::kExitBadConfig},
                      {"kind", "invalid-config"},
                      {"message", e.what()}}
                     .dump(2)
              << "\n";
    return {};
  }
}

std::filesystem::path resolve_out_dir(const std::string& out_flag,
                                      const std::string& fallback_name) {
  std::filesystem::path dir =
      out_flag.empty() ? std::filesystem::path("qifs-out") / fallback_name
                       : std::filesystem::path(out_flag);
  if (dir.is_relative()) {
    // The only environment variable honored: an output-root override.
    if (const char* root = std::getenv("QIFS_OUT_ROOT"))
      dir = std::filesystem::path(root) / dir;
  }
  return dir;
}

int finish(const qifs::RunOutcome& outcome) {
  if (outcome.exit_code != qifs::kExitOk) {
    std::cout << outcome.error.dump(2) << "\n";
    return outcome.exit_code;
  }
  std::cout << json{{"status", "ok"},
                    {"artifacts", outcome.manifest.at("artifacts")},
                    {"duration-s", outcome.manifest.at("duration-s")},
                    {"report", outcome.manifest.at("report")}}
                   .dump(2)
            << "\n";
  return qifs::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qifs: iterated function systems and their quantum counterparts"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir, format;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format, "restrict artifacts to one type")
        ->check(CLI::IsMember({"csv", "pgm", "json"}));
    cmd->add_option("--threads", threads, "cap OpenMP worker count");
    cmd->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("--config", config_path, "experiment config JSON");
  run->add_option("--preset", preset, "built-in preset name (see catalogue)");
  add_common(run);

  CLI::App* cat = app.add_subcommand("catalogue", "list built-in example presets");

  std::string classical_path, quantum_path;
  CLI::App* cmp =
      app.add_subcommand("compare", "align a classical histogram with a quantum grid");
  cmp->add_option("--classical", classical_path, "classical experiment config")
      ->required();
  cmp->add_option("--quantum", quantum_path, "quantum experiment config")->required();
  add_common(cmp);

  CLI11_PARSE(app, argc, argv);

  qifs::RunOptions opt;
  if (seed_set) opt.seed = seed;
  opt.format = format;
  opt.threads = threads;

  if (cat->parsed()) {
    for (const auto& [key, desc] : qifs::catalogue())
      std::cout << key << "\n    " << desc << "\n";
    return 0;
  }

  if (run->parsed()) {
    json cfg;
    std::string fallback = "run";
    if (!preset.empty()) {
      try {
        cfg = qifs::preset_config(preset);
        fallback = preset;
      } catch (const qifs::ConfigError& e) {
        std::cout << json{{"code", qifs::kExitBadConfig},
                          {"kind", "invalid-config"},
                          {"message", e.what()}}
                         .dump(2)
                  << "\n";
        return qifs::kExitBadConfig;
      }
    } else if (!config_path.empty()) {
      int code = 0;
      cfg = load_config_file(config_path, &code);
      if (code != qifs::kExitOk) return code;
      if (cfg.is_object() && cfg.contains("name") && cfg.at("name").is_string())
        fallback = cfg.at("name").get<std::string>();
    } else {
      std::cout << json{{"code", qifs::kExitBadConfig},
                        {"kind", "invalid-config"},
                        {"message", "run requires --config or --preset"}}
                       .dump(2)
                << "\n";
      return qifs::kExitBadConfig;
    }
    return finish(qifs::run_experiment(cfg, resolve_out_dir(out_dir, fallback), opt));
  }

  // compare
  int code = 0;
  const json classical = load_config_file(classical_path, &code);
  if (code != qifs::kExitOk) return code;
  const json quantum = load_config_file(quantum_path, &code);
  if (code != qifs::kExitOk) return code;
  return finish(
      qifs::run_compare(classical, quantum, resolve_out_dir(out_dir, "compare"), opt));
}
