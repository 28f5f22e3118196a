#pragma once

#include <filesystem>
#include <optional>

#include "qifs/channel.hpp"
#include "qifs/classical.hpp"
#include "qifs/io.hpp"
#include "qifs/qifs_system.hpp"

namespace qifs {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit codes of the experiment runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitIoError = 4;

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::string format;                 // "", "csv", "pgm" or "json" (filter)
  int threads = 0;                    // OpenMP worker cap; 0 keeps the default
};

struct RunOutcome {
  int exit_code = kExitOk;
  json manifest;
  json error;  // machine-readable error when exit_code != 0
};

/// Executes one experiment config, writing artifacts plus manifest.json under
/// out_dir. Never throws; failures are encoded in the outcome.
RunOutcome run_experiment(const json& config, const std::filesystem::path& out_dir,
                          const RunOptions& opt = {});

/// Aligns a classical invariant histogram with a quantum phase-space grid and
/// reports L1 distance, profile correlation and excluded-region masses.
RunOutcome run_compare(const json& classical_cfg, const json& quantum_cfg,
                       const std::filesystem::path& out_dir,
                       const RunOptions& opt = {});

/// Built-in presets "example-1" .. "example-14"; every parameter and seed is
/// pinned inside the returned config.
json preset_config(const std::string& name);
std::vector<std::pair<std::string, std::string>> catalogue();

// Shared config parsing (strict: unknown keys are rejected).
ClassicalIFS ifs_from_json(const json& j);
QuantumChannel channel_from_json(const json& j);

}  // namespace qifs
