#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gtzw/diagonal_growth.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

/// Invalid or inadmissible configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing an output file failed (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitCheck = 3, kExitIo = 4 };

struct RunConfig {
  Complex z{0.5, 0.0};
  Complex w{0.3, 0.0};
  std::optional<Complex> zp;
  std::optional<Complex> wp;

  int levels = 100;
  int paths = 10;
  std::optional<Row> k;         // growth defaults to 2; fluctuation picks one when unset
  std::optional<double> delta;  // fluctuation picks one when unset
  double eps_tail = 1e-6;
  SamplerMode mode = SamplerMode::gibbs;
  int gibbs_sweeps = 2;
  int burn_in = 2;

  std::vector<int> windows{50, 100, 200};  // fluctuation windows [N, 2N]
  HookEvent hook{1, 2, 0, -1, 1};

  // coupling input: dense laws over {0,1}^n, bit m-1 holding coordinate m
  std::vector<double> coupling_mu{0.7, 0.3};
  std::vector<double> coupling_nu{0.5, 0.5};

  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = "gtzw-out";

  /// Throws ConfigError naming the offending field.
  void validate() const;
  ZwParams params() const;
  /// Throws ConfigError unless both zp and wp are set.
  ZwParams params_prime() const;
  SamplerConfig sampler() const;

  nlohmann::json to_json() const;
  /// FNV-1a of the canonical JSON, as 16 hex digits.
  std::string hash() const;
};

/// Parses TOML text; unknown keys are rejected. Throws ConfigError.
RunConfig config_from_toml(std::string_view text);
/// Throws IoError when the file cannot be read, ConfigError when it does not parse.
RunConfig load_config(const std::string& path);

// ---- serialization ----

nlohmann::json path_to_json(const Path& path);
Path path_from_json(const nlohmann::json& j);
nlohmann::json transition_to_json(const LevelTransition& tr);
nlohmann::json coupling_to_json(const CouplingTable<double>& eta);

// ---- commands ----
//
// Each command writes its files under cfg.out, returns an exit code and
// fills `summary` with the report it also wrote to disk.

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_sample(const RunConfig& cfg);
CommandResult cmd_fluctuation(const RunConfig& cfg);
CommandResult cmd_growth(const RunConfig& cfg);
CommandResult cmd_coupling(const RunConfig& cfg);

/// Sets the spdlog level from GTZW_LOG (trace, debug, info, warn, error, off).
void configure_logging_from_env();

}  // namespace gtzw
