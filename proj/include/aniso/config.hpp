#pragma once

#include "aniso/presets.hpp"
#include "aniso/solver.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aniso {

struct ModelConfig {
  std::string name = "burgers";
  std::optional<PolynomialModel> inline_model;  // set when f/A coefficients are given
  double state_bound = 1.0;
  bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
  std::vector<double> periods;  // empty: 1 per dimension
  std::vector<int> cells;
  bool operator==(const GridConfig&) const = default;
};

enum class ProfileKind { sine, multi_sine, square_wave, random };

const char* to_string(ProfileKind kind);

struct ProfileConfig {
  ProfileKind kind = ProfileKind::sine;
  double amplitude = 1.0;
  double offset = 0.0;
  bool zero_mean = false;  // subtract the discrete mean after discretisation
  int modes = 4;           // multi-sine and random profiles
  std::uint64_t seed = 0;
  bool operator==(const ProfileConfig&) const = default;
};

struct ConditionConfig {
  double delta = 1.0;
  std::vector<double> lambdas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double r_max = 1e3;
  int n_dir = 0;
  int n_resonant = 33;
  bool lattice = false;
  int lattice_extent = 0;
  bool operator==(const ConditionConfig&) const = default;
};

struct ExperimentConfig {
  ModelConfig model;
  GridConfig grid;
  ProfileConfig initial;
  SchemeConfig scheme;
  ConditionConfig condition;
  std::vector<double> contraction_constants = {0.0};
  std::string output_dir = "out";
  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigIssue {
  int line = 0;  // 0 when the issue is not tied to a line
  std::string message;
};

class ConfigParseError : public std::runtime_error {
public:
  explicit ConfigParseError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
  std::vector<ConfigIssue> issues_;
};

/// Parses the `[section]` / `key = value` format. Sections [model], [grid]
/// and [scheme] are required. Throws ConfigParseError listing every problem.
ExperimentConfig parse_config(const std::string& text);

/// Writes every field explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Defaults for a preset without a config file.
ExperimentConfig default_config(const std::string& preset);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

}  // namespace aniso
