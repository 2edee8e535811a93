#pragma once

#include "aniso/config.hpp"
#include "aniso/diagnostics.hpp"
#include "aniso/kinetic.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace aniso {

/// 64-bit linear congruential generator: state <- state * 6364136223846793005
/// + 1442695040888963407 (mod 2^64); uniform() = (state >> 11) * 2^-53 after
/// advancing. The first draw advances from the seed.
class Lcg {
public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

ModelSpec build_model(const ModelConfig& config);
PeriodicGrid build_grid(const GridConfig& config);
Profile build_profile(const ProfileConfig& config, const PeriodicGrid& grid);
/// Discretised initial data, mean-subtracted when zero_mean is set.
CellField build_initial_field(const ExperimentConfig& config, const PeriodicGrid& grid);
SamplingPlan build_sampling_plan(const ConditionConfig& config, const GridConfig& grid);

struct CommandOptions {
  bool quiet = false;
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitAuditFail = 2;
inline constexpr int kExitConditionFail = 3;
inline constexpr int kExitInconclusive = 4;

struct RunOutcome {
  Trajectory trajectory;
  AuditReport audit;
  DecaySummary decay;
};

/// run + audit + decay_summary, without touching the filesystem.
RunOutcome execute_run(const ExperimentConfig& config);

/// Writes diagnostics.csv, snapshots/, audit.{jsonl,txt}, decay.{jsonl,txt}
/// and config.ini under config.output_dir. 0 audit pass, 2 fail, 1 error.
int cmd_run(const ExperimentConfig& config, const CommandOptions& options = {});

/// Writes condition.{csv,jsonl}; 0 pass, 3 fail, 4 inconclusive, 1 error.
int cmd_check_condition(const ExperimentConfig& config, const CommandOptions& options = {});

/// Writes validation.jsonl; 0 pass, 2 fail, 1 error.
int cmd_validate_model(const ExperimentConfig& config, const CommandOptions& options = {});

/// Sweepable axes: cells, cfl, amplitude, lambda_floor.
const std::vector<std::string>& sweep_axes();

/// One sub-experiment per value in <out>/sweep_<axis>_<i>/, combined table in
/// <out>/sweep_<axis>.csv (and refinement.csv for the cells axis).
int cmd_sweep(const ExperimentConfig& config, const std::string& axis,
              const std::vector<double>& values, const CommandOptions& options = {});

/// Lambda ladder 1e-1, 1e-2, ... down to floor (floor appended if not a decade).
std::vector<double> lambda_ladder(double floor);

}  // namespace aniso
