// Copyright 2026 The Blockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKADE_SWEEP_HPP
#define BLOCKADE_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "blockade/config.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/statistics.hpp"

namespace blockade {

struct SweepRow {
    double axis_value = 0.0;  ///< file units (GHz or 1/kappa)
    FockCoefficients coefficients;
    double mean_clicks = 0.0;
};

struct SweepMetadata {
    std::uint64_t config_fingerprint = 0;
    std::string code_version;
    double wall_seconds = 0.0;
    std::uint64_t base_seed = 0;
    std::size_t n_traj = 0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::DriveAmplitude;
    std::vector<SweepRow> rows;  ///< ascending in axis_value
    SweepMetadata metadata;
};

struct RunOptions {
    unsigned threads = 0;  ///< 0 = hardware concurrency; never changes results
    /// Called from worker threads after each finished trajectory.
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Every gridpoint runs n_traj trajectories seeded derive_seed(base_seed, i),
/// the same seeds at every gridpoint, so each row equals a run_batch call.
SweepResult sweep_amplitude(const ExperimentConfig& config, const RunOptions& options = {});
SweepResult sweep_width(const ExperimentConfig& config, const RunOptions& options = {});
SweepResult sweep_stark(const ExperimentConfig& config, const RunOptions& options = {});
SweepResult run_sweep(const ExperimentConfig& config, SweepAxis axis, const RunOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "axis_name,axis_value,c0_sq,c0_lo,c0_hi,c1_sq,c1_lo,c1_hi,cmulti_sq,cmulti_lo,cmulti_hi,mean_clicks";

void write_csv(std::ostream& out, const SweepResult& result);
/// Sidecar metadata (JSON) for a sweep.
std::string metadata_json(const SweepResult& result);

struct OracleRun {
    ExpectationSeries series;
    OracleReport report;
    std::uint64_t config_fingerprint = 0;
};

/// Trajectory ensemble against the master equation at the config's operating
/// point, on `oracle_points` evenly spaced times over the window.
OracleRun run_oracle(const ExperimentConfig& config, const RunOptions& options = {});

void write_oracle_csv(std::ostream& out, const OracleRun& run);

/// Jump events of one trajectory: time_ns,channel
void write_events_csv(std::ostream& out, const TrajectoryRecord& record);
/// time_ns,omega,delta_a,schedule_over_g sampled on `points` evenly spaced times.
void write_schedule_csv(std::ostream& out, const PointSetup& setup, int points);

/// Indices of local maxima of `values` that rise at least `prominence` above
/// the lowest point on each side before a higher value (or the edge).
std::vector<std::size_t> prominent_maxima(std::span<const double> values, double prominence);

std::string_view code_version();

}  // namespace blockade

#endif  // BLOCKADE_SWEEP_HPP
