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

#include "blockade/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>

#include "blockade/parallel.hpp"
#include "blockade/random.hpp"
#include "json.hpp"

#ifndef BLOCKADE_VERSION
#define BLOCKADE_VERSION "0.0.0"
#endif

namespace blockade {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string hex(std::uint64_t x) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace

std::string_view code_version() { return BLOCKADE_VERSION; }

SweepResult run_sweep(const ExperimentConfig& config, SweepAxis axis, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = sweep_grid(config, axis);
    std::vector<PointSetup> setups;
    setups.reserve(grid.size());
    for (double value : grid) setups.push_back(point_setup(config, axis, value));

    const std::size_t n_traj = config.n_traj;
    const std::size_t total = grid.size() * n_traj;
    std::vector<int> clicks(total);
    std::atomic<std::size_t> done{0};
    TrajectoryOptions trajectory_options;
    trajectory_options.atol = config.atol;

    // One flat pool over (gridpoint, trajectory) keeps every worker busy even
    // when there are fewer gridpoints than threads.
    parallel_for(total, options.threads, [&](std::size_t item) {
        const std::size_t point = item / n_traj;
        const std::size_t i = item % n_traj;
        const auto& s = setups[point];
        try {
            clicks[item] = run_trajectory(s.space, s.params, s.protocol, s.schedule, s.window,
                                          derive_seed(config.base_seed, i), trajectory_options)
                               .clicks;
        } catch (const NumericalError& e) {
            throw NumericalError("gridpoint " + std::to_string(point) + ", trajectory " + std::to_string(i) + ": " +
                                 e.what());
        }
        const std::size_t finished = ++done;
        if (options.progress) options.progress(finished, total);
    });

    SweepResult result;
    result.axis = axis;
    for (std::size_t point = 0; point < grid.size(); ++point) {
        ClickHistogram h;
        h.n_traj = n_traj;
        for (std::size_t i = 0; i < n_traj; ++i) ++h.counts[clicks[point * n_traj + i]];
        SweepRow row;
        row.axis_value = display_value(config, axis, grid[point]);
        row.coefficients = fock_coefficients(h);
        row.mean_clicks = mean_clicks(h);
        result.rows.push_back(row);
    }
    result.metadata.config_fingerprint = config_fingerprint(config);
    result.metadata.code_version = std::string(code_version());
    result.metadata.base_seed = config.base_seed;
    result.metadata.n_traj = n_traj;
    result.metadata.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SweepResult sweep_amplitude(const ExperimentConfig& config, const RunOptions& options) {
    return run_sweep(config, SweepAxis::DriveAmplitude, options);
}

SweepResult sweep_width(const ExperimentConfig& config, const RunOptions& options) {
    return run_sweep(config, SweepAxis::PulseWidth, options);
}

SweepResult sweep_stark(const ExperimentConfig& config, const RunOptions& options) {
    return run_sweep(config, SweepAxis::StarkAmplitude, options);
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << kCsvHeader << '\n';
    const auto name = axis_label(result.axis);
    for (const auto& row : result.rows) {
        const auto& c = row.coefficients;
        out << name;
        for (double x : {row.axis_value, c.c0_sq, c.c0_ci.low, c.c0_ci.high, c.c1_sq, c.c1_ci.low, c.c1_ci.high,
                         c.cmulti_sq, c.cmulti_ci.low, c.cmulti_ci.high, row.mean_clicks}) {
            out << ',' << fmt17(x);
        }
        out << '\n';
    }
}

std::string metadata_json(const SweepResult& result) {
    nlohmann::ordered_json doc;
    doc["axis"] = std::string(to_string(result.axis));
    doc["rows"] = result.rows.size();
    doc["config_fingerprint"] = hex(result.metadata.config_fingerprint);
    doc["code_version"] = result.metadata.code_version;
    doc["base_seed"] = result.metadata.base_seed;
    doc["n_traj"] = result.metadata.n_traj;
    doc["wall_seconds"] = result.metadata.wall_seconds;
    return doc.dump(2) + "\n";
}

OracleRun run_oracle(const ExperimentConfig& config, const RunOptions& options) {
    const auto setup = point_setup(config);
    std::vector<double> grid(static_cast<std::size_t>(config.oracle_points));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = setup.window.t_final * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
    }
    grid.back() = setup.window.t_final;

    LindbladOptions lindblad_options;
    lindblad_options.atol = config.atol;
    OracleRun run;
    run.config_fingerprint = config_fingerprint(config);
    run.series = evolve_master_equation(setup.space, setup.params, setup.protocol, setup.schedule, setup.window, grid,
                                        lindblad_options);

    std::vector<TrajectoryRecord> records(config.n_traj);
    TrajectoryOptions trajectory_options;
    trajectory_options.atol = config.atol;
    trajectory_options.sample_times = grid;
    std::atomic<std::size_t> done{0};
    parallel_for(config.n_traj, options.threads, [&](std::size_t i) {
        try {
            records[i] = run_trajectory(setup.space, setup.params, setup.protocol, setup.schedule, setup.window,
                                        derive_seed(config.base_seed, i), trajectory_options);
        } catch (const NumericalError& e) {
            throw NumericalError("trajectory " + std::to_string(i) + ": " + e.what());
        }
        const std::size_t finished = ++done;
        if (options.progress) options.progress(finished, config.n_traj);
    });
    const auto fingerprint =
        physics_fingerprint(setup.space, setup.params, setup.protocol, setup.schedule, setup.window);
    run.report = compare_with_trajectories(run.series, records, fingerprint, config.oracle_sigmas);
    return run;
}

void write_oracle_csv(std::ostream& out, const OracleRun& run) {
    out << "time_ns,photon_number,emitter_excitation,z_photon,z_excitation\n";
    for (std::size_t k = 0; k < run.report.times.size(); ++k) {
        out << fmt17(run.report.times[k]) << ',' << fmt17(run.series.photon_number[k]) << ','
            << fmt17(run.series.emitter_excitation[k]) << ',' << fmt17(run.report.z_photon[k]) << ','
            << fmt17(run.report.z_excitation[k]) << '\n';
    }
}

void write_events_csv(std::ostream& out, const TrajectoryRecord& record) {
    out << "time_ns,channel\n";
    for (const auto& e : record.events) out << fmt17(e.time) << ',' << to_string(e.channel) << '\n';
}

void write_schedule_csv(std::ostream& out, const PointSetup& setup, int points) {
    if (points < 2) throw ValidationError("schedule dump needs at least two points");
    out << "time_ns,omega,delta_a,schedule_over_g\n";
    const double g = setup.params.g;
    for (int k = 0; k < points; ++k) {
        const double t = setup.window.t_final * k / (points - 1);
        const double delta_a = emitter_detuning(setup.params, setup.schedule, t);
        out << fmt17(t) << ',' << fmt17(envelope(setup.protocol, t)) << ',' << fmt17(delta_a) << ','
            << fmt17(g > 0.0 ? detuning(setup.schedule, t) / g : 0.0) << '\n';
    }
}

std::vector<std::size_t> prominent_maxima(std::span<const double> values, double prominence) {
    std::vector<std::size_t> peaks;
    const std::size_t n = values.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        double left_min = values[i];
        for (std::size_t j = i; j-- > 0;) {
            if (values[j] > values[i]) break;
            left_min = std::min(left_min, values[j]);
        }
        double right_min = values[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[j] > values[i]) break;
            right_min = std::min(right_min, values[j]);
        }
        if (values[i] - std::max(left_min, right_min) >= prominence) peaks.push_back(i);
    }
    return peaks;
}

}  // namespace blockade
