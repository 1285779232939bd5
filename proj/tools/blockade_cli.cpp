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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "blockade/config.hpp"
#include "blockade/random.hpp"
#include "blockade/sweep.hpp"

namespace {

using namespace blockade;

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_traj;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out, "output CSV (default: stdout)");
    cmd->add_option("--seed", flags.seed, "override base_seed");
    cmd->add_option("--n-traj", flags.n_traj, "override n_traj")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
}

ExperimentConfig load(const CommonFlags& flags) {
    auto config = load_config(flags.config);
    if (flags.seed) config.base_seed = *flags.seed;
    if (flags.n_traj) config.n_traj = *flags.n_traj;
    return config;
}

RunOptions run_options(const CommonFlags& flags, const std::string& label) {
    RunOptions options;
    options.threads = flags.threads;
    auto mutex = std::make_shared<std::mutex>();
    auto last = std::make_shared<int>(-1);
    options.progress = [mutex, last, label](std::size_t done, std::size_t total) {
        const int percent = static_cast<int>(100 * done / total);
        std::lock_guard lock(*mutex);
        if (percent / 5 > *last / 5 || done == total) {
            *last = percent;
            std::fprintf(stderr, "[%s] %3d%% (%zu/%zu trajectories)\n", label.c_str(), percent, done, total);
        }
    };
    return options;
}

template <class Writer>
void emit(const std::string& path, Writer&& writer) {
    if (path.empty()) {
        writer(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file " + path);
    writer(out);
    if (!out) throw ValidationError("failed writing " + path);
}

int sweep_command(const CommonFlags& flags, SweepAxis axis) {
    const auto config = load(flags);
    const auto result = run_sweep(config, axis, run_options(flags, std::string(to_string(axis))));
    emit(flags.out, [&](std::ostream& os) { write_csv(os, result); });
    if (!flags.out.empty()) emit(flags.out + ".meta.json", [&](std::ostream& os) { os << metadata_json(result); });
    std::fprintf(stderr, "[%s] %zu rows in %.1f s\n", std::string(to_string(axis)).c_str(), result.rows.size(),
                 result.metadata.wall_seconds);
    return 0;
}

int oracle_command(const CommonFlags& flags) {
    const auto config = load(flags);
    const auto run = run_oracle(config, run_options(flags, "oracle"));
    emit(flags.out, [&](std::ostream& os) { write_oracle_csv(os, run); });
    std::fprintf(stderr, "[oracle] mean clicks: ensemble %.6f, master equation %.6f (z = %.3f)\n",
                 run.report.ensemble_mean_clicks, run.report.oracle_mean_clicks, run.report.z_clicks);
    std::fprintf(stderr, "[oracle] max |z| = %.3f over %zu points at %.1f sigma: %s\n", run.report.max_abs_z(),
                 run.report.times.size(), run.report.tolerance_sigmas, run.report.passed ? "PASS" : "FAIL");
    return 0;
}

int trajectory_command(const CommonFlags& flags, const std::string& schedule_out, int schedule_points) {
    const auto config = load(flags);
    const auto setup = point_setup(config);
    TrajectoryOptions options;
    options.atol = config.atol;
    const auto record = run_trajectory(setup.space, setup.params, setup.protocol, setup.schedule, setup.window,
                                       derive_seed(config.base_seed, 0), options);
    emit(flags.out, [&](std::ostream& os) { write_events_csv(os, record); });
    if (!schedule_out.empty()) {
        emit(schedule_out, [&](std::ostream& os) { write_schedule_csv(os, setup, schedule_points); });
    }
    std::fprintf(stderr, "[trajectory] %zu events, %d clicks, %zu steps\n", record.events.size(), record.clicks,
                 record.accepted_steps);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-blockade single-photon source simulator"};
    app.require_subcommand(1);

    CommonFlags amplitude_flags, width_flags, stark_flags, oracle_flags, trajectory_flags;
    auto* amplitude = app.add_subcommand("sweep-amplitude", "sweep the Gaussian pulse amplitude");
    auto* width = app.add_subcommand("sweep-width", "sweep the Gaussian pulse width");
    auto* stark = app.add_subcommand("sweep-stark", "sweep the constant drive under the detuning schedule");
    auto* oracle = app.add_subcommand("oracle", "compare trajectories with the master equation");
    auto* trajectory = app.add_subcommand("trajectory", "dump the jump events of one trajectory");
    add_common(amplitude, amplitude_flags);
    add_common(width, width_flags);
    add_common(stark, stark_flags);
    add_common(oracle, oracle_flags);
    add_common(trajectory, trajectory_flags);
    std::string schedule_out;
    int schedule_points = 401;
    trajectory->add_option("--schedule-out", schedule_out, "also write Omega(t) and the detuning schedule as CSV");
    trajectory->add_option("--schedule-points", schedule_points, "samples in the schedule CSV")
        ->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*amplitude) return sweep_command(amplitude_flags, SweepAxis::DriveAmplitude);
        if (*width) return sweep_command(width_flags, SweepAxis::PulseWidth);
        if (*stark) return sweep_command(stark_flags, SweepAxis::StarkAmplitude);
        if (*oracle) return oracle_command(oracle_flags);
        if (*trajectory) return trajectory_command(trajectory_flags, schedule_out, schedule_points);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
