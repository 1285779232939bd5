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

#ifndef BLOCKADE_CONFIG_HPP
#define BLOCKADE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/dynamics.hpp"
#include "blockade/fockspace.hpp"
#include "blockade/trajectory.hpp"

namespace blockade {

enum class ProtocolKind { Pulsed, Stark };

/// Which first-manifold polariton the laser addresses. Upper puts the laser
/// at omega_c + g (Delta_c = -g), lower at omega_c - g (Delta_c = +g).
enum class Branch { Upper, Lower };

enum class SweepAxis { DriveAmplitude, PulseWidth, StarkAmplitude };

std::string_view to_string(SweepAxis axis);
/// Column label written to the CSV axis_name field.
std::string_view axis_label(SweepAxis axis);

/// A parsed and validated experiment. All rates are angular (rad/ns) and all
/// times are in ns; the raw file values are kept only where they define the
/// units of the CSV axis column.
struct ExperimentConfig {
    bool rates_are_over_2pi = true;
    SystemParams system;
    Branch branch = Branch::Upper;
    ProtocolKind protocol = ProtocolKind::Pulsed;

    std::optional<double> omega0;  ///< rad/ns
    double tau_per_kappa = 0.45;
    double t0_per_tau = 5.0;

    // Stark schedule, in units of 1/kappa except delta_max (rad/ns).
    double delta_max = 0.0;
    double lead_per_kappa = 0.5;
    double plateau_per_kappa = 0.9;
    double ramp_per_kappa = 0.1;

    std::optional<SweepAxis> sweep_axis;
    std::optional<double> sweep_from;  ///< file units (GHz or 1/kappa)
    std::optional<double> sweep_to;
    int sweep_steps = 21;

    std::size_t n_traj = 3000;
    std::uint64_t base_seed = 0;
    int n_max = 8;
    double atol = 1e-10;

    std::optional<double> t_final;
    std::optional<double> dt_max;
    std::optional<double> jump_tol;

    int oracle_points = 16;
    double oracle_sigmas = 3.0;

    /// GHz (file units) to rad/ns under this config's convention.
    double to_angular(double ghz) const;
    double from_angular(double rad_per_ns) const;
};

/// Parse a flat JSON object. Unknown keys, wrong types and out-of-range
/// values raise ValidationError naming the offending field. Comments are
/// allowed.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Everything needed to simulate one parameter point.
struct PointSetup {
    FockSpace space{1};
    SystemParams params;
    DriveProtocol protocol;
    DetuningSchedule schedule;
    SimulationWindow window;
};

/// The config's own operating point. Needs omega0.
PointSetup point_setup(const ExperimentConfig& config);
/// The operating point with one axis replaced by a value in physical units
/// (rad/ns for amplitudes, ns for the pulse width).
PointSetup point_setup(const ExperimentConfig& config, SweepAxis axis, double value);

/// Sweep grid in physical units. Default ranges: [0, 4 Omega_pi] with
/// Omega_pi = sqrt(pi/2)/tau for pulse amplitudes, [0, 4 kappa] for the
/// constant drive, and [0.01, 3]/kappa for the pulse width.
std::vector<double> sweep_grid(const ExperimentConfig& config, SweepAxis axis);

/// Physical axis value converted back to file units for output.
double display_value(const ExperimentConfig& config, SweepAxis axis, double physical);

/// Hash of the physics-affecting fields after unit resolution. Trajectory
/// count, seed and oracle reporting settings are excluded.
std::uint64_t config_fingerprint(const ExperimentConfig& config);

}  // namespace blockade

#endif  // BLOCKADE_CONFIG_HPP
