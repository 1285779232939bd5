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

#ifndef BLOCKADE_TRAJECTORY_HPP
#define BLOCKADE_TRAJECTORY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "blockade/dynamics.hpp"
#include "blockade/fockspace.hpp"

namespace blockade {

enum class Channel { CavityDecay, SpontaneousEmission };

std::string_view to_string(Channel c);

struct JumpEvent {
    double time = 0.0;  ///< ns
    Channel channel = Channel::CavityDecay;
};

struct SimulationWindow {
    double t_final = 1.0;   ///< ns
    double dt_max = 1e-3;   ///< ns
    double jump_tol = 1e-6; ///< ns

    void validate() const;
};

/// 0.02 / (largest frequency scale of the problem).
double default_max_step(const SystemParams& params, const DriveProtocol& protocol, const DetuningSchedule& schedule);

/// Pulse centred at 5 tau; window ends max(5 tau, 8/kappa) after the centre.
SimulationWindow pulsed_window(const SystemParams& params, const GaussianPulse& pulse,
                               const DetuningSchedule& schedule);
/// Window ends 8/kappa after the detuning ramp returns to delta_max.
SimulationWindow stark_window(const SystemParams& params, const ConstantDrive& drive,
                              const SmoothedTrapezoid& schedule);

/// <a^dag a> and <s+ s-> of the normalized state, sampled on a time grid.
struct ObservableSamples {
    std::vector<double> photon_number;
    std::vector<double> emitter_excitation;
};

struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<JumpEvent> events;  ///< strictly increasing in time
    int clicks = 0;                 ///< number of CavityDecay events
    double final_norm_sq = 1.0;
    ObservableSamples samples;      ///< empty unless a sample grid was requested

    // Invariant diagnostics.
    double max_norm_increase = 0.0;    ///< largest rise of |psi|^2 over one accepted step between jumps
    double max_post_jump_error = 0.0;  ///< largest | |psi|^2 - 1 | right after a jump
    double max_channel_sum_error = 0.0;
    std::size_t accepted_steps = 0;
};

struct TrajectoryOptions {
    double atol = 1e-10;
    /// Sorted times in [0, t_final] at which observables are recorded.
    std::vector<double> sample_times;
    /// Defaults to |g, 0>.
    std::optional<Eigen::VectorXcd> initial_state;
    /// Called at each sample time with the unnormalized state.
    std::function<void(double, const Eigen::VectorXcd&)> observer;
};

/// Monte-Carlo wavefunction unraveling with collapse operators sqrt(kappa) a
/// (monitored, counted as clicks) and sqrt(gamma) s- (recorded, not counted).
///
/// Throws NumericalError on step-size underflow (< 1e-9 ns) or when |psi|^2
/// exceeds 1 + 1e-6.
TrajectoryRecord run_trajectory(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                                const DetuningSchedule& schedule, const SimulationWindow& window, std::uint64_t seed,
                                const TrajectoryOptions& options = {});

struct BatchOptions {
    unsigned threads = 0;  ///< 0 = hardware concurrency
    TrajectoryOptions trajectory;
};

/// Trajectory i uses derive_seed(base_seed, i). The result is bit-identical
/// for any thread count. A failing trajectory is reported with its index.
std::vector<TrajectoryRecord> run_batch(const FockSpace& space, const SystemParams& params,
                                        const DriveProtocol& protocol, const DetuningSchedule& schedule,
                                        const SimulationWindow& window, std::uint64_t base_seed, std::size_t n_traj,
                                        const BatchOptions& options = {});

/// Hash of every physics-affecting input (FNV-1a over the raw bits).
std::uint64_t physics_fingerprint(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                                  const DetuningSchedule& schedule, const SimulationWindow& window);

double photon_number(const FockSpace& space, const Eigen::VectorXcd& psi);
double emitter_excitation(const FockSpace& space, const Eigen::VectorXcd& psi);

}  // namespace blockade

#endif  // BLOCKADE_TRAJECTORY_HPP
