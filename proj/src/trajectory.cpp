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

#include "blockade/trajectory.hpp"

#include <algorithm>
#include <bit>
#include <type_traits>
#include <cmath>
#include <string>

#include "blockade/integrator.hpp"
#include "blockade/parallel.hpp"
#include "blockade/random.hpp"

namespace blockade {

namespace {

constexpr double kBlowUpSlack = 1e-6;
constexpr double kMinStep = 1e-9;

// Squared norms of a psi and s- psi.
double cavity_weight(const FockSpace& space, const Eigen::VectorXcd& psi) {
    double sum = 0.0;
    for (Eigen::Index i = 2; i < space.dim(); ++i) sum += space.photons(i) * std::norm(psi(i));
    return sum;
}

double emitter_weight(const Eigen::VectorXcd& psi) {
    double sum = 0.0;
    for (Eigen::Index i = 1; i < psi.size(); i += 2) sum += std::norm(psi(i));
    return sum;
}

void apply_annihilation(const FockSpace& space, Eigen::VectorXcd& psi) {
    const int n_max = space.n_max();
    for (int n = 0; n < n_max; ++n) {
        const double s = std::sqrt(static_cast<double>(n + 1));
        psi(2 * n) = s * psi(2 * n + 2);
        psi(2 * n + 1) = s * psi(2 * n + 3);
    }
    psi(2 * n_max) = 0.0;
    psi(2 * n_max + 1) = 0.0;
}

void apply_lowering(Eigen::VectorXcd& psi) {
    for (Eigen::Index i = 0; i + 1 < psi.size(); i += 2) {
        psi(i) = psi(i + 1);
        psi(i + 1) = 0.0;
    }
}

}  // namespace

std::string_view to_string(Channel c) {
    return c == Channel::CavityDecay ? "cavity" : "emitter";
}

void SimulationWindow::validate() const {
    if (!(t_final > 0.0)) throw ValidationError("t_final must be > 0");
    if (!(dt_max > 0.0)) throw ValidationError("dt_max must be > 0");
    if (!(jump_tol > 0.0)) throw ValidationError("jump_tol must be > 0");
}

double default_max_step(const SystemParams& params, const DriveProtocol& protocol, const DetuningSchedule& schedule) {
    const double scale = std::max({params.g, params.kappa, peak_amplitude(protocol), std::abs(params.delta_c),
                                   std::abs(params.delta_c) + peak_detuning(schedule)});
    return scale > 0.0 ? 0.02 / scale : 1e-2;
}

SimulationWindow pulsed_window(const SystemParams& params, const GaussianPulse& pulse,
                               const DetuningSchedule& schedule) {
    if (!(params.kappa > 0.0)) throw ValidationError("pulsed window needs kappa > 0");
    SimulationWindow w;
    w.t_final = pulse.t0 + std::max(5.0 * pulse.tau, 8.0 / params.kappa);
    w.dt_max = default_max_step(params, pulse, schedule);
    return w;
}

SimulationWindow stark_window(const SystemParams& params, const ConstantDrive& drive,
                              const SmoothedTrapezoid& schedule) {
    if (!(params.kappa > 0.0)) throw ValidationError("stark window needs kappa > 0");
    SimulationWindow w;
    w.t_final = schedule.t_off + schedule.t_ramp + 8.0 / params.kappa;
    w.dt_max = default_max_step(params, drive, schedule);
    return w;
}

std::uint64_t physics_fingerprint(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                                  const DetuningSchedule& schedule, const SimulationWindow& window) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            hash ^= (word >> (8 * b)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    auto mix_double = [&mix](double x) { mix(std::bit_cast<std::uint64_t>(x)); };

    mix(static_cast<std::uint64_t>(space.n_max()));
    for (double x : {params.g, params.kappa, params.gamma, params.delta_c}) mix_double(x);
    mix(protocol.index());
    std::visit([&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        mix_double(p.omega0);
        if constexpr (std::is_same_v<T, GaussianPulse>) {
            mix_double(p.t0);
            mix_double(p.tau);
        }
    }, protocol);
    mix(schedule.index());
    std::visit([&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantDetuning>) {
            mix_double(s.offset);
        } else {
            for (double x : {s.delta_max, s.t_on, s.t_off, s.t_ramp}) mix_double(x);
        }
    }, schedule);
    for (double x : {window.t_final, window.dt_max, window.jump_tol}) mix_double(x);
    return hash;
}

double photon_number(const FockSpace& space, const Eigen::VectorXcd& psi) {
    return cavity_weight(space, psi) / psi.squaredNorm();
}

double emitter_excitation(const FockSpace&, const Eigen::VectorXcd& psi) {
    return emitter_weight(psi) / psi.squaredNorm();
}

TrajectoryRecord run_trajectory(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                                const DetuningSchedule& schedule, const SimulationWindow& window, std::uint64_t seed,
                                const TrajectoryOptions& options) {
    window.validate();
    const EffectiveGenerator generator(space, params, protocol, schedule);
    auto rhs = [&generator](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { generator.apply(t, y, dy); };

    StepperOptions stepper_options;
    stepper_options.atol = options.atol;
    stepper_options.h_min = kMinStep;
    stepper_options.h_max = window.dt_max;
    DormandPrince45<Eigen::VectorXcd, decltype(rhs)> stepper(rhs, stepper_options);

    Eigen::VectorXcd psi;
    if (options.initial_state) {
        if (options.initial_state->size() != space.dim()) throw ValidationError("initial state has wrong dimension");
        psi = options.initial_state->normalized();
    } else {
        psi = Eigen::VectorXcd::Zero(space.dim());
        psi(space.index(0, Emitter::Ground)) = 1.0;
    }

    const auto& grid = options.sample_times;
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        (!grid.empty() && (grid.front() < 0.0 || grid.back() > window.t_final))) {
        throw ValidationError("sample times must be sorted and inside [0, t_final]");
    }

    TrajectoryRecord record;
    record.seed = seed;
    record.samples.photon_number.reserve(grid.size());
    record.samples.emitter_excitation.reserve(grid.size());

    std::size_t next_sample = 0;
    auto record_sample = [&](double t) {
        record.samples.photon_number.push_back(photon_number(space, psi));
        record.samples.emitter_excitation.push_back(emitter_excitation(space, psi));
        if (options.observer) options.observer(t, psi);
        ++next_sample;
    };

    UniformStream rng(seed);
    double threshold = rng.next();
    double t = 0.0;
    double h = window.dt_max;
    double norm_prev = psi.squaredNorm();
    while (next_sample < grid.size() && grid[next_sample] <= 0.0) record_sample(0.0);

    Eigen::VectorXcd trial_state(space.dim());
    Eigen::VectorXcd probe(space.dim());
    stepper.begin(t, psi);

    while (t < window.t_final) {
        const double t_stop = next_sample < grid.size() ? grid[next_sample] : window.t_final;
        const double trial = std::min({h, window.dt_max, t_stop - t});
        const double err = stepper.attempt(psi, trial, trial_state);
        if (err > 1.0) {
            h = std::max(0.2, 0.9 * std::pow(err, -0.2)) * trial;
            if (h < kMinStep) {
                throw NumericalError("step size underflow at t=" + std::to_string(t) + " ns");
            }
            continue;
        }
        const double norm_next = trial_state.squaredNorm();
        if (norm_next > 1.0 + kBlowUpSlack) {
            throw NumericalError("state norm blew up to " + std::to_string(norm_next) + " at t=" +
                                 std::to_string(t) + " ns");
        }
        record.max_norm_increase = std::max(record.max_norm_increase, norm_next - norm_prev);

        if (norm_next > threshold) {
            stepper.accept(trial);
            ++record.accepted_steps;
            h = stepper.propose(trial, err);
            t = (t_stop - (t + trial) <= 1e-15 * std::max(1.0, t_stop)) ? t_stop : t + trial;
            psi.swap(trial_state);
            norm_prev = norm_next;
            while (next_sample < grid.size() && grid[next_sample] <= t) record_sample(t);
            continue;
        }

        // The threshold was crossed inside [t, t + trial]: bisect on the step
        // length, re-integrating from the last accepted point.
        double lo = 0.0;
        double hi = trial;
        while (hi - lo > window.jump_tol) {
            const double mid = 0.5 * (lo + hi);
            stepper.attempt(psi, mid, probe);
            if (probe.squaredNorm() > threshold) {
                lo = mid;
            } else {
                hi = mid;
                trial_state.swap(probe);
            }
        }
        t += hi;
        psi.swap(trial_state);

        const double w_cavity = params.kappa * cavity_weight(space, psi);
        const double w_emitter = params.gamma * emitter_weight(psi);
        const double w_total = w_cavity + w_emitter;
        if (!(w_total > 0.0)) {
            throw NumericalError("norm decayed with no active collapse channel at t=" + std::to_string(t));
        }
        const double p_cavity = w_cavity / w_total;
        const double p_emitter = w_emitter / w_total;
        record.max_channel_sum_error = std::max(record.max_channel_sum_error, std::abs(p_cavity + p_emitter - 1.0));

        const Channel channel = rng.next() < p_cavity ? Channel::CavityDecay : Channel::SpontaneousEmission;
        if (channel == Channel::CavityDecay) {
            apply_annihilation(space, psi);
            ++record.clicks;
        } else {
            apply_lowering(psi);
        }
        psi /= std::sqrt(psi.squaredNorm());
        record.max_post_jump_error = std::max(record.max_post_jump_error, std::abs(psi.squaredNorm() - 1.0));
        record.events.push_back({t, channel});

        threshold = rng.next();
        norm_prev = psi.squaredNorm();
        stepper.begin(t, psi);
    }

    record.final_norm_sq = psi.squaredNorm();
    return record;
}

std::vector<TrajectoryRecord> run_batch(const FockSpace& space, const SystemParams& params,
                                        const DriveProtocol& protocol, const DetuningSchedule& schedule,
                                        const SimulationWindow& window, std::uint64_t base_seed, std::size_t n_traj,
                                        const BatchOptions& options) {
    if (n_traj < 1) throw ValidationError("n_traj must be >= 1");
    std::vector<TrajectoryRecord> records(n_traj);
    parallel_for(n_traj, options.threads, [&](std::size_t i) {
        try {
            records[i] = run_trajectory(space, params, protocol, schedule, window, derive_seed(base_seed, i),
                                        options.trajectory);
        } catch (const NumericalError& e) {
            throw NumericalError("trajectory " + std::to_string(i) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("trajectory " + std::to_string(i) + ": " + e.what());
        }
    });
    return records;
}

}  // namespace blockade
