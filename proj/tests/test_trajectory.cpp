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

#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "blockade/random.hpp"

namespace blockade {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
    return v;
}

SimulationWindow window_for(const SystemParams& p, const DriveProtocol& d, const DetuningSchedule& s, double t_final) {
    SimulationWindow w;
    w.t_final = t_final;
    w.dt_max = default_max_step(p, d, s);
    return w;
}

TEST(Trajectory, VacuumRabiOscillation) {
    const FockSpace space(3);
    const double g = kTwoPi * 40.0;
    const SystemParams params{g, 0.0, 0.0, 0.0};
    const ConstantDrive drive{0.0};
    const ConstantDetuning schedule{0.0};
    TrajectoryOptions opt;
    opt.initial_state = QuantumState::basis(space, 0, Emitter::Excited).amplitudes();
    opt.sample_times = linspace(0.0, 0.05, 101);
    const auto rec = run_trajectory(space, params, drive, schedule, window_for(params, drive, schedule, 0.05), 1, opt);
    ASSERT_EQ(rec.samples.emitter_excitation.size(), 101u);
    for (std::size_t k = 0; k < opt.sample_times.size(); ++k) {
        const double t = opt.sample_times[k];
        EXPECT_NEAR(rec.samples.emitter_excitation[k], std::pow(std::cos(g * t), 2), 1e-6) << t;
        EXPECT_NEAR(rec.samples.photon_number[k], std::pow(std::sin(g * t), 2), 1e-6) << t;
    }
    EXPECT_TRUE(rec.events.empty());
}

TEST(Trajectory, UndrivenVacuumNeverJumps) {
    const FockSpace space(4);
    const SystemParams params{kTwoPi * 40, kTwoPi, kTwoPi * 0.1, -kTwoPi * 40};
    const GaussianPulse pulse{0.0, 0.5, 0.07};
    const auto window = pulsed_window(params, pulse, ConstantDetuning{0.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rec = run_trajectory(space, params, pulse, ConstantDetuning{0.0}, window, seed);
        EXPECT_TRUE(rec.events.empty());
        EXPECT_EQ(rec.clicks, 0);
        EXPECT_NEAR(rec.final_norm_sq, 1.0, 1e-12);
    }
}

TEST(Trajectory, SinglePhotonJumpTimeMatchesThreshold) {
    // |g,1> with g = 0 decays as exp(-kappa t); the jump happens where the
    // squared norm meets the first uniform draw of the stream.
    const FockSpace space(2);
    const double kappa = kTwoPi;
    const SystemParams params{0.0, kappa, 0.0, 0.0};
    const ConstantDrive drive{0.0};
    const ConstantDetuning schedule{0.0};
    TrajectoryOptions opt;
    opt.initial_state = QuantumState::basis(space, 1, Emitter::Ground).amplitudes();
    const auto window = window_for(params, drive, schedule, 40.0 / kappa);
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto rec = run_trajectory(space, params, drive, schedule, window, seed, opt);
        UniformStream stream(seed);
        const double expected = -std::log(stream.next()) / kappa;
        if (expected < window.t_final) {
            ASSERT_EQ(rec.events.size(), 1u);
            EXPECT_EQ(rec.events[0].channel, Channel::CavityDecay);
            EXPECT_NEAR(rec.events[0].time, expected, 2e-6);
            EXPECT_EQ(rec.clicks, 1);
        }
    }
}

TEST(Trajectory, EmitterDecayIsExponentialAndUncounted) {
    const FockSpace space(1);
    const double gamma = 2.0;
    const SystemParams params{0.0, 0.0, gamma, 0.0};
    const ConstantDrive drive{0.0};
    const ConstantDetuning schedule{0.0};
    BatchOptions opt;
    opt.threads = 1;
    opt.trajectory.initial_state = QuantumState::basis(space, 0, Emitter::Excited).amplitudes();
    const double horizon = 0.5;
    const auto records = run_batch(space, params, drive, schedule, window_for(params, drive, schedule, horizon), 7,
                                   2000, opt);
    std::size_t decayed = 0;
    for (const auto& r : records) {
        EXPECT_EQ(r.clicks, 0);
        for (const auto& e : r.events) EXPECT_EQ(e.channel, Channel::SpontaneousEmission);
        decayed += r.events.size();
    }
    const double p = 1.0 - std::exp(-gamma * horizon);
    const double sigma = std::sqrt(p * (1.0 - p) / 2000.0);
    EXPECT_NEAR(static_cast<double>(decayed) / 2000.0, p, 4.0 * sigma);
}

TEST(Trajectory, DrivenInvariants) {
    const FockSpace space(8);
    const SystemParams params{kTwoPi * 40, kTwoPi, kTwoPi * 0.1, -kTwoPi * 40};
    const double tau = 0.45 / params.kappa;
    const GaussianPulse pulse{3.0 * std::sqrt(std::numbers::pi / 2.0) / tau, 5.0 * tau, tau};
    const auto window = pulsed_window(params, pulse, ConstantDetuning{0.0});
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto rec = run_trajectory(space, params, pulse, ConstantDetuning{0.0}, window, derive_seed(3, seed));
        int cavity = 0;
        double last = -1.0;
        for (const auto& e : rec.events) {
            EXPECT_GT(e.time, last);
            EXPECT_LE(e.time, window.t_final);
            last = e.time;
            cavity += e.channel == Channel::CavityDecay;
        }
        EXPECT_EQ(rec.clicks, cavity);
        EXPECT_LE(rec.max_norm_increase, 1e-9);
        EXPECT_LE(rec.max_post_jump_error, 1e-12);
        EXPECT_LE(rec.max_channel_sum_error, 1e-12);
        EXPECT_LE(rec.final_norm_sq, 1.0 + 1e-12);
    }
}

TEST(Trajectory, EnergyConservedWithoutLoss) {
    const FockSpace space(6);
    const SystemParams params{kTwoPi * 30, 0.0, 0.0, kTwoPi * 5};
    const ConstantDrive drive{kTwoPi * 4};
    const ConstantDetuning schedule{kTwoPi * 3};
    const Eigen::MatrixXcd h = hamiltonian(space, params, drive, schedule, 0.0).matrix();

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(space.dim());
    psi0(space.index(0, Emitter::Ground)) = 0.6;
    psi0(space.index(1, Emitter::Ground)) = Complex(0.0, 0.48);
    psi0(space.index(0, Emitter::Excited)) = 0.64;
    const double e0 = (psi0.adjoint() * h * psi0)(0).real() / psi0.squaredNorm();

    TrajectoryOptions opt;
    opt.initial_state = psi0;
    opt.sample_times = linspace(0.0, 0.2, 41);
    double worst = 0.0;
    opt.observer = [&](double, const Eigen::VectorXcd& psi) {
        const double e = (psi.adjoint() * h * psi)(0).real() / psi.squaredNorm();
        worst = std::max(worst, std::abs(e - e0));
    };
    const auto rec = run_trajectory(space, params, drive, schedule, window_for(params, drive, schedule, 0.2), 5, opt);
    EXPECT_TRUE(rec.events.empty());
    EXPECT_LE(worst, 1e-8 * std::max(1.0, std::abs(e0)));
}

TEST(Batch, DeterministicAcrossThreadCounts) {
    const FockSpace space(5);
    const SystemParams params{kTwoPi * 30, kTwoPi * 5, kTwoPi * 0.1, -kTwoPi * 30};
    const double tau = 0.45 / params.kappa;
    const GaussianPulse pulse{std::sqrt(std::numbers::pi / 2.0) / tau, 5.0 * tau, tau};
    const auto window = pulsed_window(params, pulse, ConstantDetuning{0.0});
    auto run = [&](unsigned threads) {
        BatchOptions opt;
        opt.threads = threads;
        return run_batch(space, params, pulse, ConstantDetuning{0.0}, window, 2024, 24, opt);
    };
    const auto one = run(1);
    for (unsigned threads : {2u, 4u}) {
        const auto many = run(threads);
        ASSERT_EQ(one.size(), many.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            EXPECT_EQ(one[i].seed, many[i].seed);
            EXPECT_EQ(one[i].clicks, many[i].clicks);
            ASSERT_EQ(one[i].events.size(), many[i].events.size());
            for (std::size_t k = 0; k < one[i].events.size(); ++k) {
                EXPECT_EQ(one[i].events[k].time, many[i].events[k].time);
                EXPECT_EQ(one[i].events[k].channel, many[i].events[k].channel);
            }
        }
    }
}

TEST(Batch, SingleTrajectoryUsesDerivedSeed) {
    const FockSpace space(4);
    const SystemParams params{kTwoPi * 30, kTwoPi * 5, kTwoPi * 0.1, -kTwoPi * 30};
    const GaussianPulse pulse{100.0, 0.07, 0.014};
    const auto window = pulsed_window(params, pulse, ConstantDetuning{0.0});
    const auto batch = run_batch(space, params, pulse, ConstantDetuning{0.0}, window, 77, 1);
    const auto single = run_trajectory(space, params, pulse, ConstantDetuning{0.0}, window, derive_seed(77, 0));
    ASSERT_EQ(batch.size(), 1u);
    EXPECT_EQ(batch[0].seed, single.seed);
    EXPECT_EQ(batch[0].clicks, single.clicks);
    ASSERT_EQ(batch[0].events.size(), single.events.size());
    for (std::size_t k = 0; k < single.events.size(); ++k) EXPECT_EQ(batch[0].events[k].time, single.events[k].time);
}

TEST(Batch, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(0, i));
    EXPECT_EQ(seen.size(), 10000u);
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Batch, FailuresCarryTheTrajectoryIndex) {
    const FockSpace space(4);
    const SystemParams params{kTwoPi * 30, kTwoPi * 5, 0.0, 0.0};
    const ConstantDrive drive{kTwoPi * 10};
    SimulationWindow window;
    window.t_final = 1.0;
    window.dt_max = 0.5;
    BatchOptions opt;
    opt.trajectory.atol = 1e6;  // accepts every step, so explicit stepping blows up
    try {
        run_batch(space, params, drive, ConstantDetuning{0.0}, window, 1, 3, opt);
        FAIL() << "expected a numerical error";
    } catch (const NumericalError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("trajectory 0:", 0), 0u) << e.what();
    }

    BatchOptions bad_grid;
    bad_grid.trajectory.sample_times = {0.5, 0.1};
    EXPECT_THROW(run_batch(space, params, drive, ConstantDetuning{0.0}, window, 1, 2, bad_grid), ValidationError);
    EXPECT_THROW(run_batch(space, params, drive, ConstantDetuning{0.0}, window, 1, 0), ValidationError);
}

TEST(Window, Validation) {
    SimulationWindow w;
    w.t_final = 0.0;
    EXPECT_THROW(w.validate(), ValidationError);
    w.t_final = 1.0;
    w.dt_max = -1.0;
    EXPECT_THROW(w.validate(), ValidationError);
    w.dt_max = 1e-3;
    w.jump_tol = 0.0;
    EXPECT_THROW(w.validate(), ValidationError);

    const SystemParams lossless{1.0, 0.0, 0.0, 0.0};
    EXPECT_THROW(pulsed_window(lossless, GaussianPulse{1.0, 1.0, 0.2}, ConstantDetuning{0.0}), ValidationError);
}

TEST(Window, PulsedAndStarkDefaults) {
    const SystemParams params{kTwoPi * 40, kTwoPi, 0.0, -kTwoPi * 40};
    const GaussianPulse pulse{10.0, 0.35, 0.07};
    const auto pw = pulsed_window(params, pulse, ConstantDetuning{0.0});
    EXPECT_NEAR(pw.t_final, 0.35 + 8.0 / params.kappa, 1e-12);
    EXPECT_NEAR(pw.dt_max, 0.02 / (kTwoPi * 40), 1e-15);

    const SmoothedTrapezoid s{kTwoPi * 40, 0.2, 0.5, 0.05};
    const auto sw = stark_window(params, ConstantDrive{1.0}, s);
    EXPECT_NEAR(sw.t_final, 0.55 + 8.0 / params.kappa, 1e-12);
    EXPECT_NEAR(sw.dt_max, 0.02 / (kTwoPi * 80), 1e-15);
}

TEST(Fingerprint, ChangesWithEveryPhysicsInput) {
    const FockSpace space(4);
    const SystemParams params{1.0, 2.0, 3.0, 4.0};
    const GaussianPulse pulse{5.0, 6.0, 7.0};
    const ConstantDetuning schedule{8.0};
    const SimulationWindow window{9.0, 0.01, 1e-6};
    const auto base = physics_fingerprint(space, params, pulse, schedule, window);
    EXPECT_EQ(base, physics_fingerprint(space, params, pulse, schedule, window));
    EXPECT_NE(base, physics_fingerprint(FockSpace(5), params, pulse, schedule, window));
    EXPECT_NE(base, physics_fingerprint(space, {1.0, 2.0, 3.0, 4.5}, pulse, schedule, window));
    EXPECT_NE(base, physics_fingerprint(space, params, GaussianPulse{5.0, 6.0, 7.5}, schedule, window));
    EXPECT_NE(base, physics_fingerprint(space, params, ConstantDrive{5.0}, schedule, window));
    EXPECT_NE(base, physics_fingerprint(space, params, pulse, ConstantDetuning{8.5}, window));
    EXPECT_NE(base, physics_fingerprint(space, params, pulse, schedule, SimulationWindow{9.5, 0.01, 1e-6}));
}

}  // namespace
}  // namespace blockade
