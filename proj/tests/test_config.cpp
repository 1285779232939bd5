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

#include "blockade/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

namespace blockade {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::string kMinimal = R"({"g": 40, "kappa": 1, "gamma": 0.1})";

std::string with(const std::string& extra) {
    return R"({"g": 40, "kappa": 1, "gamma": 0.1, )" + extra + "}";
}

void expect_field_error(const std::string& text, const std::string& field) {
    try {
        parse_config(text);
        FAIL() << "accepted: " << text;
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("'" + field + "'"), std::string::npos) << e.what();
    }
}

TEST(Config, DefaultsAndUnitConversion) {
    const auto c = parse_config(kMinimal);
    EXPECT_TRUE(c.rates_are_over_2pi);
    EXPECT_DOUBLE_EQ(c.system.g, kTwoPi * 40.0);
    EXPECT_DOUBLE_EQ(c.system.kappa, kTwoPi);
    EXPECT_DOUBLE_EQ(c.system.gamma, kTwoPi * 0.1);
    EXPECT_EQ(c.protocol, ProtocolKind::Pulsed);
    EXPECT_EQ(c.branch, Branch::Upper);
    EXPECT_DOUBLE_EQ(c.system.delta_c, -c.system.g);
    EXPECT_EQ(c.n_traj, 3000u);
    EXPECT_EQ(c.n_max, 8);
    EXPECT_DOUBLE_EQ(c.tau_per_kappa, 0.45);
    EXPECT_DOUBLE_EQ(c.delta_max, c.system.g);
}

TEST(Config, AngularRatesWhenFlagIsOff) {
    const auto c = parse_config(R"({"rates_are_over_2pi": false, "g": 40, "kappa": 1, "gamma": 0.1, "omega0": 3})");
    EXPECT_EQ(c.system.g, 40.0);
    EXPECT_EQ(*c.omega0, 3.0);
    EXPECT_EQ(c.from_angular(3.0), 3.0);
}

TEST(Config, BranchSelection) {
    EXPECT_DOUBLE_EQ(parse_config(with(R"("protocol": "stark")")).system.delta_c, kTwoPi * 40.0);
    EXPECT_DOUBLE_EQ(parse_config(with(R"("branch": "lower")")).system.delta_c, kTwoPi * 40.0);
    EXPECT_DOUBLE_EQ(parse_config(with(R"("protocol": "stark", "branch": "upper")")).system.delta_c,
                     -kTwoPi * 40.0);
    EXPECT_DOUBLE_EQ(parse_config(with(R"("delta_c": 2.5)")).system.delta_c, kTwoPi * 2.5);
}

TEST(Config, CommentsAreAllowed) {
    const auto c = parse_config("{\n  // coupling\n  \"g\": 30, \"kappa\": 5, \"gamma\": 0.1\n}");
    EXPECT_DOUBLE_EQ(c.system.kappa, kTwoPi * 5.0);
}

TEST(Config, FieldLevelErrors) {
    expect_field_error(with(R"("kapa": 2)"), "kapa");
    expect_field_error(R"({"kappa": 1, "gamma": 0.1})", "g");
    expect_field_error(R"({"g": 40, "kappa": 0, "gamma": 0.1})", "kappa");
    expect_field_error(R"({"g": -1, "kappa": 1, "gamma": 0.1})", "g");
    expect_field_error(with(R"("n_traj": 0)"), "n_traj");
    expect_field_error(with(R"("n_traj": 2.5)"), "n_traj");
    expect_field_error(with(R"("n_max": 0)"), "n_max");
    expect_field_error(with(R"("sweep_steps": 1)"), "sweep_steps");
    expect_field_error(with(R"("sweep_from": 2, "sweep_to": 1)"), "sweep_from");
    expect_field_error(with(R"("branch": "middle")"), "branch");
    expect_field_error(with(R"("branch": "upper", "delta_c": 1)"), "delta_c");
    expect_field_error(with(R"("rates_are_over_2pi": "yes")"), "rates_are_over_2pi");
    expect_field_error(with(R"("omega0": {"value": 1})"), "omega0");
    expect_field_error(with(R"("base_seed": -4)"), "base_seed");
    expect_field_error(with(R"("protocol": "stark", "plateau_per_kappa": 0.05)"), "plateau_per_kappa");
    expect_field_error(with(R"("sweep_axis": "stark_amplitude")"), "sweep_axis");
    EXPECT_THROW(parse_config("[1, 2]"), ValidationError);
    EXPECT_THROW(parse_config("{\"g\": "), ValidationError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ValidationError);
}

TEST(Config, PulsedOperatingPoint) {
    const auto c = parse_config(with(R"("omega0": 2.5)"));
    const auto p = point_setup(c);
    const auto& pulse = std::get<GaussianPulse>(p.protocol);
    EXPECT_DOUBLE_EQ(pulse.omega0, kTwoPi * 2.5);
    EXPECT_DOUBLE_EQ(pulse.tau, 0.45 / kTwoPi);
    EXPECT_DOUBLE_EQ(pulse.t0, 5.0 * pulse.tau);
    EXPECT_EQ(std::get<ConstantDetuning>(p.schedule).offset, 0.0);
    EXPECT_DOUBLE_EQ(p.window.t_final, pulse.t0 + 8.0 / kTwoPi);
    EXPECT_EQ(p.space.n_max(), 8);
    EXPECT_THROW(point_setup(parse_config(kMinimal)), ValidationError);
}

TEST(Config, StarkOperatingPoint) {
    const auto c = parse_config(with(R"("protocol": "stark", "omega0": 2, "plateau_per_kappa": 0.9,
                                        "t_final_ns": 3.5, "jump_tol_ns": 1e-7)"));
    const auto p = point_setup(c);
    const double kappa = kTwoPi;
    const auto& s = std::get<SmoothedTrapezoid>(p.schedule);
    EXPECT_DOUBLE_EQ(s.delta_max, kTwoPi * 40.0);
    EXPECT_DOUBLE_EQ(s.t_ramp, 0.1 / kappa);
    EXPECT_DOUBLE_EQ(s.t_on, 0.6 / kappa);
    EXPECT_DOUBLE_EQ(s.t_off, 0.6 / kappa + 0.9 / kappa);
    EXPECT_EQ(p.window.t_final, 3.5);
    EXPECT_EQ(p.window.jump_tol, 1e-7);
    EXPECT_DOUBLE_EQ(std::get<ConstantDrive>(p.protocol).omega0, kTwoPi * 2.0);
    EXPECT_THROW(point_setup(c, SweepAxis::DriveAmplitude, 1.0), ValidationError);
}

TEST(Config, SweepGrids) {
    const auto c = parse_config(kMinimal);
    const auto amp = sweep_grid(c, SweepAxis::DriveAmplitude);
    ASSERT_EQ(amp.size(), 21u);
    EXPECT_EQ(amp.front(), 0.0);
    EXPECT_DOUBLE_EQ(amp.back(), 4.0 * std::sqrt(std::numbers::pi / 2.0) * kTwoPi / 0.45);
    for (std::size_t k = 1; k < amp.size(); ++k) EXPECT_GT(amp[k], amp[k - 1]);

    const auto widths = sweep_grid(parse_config(with(R"("omega0": 2.8)")), SweepAxis::PulseWidth);
    EXPECT_DOUBLE_EQ(widths.front(), 0.01 / kTwoPi);
    EXPECT_DOUBLE_EQ(widths.back(), 3.0 / kTwoPi);
    EXPECT_DOUBLE_EQ(display_value(c, SweepAxis::PulseWidth, widths.front()), 0.01);

    const auto custom = sweep_grid(parse_config(with(R"("sweep_from": 1, "sweep_to": 3, "sweep_steps": 3)")),
                                   SweepAxis::DriveAmplitude);
    ASSERT_EQ(custom.size(), 3u);
    EXPECT_DOUBLE_EQ(display_value(c, SweepAxis::DriveAmplitude, custom[1]), 2.0);

    EXPECT_THROW(sweep_grid(parse_config(with(R"("sweep_axis": "width")")), SweepAxis::DriveAmplitude),
                 ValidationError);
}

TEST(Config, FingerprintTracksPhysicsOnly) {
    const std::string base = R"("omega0": 2.8, "n_traj": 100, "base_seed": 3)";
    const auto reference = config_fingerprint(parse_config(with(base)));
    EXPECT_EQ(reference, config_fingerprint(parse_config(with(base))));

    // Statistical settings do not change the physics.
    EXPECT_EQ(reference, config_fingerprint(parse_config(with(R"("omega0": 2.8, "n_traj": 500, "base_seed": 9,
                                                                  "oracle_sigmas": 4, "oracle_points": 30)"))));

    for (const std::string extra :
         {R"("omega0": 2.9)", R"("omega0": 2.8, "tau_per_kappa": 0.5)", R"("omega0": 2.8, "n_max": 9)",
          R"("omega0": 2.8, "branch": "lower")", R"("omega0": 2.8, "t_final_ns": 5)",
          R"("omega0": 2.8, "sweep_steps": 5)", R"("omega0": 2.8, "atol": 1e-9)",
          R"("omega0": 2.8, "protocol": "stark")", R"("omega0": 2.8, "t0_per_tau": 4)"}) {
        EXPECT_NE(reference, config_fingerprint(parse_config(with(extra)))) << extra;
    }
    EXPECT_NE(reference, config_fingerprint(parse_config(R"({"g": 41, "kappa": 1, "gamma": 0.1, "omega0": 2.8})")));

    // The same physics written in angular units hashes identically.
    char angular[256];
    std::snprintf(angular, sizeof angular,
                  R"({"rates_are_over_2pi": false, "g": %.17g, "kappa": %.17g, "gamma": %.17g, "omega0": %.17g})",
                  kTwoPi * 40.0, kTwoPi * 1.0, kTwoPi * 0.1, kTwoPi * 2.8);
    EXPECT_EQ(config_fingerprint(parse_config(with(R"("omega0": 2.8)"))),
              config_fingerprint(parse_config(angular)));
}

}  // namespace
}  // namespace blockade
