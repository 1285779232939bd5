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

#ifndef BLOCKADE_DYNAMICS_HPP
#define BLOCKADE_DYNAMICS_HPP

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "blockade/fockspace.hpp"

namespace blockade {

/// Physical rates in angular units (rad/ns). Times elsewhere are in ns.
struct SystemParams {
    double g = 0.0;       ///< emitter-cavity coupling
    double kappa = 0.0;   ///< cavity decay (energy decay rate of the a-channel)
    double gamma = 0.0;   ///< emitter spontaneous emission rate
    double delta_c = 0.0; ///< cavity-laser detuning omega_c - omega_l

    void validate() const;
    bool strongly_coupled() const noexcept { return g > kappa && g > gamma; }
};

struct GaussianPulse {
    double omega0 = 0.0; ///< peak Rabi amplitude (rad/ns)
    double t0 = 0.0;     ///< pulse centre (ns)
    double tau = 1.0;    ///< width (ns); envelope is exp(-((t - t0)/tau)^2)
};

struct ConstantDrive {
    double omega0 = 0.0;
};

using DriveProtocol = std::variant<GaussianPulse, ConstantDrive>;

/// Emitter-cavity detuning (omega_a - omega_c) held fixed.
struct ConstantDetuning {
    double offset = 0.0;
};

/// Emitter-cavity detuning that sits at `delta_max`, ramps to zero with a
/// raised-cosine edge ending at t_on, stays resonant until t_off, and ramps
/// back to `delta_max` over another t_ramp.
struct SmoothedTrapezoid {
    double delta_max = 0.0;
    double t_on = 0.0;
    double t_off = 0.0;
    double t_ramp = 0.0;
};

using DetuningSchedule = std::variant<ConstantDetuning, SmoothedTrapezoid>;

void validate(const DriveProtocol& protocol);
void validate(const DetuningSchedule& schedule);

double peak_amplitude(const DriveProtocol& protocol);
double peak_detuning(const DetuningSchedule& schedule);

/// Omega(t) in rad/ns.
double envelope(const DriveProtocol& protocol, double t);

/// Emitter-cavity detuning at time t (rad/ns).
double detuning(const DetuningSchedule& schedule, double t);

/// Emitter-laser detuning Delta_a(t) = Delta_c + (omega_a - omega_c)(t).
double emitter_detuning(const SystemParams& params, const DetuningSchedule& schedule, double t);

/// Rotating-frame Hamiltonian
///   H(t) = Delta_a(t) s+s- + Delta_c a^dag a + i g (a^dag s- - a s+) + Omega(t)(a + a^dag)
OperatorMatrix hamiltonian(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                           const DetuningSchedule& schedule, double t);

/// H(t) - (i/2)(kappa a^dag a + gamma s+s-).
OperatorMatrix effective_hamiltonian(const FockSpace& space, const SystemParams& params,
                                     const DriveProtocol& protocol, const DetuningSchedule& schedule, double t);

/// Matrix-free application of -i H_eff(t). The operator is banded in the
/// photon-major basis, so this costs O(dim) per column instead of O(dim^2).
class EffectiveGenerator {
public:
    EffectiveGenerator(const FockSpace& space, const SystemParams& params, DriveProtocol protocol,
                       DetuningSchedule schedule);

    const FockSpace& space() const noexcept { return space_; }
    const SystemParams& params() const noexcept { return params_; }
    const DriveProtocol& protocol() const noexcept { return protocol_; }
    const DetuningSchedule& schedule() const noexcept { return schedule_; }

    /// out = -i H_eff(t) x
    void apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;
    /// out = H_eff(t) X, column by column.
    void apply_heff(double t, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) const;

    /// Largest angular frequency scale present (g, kappa, Omega_0, |Delta| values).
    double frequency_scale() const;

private:
    FockSpace space_;
    SystemParams params_;
    DriveProtocol protocol_;
    DetuningSchedule schedule_;
    std::vector<Complex> static_diag_;  // Delta_c n - (i/2)(kappa n + gamma q)
    std::vector<double> sqrt_n_;
};

}  // namespace blockade

#endif  // BLOCKADE_DYNAMICS_HPP
