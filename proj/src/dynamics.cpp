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

#include "blockade/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blockade {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr Complex kI{0.0, 1.0};

}  // namespace

void SystemParams::validate() const {
    if (!(g >= 0.0) || !(kappa >= 0.0) || !(gamma >= 0.0)) {
        throw ValidationError("g, kappa and gamma must be non-negative");
    }
    if (!std::isfinite(delta_c)) {
        throw ValidationError("delta_c must be finite");
    }
}

void validate(const DriveProtocol& protocol) {
    std::visit(overloaded{
                   [](const GaussianPulse& p) {
                       if (!(p.omega0 >= 0.0)) throw ValidationError("omega0 must be >= 0");
                       if (!(p.tau > 0.0)) throw ValidationError("tau must be > 0");
                   },
                   [](const ConstantDrive& p) {
                       if (!(p.omega0 >= 0.0)) throw ValidationError("omega0 must be >= 0");
                   },
               },
               protocol);
}

void validate(const DetuningSchedule& schedule) {
    if (const auto* s = std::get_if<SmoothedTrapezoid>(&schedule)) {
        if (!(s->t_ramp >= 0.0)) throw ValidationError("t_ramp must be >= 0");
        if (!(s->t_on + s->t_ramp <= s->t_off)) {
            throw ValidationError("schedule needs t_on + t_ramp <= t_off");
        }
    }
}

double peak_amplitude(const DriveProtocol& protocol) {
    return std::visit([](const auto& p) { return p.omega0; }, protocol);
}

double peak_detuning(const DetuningSchedule& schedule) {
    return std::visit(overloaded{
                          [](const ConstantDetuning& s) { return std::abs(s.offset); },
                          [](const SmoothedTrapezoid& s) { return std::abs(s.delta_max); },
                      },
                      schedule);
}

double envelope(const DriveProtocol& protocol, double t) {
    return std::visit(overloaded{
                          [t](const GaussianPulse& p) {
                              const double x = (t - p.t0) / p.tau;
                              return p.omega0 * std::exp(-x * x);
                          },
                          [](const ConstantDrive& p) { return p.omega0; },
                      },
                      protocol);
}

double detuning(const DetuningSchedule& schedule, double t) {
    return std::visit(overloaded{
                          [](const ConstantDetuning& s) { return s.offset; },
                          [t](const SmoothedTrapezoid& s) {
                              const double ramp_start = s.t_on - s.t_ramp;
                              if (t <= ramp_start) return s.delta_max;
                              if (t < s.t_on) {
                                  const double phase = std::numbers::pi * (t - ramp_start) / s.t_ramp;
                                  return 0.5 * s.delta_max * (1.0 + std::cos(phase));
                              }
                              if (t <= s.t_off) return 0.0;
                              if (t < s.t_off + s.t_ramp) {
                                  const double phase = std::numbers::pi * (t - s.t_off) / s.t_ramp;
                                  return 0.5 * s.delta_max * (1.0 - std::cos(phase));
                              }
                              return s.delta_max;
                          },
                      },
                      schedule);
}

double emitter_detuning(const SystemParams& params, const DetuningSchedule& schedule, double t) {
    return params.delta_c + detuning(schedule, t);
}

OperatorMatrix hamiltonian(const FockSpace& space, const SystemParams& params, const DriveProtocol& protocol,
                           const DetuningSchedule& schedule, double t) {
    const auto ops = ladder_ops(space);
    const auto& a = ops.a.matrix();
    const auto& ad = ops.a_dag.matrix();
    const auto& sm = ops.sigma_minus.matrix();
    const auto& sp = ops.sigma_plus.matrix();

    Eigen::MatrixXcd h = emitter_detuning(params, schedule, t) * (sp * sm) + params.delta_c * (ad * a) +
                         kI * params.g * (ad * sm - a * sp) + envelope(protocol, t) * (a + ad);
    return {space, std::move(h)};
}

OperatorMatrix effective_hamiltonian(const FockSpace& space, const SystemParams& params,
                                     const DriveProtocol& protocol, const DetuningSchedule& schedule, double t) {
    auto h = hamiltonian(space, params, protocol, schedule, t);
    const auto ops = ladder_ops(space);
    h.matrix() -= 0.5 * kI *
                  (params.kappa * (ops.a_dag.matrix() * ops.a.matrix()) +
                   params.gamma * (ops.sigma_plus.matrix() * ops.sigma_minus.matrix()));
    return h;
}

EffectiveGenerator::EffectiveGenerator(const FockSpace& space, const SystemParams& params, DriveProtocol protocol,
                                       DetuningSchedule schedule)
    : space_(space), params_(params), protocol_(std::move(protocol)), schedule_(std::move(schedule)) {
    params_.validate();
    validate(protocol_);
    validate(schedule_);
    const auto dim = space_.dim();
    static_diag_.resize(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double n = space_.photons(i);
        const double q = space_.emitter(i) == Emitter::Excited ? 1.0 : 0.0;
        static_diag_[static_cast<std::size_t>(i)] =
            Complex{params_.delta_c * n, -0.5 * (params_.kappa * n + params_.gamma * q)};
    }
    sqrt_n_.resize(static_cast<std::size_t>(space_.n_max()) + 2);
    for (std::size_t n = 0; n < sqrt_n_.size(); ++n) sqrt_n_[n] = std::sqrt(static_cast<double>(n));
}

double EffectiveGenerator::frequency_scale() const {
    return std::max({params_.g, params_.kappa, params_.gamma, peak_amplitude(protocol_), std::abs(params_.delta_c),
                     std::abs(params_.delta_c) + peak_detuning(schedule_)});
}

// Row 2n   (|g,n>): diag x + i g sqrt(n) x[2n-1] + Omega (sqrt(n+1) x[2n+2] + sqrt(n) x[2n-2])
// Row 2n+1 (|e,n>): diag x - i g sqrt(n+1) x[2n+2] + Omega (sqrt(n+1) x[2n+3] + sqrt(n) x[2n-1])
void EffectiveGenerator::apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const {
    const double omega = envelope(protocol_, t);
    const double delta_a = emitter_detuning(params_, schedule_, t);
    const double g = params_.g;
    const int n_max = space_.n_max();
    out.resize(x.size());
    const Complex* xp = x.data();
    Complex* op = out.data();
    for (int n = 0; n <= n_max; ++n) {
        const double sn = sqrt_n_[static_cast<std::size_t>(n)];
        const double sn1 = sqrt_n_[static_cast<std::size_t>(n) + 1];
        const int ig = 2 * n;
        const int ie = 2 * n + 1;

        Complex hg = static_diag_[static_cast<std::size_t>(ig)] * xp[ig];
        Complex he = (static_diag_[static_cast<std::size_t>(ie)] + delta_a) * xp[ie];
        if (n >= 1) {
            hg += kI * (g * sn) * xp[ig - 1] + omega * sn * xp[ig - 2];
            he += omega * sn * xp[ie - 2];
        }
        if (n < n_max) {
            he += -kI * (g * sn1) * xp[ig + 2] + omega * sn1 * xp[ie + 2];
            hg += omega * sn1 * xp[ig + 2];
        }
        op[ig] = Complex{hg.imag(), -hg.real()};
        op[ie] = Complex{he.imag(), -he.real()};
    }
}

void EffectiveGenerator::apply_heff(double t, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) const {
    const double omega = envelope(protocol_, t);
    const double delta_a = emitter_detuning(params_, schedule_, t);
    const double g = params_.g;
    const int n_max = space_.n_max();
    out.resize(x.rows(), x.cols());
    for (int n = 0; n <= n_max; ++n) {
        const double sn = sqrt_n_[static_cast<std::size_t>(n)];
        const double sn1 = sqrt_n_[static_cast<std::size_t>(n) + 1];
        const int ig = 2 * n;
        const int ie = 2 * n + 1;
        out.row(ig) = static_diag_[static_cast<std::size_t>(ig)] * x.row(ig);
        out.row(ie) = (static_diag_[static_cast<std::size_t>(ie)] + delta_a) * x.row(ie);
        if (n >= 1) {
            out.row(ig) += (kI * (g * sn)) * x.row(ig - 1) + (omega * sn) * x.row(ig - 2);
            out.row(ie) += (omega * sn) * x.row(ie - 2);
        }
        if (n < n_max) {
            out.row(ie) += (-kI * (g * sn1)) * x.row(ig + 2) + (omega * sn1) * x.row(ie + 2);
            out.row(ig) += (omega * sn1) * x.row(ig + 2);
        }
    }
}

}  // namespace blockade
