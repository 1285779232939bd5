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

#include "blockade/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "blockade/integrator.hpp"

namespace blockade {

namespace {

constexpr double kTraceFailure = 1e-6;
constexpr double kEigenFailure = -1e-6;
constexpr Complex kI{0.0, 1.0};

class MasterEquation {
public:
    explicit MasterEquation(const EffectiveGenerator& generator)
        : generator_(generator), space_(generator.space()), kappa_(generator.params().kappa),
          gamma_(generator.params().gamma) {
        const auto n = space_.n_max() + 1;
        sqrt_n1_.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) sqrt_n1_[static_cast<std::size_t>(k)] = std::sqrt(static_cast<double>(k + 1));
    }

    // d rho = -i H_eff rho + i rho H_eff^dag + kappa a rho a^dag + gamma s- rho s+
    void operator()(double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) {
        generator_.apply_heff(t, rho, heff_rho_);
        drho.noalias() = -kI * heff_rho_;
        drho.noalias() += kI * heff_rho_.adjoint();

        const auto dim = space_.dim();
        for (Eigen::Index j = 0; j + 2 < dim; ++j) {
            const double sj = sqrt_n1_[static_cast<std::size_t>(space_.photons(j))];
            for (Eigen::Index i = 0; i + 2 < dim; ++i) {
                const double si = sqrt_n1_[static_cast<std::size_t>(space_.photons(i))];
                drho(i, j) += kappa_ * si * sj * rho(i + 2, j + 2);
            }
        }
        for (Eigen::Index j = 0; j < dim; j += 2) {
            for (Eigen::Index i = 0; i < dim; i += 2) drho(i, j) += gamma_ * rho(i + 1, j + 1);
        }
    }

private:
    const EffectiveGenerator& generator_;
    FockSpace space_;
    double kappa_;
    double gamma_;
    std::vector<double> sqrt_n1_;
    Eigen::MatrixXcd heff_rho_;
};

double photon_expectation(const FockSpace& space, const Eigen::MatrixXcd& rho) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i) sum += space.photons(i) * rho(i, i).real();
    return sum;
}

double excitation_expectation(const Eigen::MatrixXcd& rho) {
    double sum = 0.0;
    for (Eigen::Index i = 1; i < rho.rows(); i += 2) sum += rho(i, i).real();
    return sum;
}

}  // namespace

ExpectationSeries evolve_master_equation(const FockSpace& space, const SystemParams& params,
                                         const DriveProtocol& protocol, const DetuningSchedule& schedule,
                                         const SimulationWindow& window, std::span<const double> grid,
                                         const LindbladOptions& options) {
    window.validate();
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        (!grid.empty() && (grid.front() < 0.0 || grid.back() > window.t_final))) {
        throw ValidationError("grid must be sorted and inside [0, t_final]");
    }
    const EffectiveGenerator generator(space, params, protocol, schedule);
    MasterEquation rhs(generator);

    StepperOptions stepper_options;
    stepper_options.atol = options.atol;
    stepper_options.h_min = 1e-9;
    stepper_options.h_max = window.dt_max;
    DormandPrince45<Eigen::MatrixXcd, MasterEquation&> stepper(rhs, stepper_options);

    Eigen::MatrixXcd rho;
    if (options.initial_rho) {
        if (options.initial_rho->rows() != space.dim() || options.initial_rho->cols() != space.dim()) {
            throw ValidationError("initial density matrix has wrong shape");
        }
        rho = *options.initial_rho;
    } else {
        rho = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
        rho(0, 0) = 1.0;
    }

    ExpectationSeries series;
    series.fingerprint = physics_fingerprint(space, params, protocol, schedule, window);
    series.min_eigenvalue = std::numeric_limits<double>::infinity();

    double t = 0.0;
    double emitted = 0.0;
    double h = window.dt_max;
    double n_prev = photon_expectation(space, rho);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen;
    auto record = [&](double at) {
        const double trace = rho.trace().real();
        const double drift = std::abs(trace - 1.0);
        const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        eigen.compute(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        const double lowest = eigen.eigenvalues().minCoeff();
        series.max_trace_drift = std::max(series.max_trace_drift, drift);
        series.max_hermiticity_error = std::max(series.max_hermiticity_error, herm);
        series.min_eigenvalue = std::min(series.min_eigenvalue, lowest);
        if (drift > kTraceFailure) {
            throw NumericalError("density-matrix trace drifted by " + std::to_string(drift) + " at t=" +
                                 std::to_string(at) + " ns");
        }
        if (lowest < kEigenFailure) {
            throw NumericalError("density matrix lost positivity (eigenvalue " + std::to_string(lowest) +
                                 ") at t=" + std::to_string(at) + " ns");
        }
        series.times.push_back(at);
        series.photon_number.push_back(photon_expectation(space, rho));
        series.emitter_excitation.push_back(excitation_expectation(rho));
        series.emitted_mean.push_back(emitted);
        series.purity.push_back((rho * rho).trace().real());
    };

    for (const double target : grid) {
        while (t < target) {
            const double taken = stepper.step(t, rho, target, h);
            const bool at_target = target - (t + taken) <= 1e-15 * std::max(1.0, target);
            // Trapezoid on accepted steps; steps are capped far below the
            // time scale of <a^dag a>.
            const double n_now = photon_expectation(space, rho);
            emitted += params.kappa * 0.5 * (n_prev + n_now) * taken;
            n_prev = n_now;
            t = at_target ? target : t + taken;
        }
        record(t);
    }
    while (t < window.t_final) {
        const double taken = stepper.step(t, rho, window.t_final, h);
        const double n_now = photon_expectation(space, rho);
        emitted += params.kappa * 0.5 * (n_prev + n_now) * taken;
        n_prev = n_now;
        t = window.t_final - (t + taken) <= 1e-15 * std::max(1.0, window.t_final) ? window.t_final : t + taken;
    }
    series.emitted_total = emitted;
    return series;
}

double OracleReport::max_abs_z() const {
    double worst = std::abs(z_clicks);
    for (double z : z_photon) worst = std::max(worst, std::abs(z));
    for (double z : z_excitation) worst = std::max(worst, std::abs(z));
    return worst;
}

OracleReport compare_with_trajectories(const ExpectationSeries& series, std::span<const TrajectoryRecord> records,
                                       std::uint64_t records_fingerprint, double tolerance_sigmas) {
    if (series.fingerprint != records_fingerprint) {
        throw ValidationError("parameter fingerprint mismatch between master-equation series and trajectories");
    }
    if (records.empty()) throw ValidationError("no trajectory records to compare");
    const std::size_t points = series.times.size();
    for (const auto& r : records) {
        if (r.samples.photon_number.size() != points || r.samples.emitter_excitation.size() != points) {
            throw ValidationError("trajectory samples do not match the oracle grid");
        }
    }

    const double n = static_cast<double>(records.size());
    const double floor_se = 1.0 / n;
    auto zscore = [&](double mean, double var, double oracle) {
        const double se = std::sqrt(var / n + floor_se * floor_se);
        return (mean - oracle) / se;
    };
    auto mean_var = [&](auto&& value) {
        double mean = 0.0;
        for (const auto& r : records) mean += value(r);
        mean /= n;
        double var = 0.0;
        for (const auto& r : records) var += (value(r) - mean) * (value(r) - mean);
        var = records.size() > 1 ? var / (n - 1.0) : 0.0;
        return std::pair{mean, var};
    };

    OracleReport report;
    report.tolerance_sigmas = tolerance_sigmas;
    report.times = series.times;
    for (std::size_t k = 0; k < points; ++k) {
        const auto [mp, vp] = mean_var([k](const TrajectoryRecord& r) { return r.samples.photon_number[k]; });
        const auto [me, ve] = mean_var([k](const TrajectoryRecord& r) { return r.samples.emitter_excitation[k]; });
        report.z_photon.push_back(zscore(mp, vp, series.photon_number[k]));
        report.z_excitation.push_back(zscore(me, ve, series.emitter_excitation[k]));
    }
    const auto [mc, vc] = mean_var([](const TrajectoryRecord& r) { return static_cast<double>(r.clicks); });
    report.ensemble_mean_clicks = mc;
    report.oracle_mean_clicks = series.emitted_total;
    report.z_clicks = zscore(mc, vc, report.oracle_mean_clicks);
    report.passed = report.max_abs_z() <= tolerance_sigmas;
    return report;
}

}  // namespace blockade
