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

#ifndef BLOCKADE_LINDBLAD_HPP
#define BLOCKADE_LINDBLAD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blockade/dynamics.hpp"
#include "blockade/trajectory.hpp"

namespace blockade {

/// Oracle observables on an output grid.
struct ExpectationSeries {
    std::vector<double> times;
    std::vector<double> photon_number;       ///< <a^dag a>(t)
    std::vector<double> emitter_excitation;  ///< <s+ s->(t)
    std::vector<double> emitted_mean;        ///< kappa * int_0^t <a^dag a> dt'
    std::vector<double> purity;              ///< tr(rho^2)
    double emitted_total = 0.0;              ///< emitted mean at t_final
    std::uint64_t fingerprint = 0;

    // Worst values seen over the output grid.
    double max_trace_drift = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct LindbladOptions {
    double atol = 1e-10;
    /// Defaults to |g,0><g,0|.
    std::optional<Eigen::MatrixXcd> initial_rho;
};

/// Integrate
///   d rho/dt = -i[H(t), rho] + kappa D[a] rho + gamma D[s-] rho,
///   D[L] rho = L rho L^dag - (1/2){L^dag L, rho},
/// recording observables at each grid time. Throws NumericalError when the
/// trace drifts by more than 1e-6 or an eigenvalue falls below -1e-6.
ExpectationSeries evolve_master_equation(const FockSpace& space, const SystemParams& params,
                                         const DriveProtocol& protocol, const DetuningSchedule& schedule,
                                         const SimulationWindow& window, std::span<const double> grid,
                                         const LindbladOptions& options = {});

struct OracleReport {
    std::vector<double> times;
    std::vector<double> z_photon;
    std::vector<double> z_excitation;
    double z_clicks = 0.0;
    double ensemble_mean_clicks = 0.0;
    double oracle_mean_clicks = 0.0;
    double tolerance_sigmas = 3.0;
    bool passed = false;

    double max_abs_z() const;
};

/// z-scores of trajectory-ensemble averages against the master-equation
/// series. Records must carry samples on the series grid. The standard error
/// at each point has a floor of 1/N (one trajectory's worth of a unit
/// quantity) so that grid points where no trajectory has jumped yet, and the
/// sample variance is therefore zero, are not scored as infinite.
///
/// Throws ValidationError when the two fingerprints differ.
OracleReport compare_with_trajectories(const ExpectationSeries& series, std::span<const TrajectoryRecord> records,
                                       std::uint64_t records_fingerprint, double tolerance_sigmas = 3.0);

}  // namespace blockade

#endif  // BLOCKADE_LINDBLAD_HPP
