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

#ifndef BLOCKADE_STATISTICS_HPP
#define BLOCKADE_STATISTICS_HPP

#include <cstddef>
#include <map>
#include <span>

#include "blockade/trajectory.hpp"

namespace blockade {

struct ClickHistogram {
    std::map<int, std::size_t> counts;  ///< click count -> number of trajectories
    std::size_t n_traj = 0;

    std::size_t count(int clicks) const;
};

ClickHistogram histogram(std::span<const TrajectoryRecord> records);

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `trials` at critical value z.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Output-field Fock weights estimated as the fraction of trajectories that
/// registered 0, 1 and >= 2 cavity clicks, with 95% Wilson intervals.
struct FockCoefficients {
    double c0_sq = 0.0;
    double c1_sq = 0.0;
    double cmulti_sq = 0.0;
    Interval c0_ci;
    Interval c1_ci;
    Interval cmulti_ci;
    std::size_t n_traj = 0;
};

FockCoefficients fock_coefficients(const ClickHistogram& h);

/// Mean number of clicks per trajectory.
double mean_clicks(const ClickHistogram& h);

}  // namespace blockade

#endif  // BLOCKADE_STATISTICS_HPP
