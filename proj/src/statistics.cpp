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

#include "blockade/statistics.hpp"

#include <algorithm>
#include <cmath>

namespace blockade {

std::size_t ClickHistogram::count(int clicks) const {
    const auto it = counts.find(clicks);
    return it == counts.end() ? 0 : it->second;
}

ClickHistogram histogram(std::span<const TrajectoryRecord> records) {
    if (records.empty()) throw ValidationError("cannot histogram an empty record list");
    ClickHistogram h;
    for (const auto& r : records) ++h.counts[r.clicks];
    h.n_traj = records.size();
    return h;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw ValidationError("wilson interval needs at least one trial");
    if (successes > trials) throw ValidationError("wilson interval needs successes <= trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

FockCoefficients fock_coefficients(const ClickHistogram& h) {
    if (h.n_traj < 1) throw ValidationError("histogram has no trajectories");
    const std::size_t zero = h.count(0);
    const std::size_t one = h.count(1);
    const std::size_t multi = h.n_traj - zero - one;
    const double n = static_cast<double>(h.n_traj);

    FockCoefficients c;
    c.n_traj = h.n_traj;
    c.c0_sq = static_cast<double>(zero) / n;
    c.c1_sq = static_cast<double>(one) / n;
    // Closing the simplex by subtraction keeps the sum at 1 up to one rounding.
    c.cmulti_sq = std::max(0.0, 1.0 - c.c0_sq - c.c1_sq);
    c.c0_ci = wilson_interval(zero, h.n_traj);
    c.c1_ci = wilson_interval(one, h.n_traj);
    c.cmulti_ci = wilson_interval(multi, h.n_traj);
    return c;
}

double mean_clicks(const ClickHistogram& h) {
    double total = 0.0;
    for (const auto& [clicks, count] : h.counts) total += static_cast<double>(clicks) * static_cast<double>(count);
    return total / static_cast<double>(h.n_traj);
}

}  // namespace blockade
