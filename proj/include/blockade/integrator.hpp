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

#ifndef BLOCKADE_INTEGRATOR_HPP
#define BLOCKADE_INTEGRATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "blockade/errors.hpp"

namespace blockade {

struct StepperOptions {
    double atol = 1e-10;  ///< absolute tolerance per component
    double rtol = 0.0;
    double h_min = 1e-9;  ///< underflow threshold (ns)
    double h_max = 1.0;
};

/// Embedded Dormand-Prince 5(4) stepper with first-same-as-last reuse.
///
/// `State` is any Eigen dense type; `Rhs` is callable as
/// `rhs(t, const State& y, State& dydt)`. The stepper separates attempting a
/// step from accepting it so callers can re-integrate shorter sub-steps from
/// the same starting point (the first stage is computed once per start point).
template <class State, class Rhs>
class DormandPrince45 {
public:
    DormandPrince45(Rhs rhs, StepperOptions options) : rhs_(std::forward<Rhs>(rhs)), opt_(options) {}

    const StepperOptions& options() const noexcept { return opt_; }

    /// Set the start point of the next attempt.
    void begin(double t, const State& y) {
        t_ = t;
        rhs_(t, y, k1_);
        primed_ = true;
    }

    /// Attempt a step of size h from the current start point. Writes the
    /// fifth-order solution to `y_out` and returns the scaled error norm
    /// (accept when <= 1).
    double attempt(const State& y, double h, State& y_out) {
        const double t = t_;
        tmp_ = y + h * (a21 * k1_);
        rhs_(t + c2 * h, tmp_, k2_);
        tmp_ = y + h * (a31 * k1_ + a32 * k2_);
        rhs_(t + c3 * h, tmp_, k3_);
        tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        rhs_(t + c4 * h, tmp_, k4_);
        tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        rhs_(t + c5 * h, tmp_, k5_);
        tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        rhs_(t + h, tmp_, k6_);
        y_out = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
        rhs_(t + h, y_out, k7_);
        err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

        double worst = 0.0;
        const auto n = err_.size();
        for (decltype(err_.size()) i = 0; i < n; ++i) {
            const double scale =
                opt_.atol + opt_.rtol * std::max(std::abs(y.data()[i]), std::abs(y_out.data()[i]));
            worst = std::max(worst, std::abs(err_.data()[i]) / scale);
        }
        return worst;
    }

    /// Accept the last attempt, whose end point becomes the next start point.
    void accept(double h) {
        t_ += h;
        std::swap(k1_, k7_);
    }

    /// Forget the cached first stage (call after modifying the state externally).
    void invalidate() noexcept { primed_ = false; }

    /// Proposed next step size from an error norm.
    double propose(double h, double err) const {
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        return std::min(h * factor, opt_.h_max);
    }

    /// One accepted adaptive step from (t, y) no further than t_end. `h` is the
    /// trial size on entry and the proposal for the next step on exit. Returns
    /// the size of the step taken; `y` is advanced in place.
    double step(double t, State& y, double t_end, double& h) {
        if (!primed_ || t != t_) begin(t, y);
        for (;;) {
            double trial = std::min({h, opt_.h_max, t_end - t});
            const double err = attempt(y, trial, y_next_);
            if (err <= 1.0) {
                accept(trial);
                h = propose(trial, err);
                std::swap(y, y_next_);
                // Callers snap t onto t_end; keep the cached stage valid for that time.
                if (t_end - t_ <= 1e-15 * std::max(1.0, std::abs(t_end))) t_ = t_end;
                return trial;
            }
            h = std::max(0.2, 0.9 * std::pow(err, -0.2)) * trial;
            if (h < opt_.h_min) {
                throw NumericalError("step size underflow at t=" + std::to_string(t) + " ns");
            }
        }
    }

    /// Integrate (t, y) forward to t_end.
    void integrate(double& t, State& y, double t_end, double& h) {
        while (t < t_end) {
            const double taken = step(t, y, t_end, h);
            t = (t_end - (t + taken) <= 1e-15 * std::max(1.0, std::abs(t_end))) ? t_end : t + taken;
        }
    }

private:
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // b - b_hat
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Rhs rhs_;
    StepperOptions opt_;
    double t_ = 0.0;
    bool primed_ = false;
    State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, err_, y_next_;
};

}  // namespace blockade

#endif  // BLOCKADE_INTEGRATOR_HPP
