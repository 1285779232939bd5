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

#include "blockade/fockspace.hpp"

#include <cmath>
#include <string>

namespace blockade {

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
    if (n_max < 1) {
        throw ValidationError("n_max must be >= 1, got " + std::to_string(n_max));
    }
}

Eigen::Index FockSpace::index(int photons, Emitter q) const {
    if (photons < 0 || photons > n_max_) {
        throw ValidationError("photon number " + std::to_string(photons) + " outside [0, " +
                              std::to_string(n_max_) + "]");
    }
    return 2 * static_cast<Eigen::Index>(photons) + static_cast<int>(q);
}

FockSpace build_space(int n_max) { return FockSpace(n_max); }

OperatorMatrix::OperatorMatrix(FockSpace space, Eigen::MatrixXcd entries)
    : space_(space), entries_(std::move(entries)) {
    if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
        throw ValidationError("operator shape does not match space dimension");
    }
}

OperatorMatrix OperatorMatrix::zero(const FockSpace& space) {
    return {space, Eigen::MatrixXcd::Zero(space.dim(), space.dim())};
}

QuantumState::QuantumState(FockSpace space, Eigen::VectorXcd amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.dim()) {
        throw ValidationError("state length does not match space dimension");
    }
}

QuantumState QuantumState::basis(const FockSpace& space, int photons, Emitter q) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    v(space.index(photons, q)) = 1.0;
    return {space, std::move(v)};
}

LadderOps ladder_ops(const FockSpace& space) {
    auto a = OperatorMatrix::zero(space);
    auto sm = OperatorMatrix::zero(space);
    for (int n = 0; n <= space.n_max(); ++n) {
        for (auto q : {Emitter::Ground, Emitter::Excited}) {
            if (n >= 1) {
                a.matrix()(space.index(n - 1, q), space.index(n, q)) = std::sqrt(static_cast<double>(n));
            }
        }
        sm.matrix()(space.index(n, Emitter::Ground), space.index(n, Emitter::Excited)) = 1.0;
    }
    auto a_dag = a.adjoint();
    auto sp = sm.adjoint();
    return {std::move(a), std::move(a_dag), std::move(sm), std::move(sp)};
}

DressedEnergies dressed_energies(double g, double omega_c, int n) {
    if (n < 1) {
        throw ValidationError("dressed manifold index must be >= 1, got " + std::to_string(n));
    }
    const double nn = static_cast<double>(n);
    const double split = g * std::sqrt(nn);
    return {nn * omega_c + split, nn * omega_c - split};
}

std::pair<QuantumState, QuantumState> dressed_states(const FockSpace& space, int n, DressedPhase phase) {
    if (n < 1 || n > space.n_max()) {
        throw ValidationError("dressed manifold index " + std::to_string(n) + " outside [1, " +
                              std::to_string(space.n_max()) + "]");
    }
    const double s = 1.0 / std::sqrt(2.0);
    const Complex emitter_phase = phase == DressedPhase::Real ? Complex{1.0, 0.0} : Complex{0.0, -1.0};

    Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(space.dim());
    Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(space.dim());
    const auto gn = space.index(n, Emitter::Ground);
    const auto en = space.index(n - 1, Emitter::Excited);
    plus(gn) = s;
    plus(en) = s * emitter_phase;
    minus(gn) = s;
    minus(en) = -s * emitter_phase;
    return {QuantumState(space, std::move(plus)), QuantumState(space, std::move(minus))};
}

}  // namespace blockade
