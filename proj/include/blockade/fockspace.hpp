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

#ifndef BLOCKADE_FOCKSPACE_HPP
#define BLOCKADE_FOCKSPACE_HPP

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "blockade/errors.hpp"

namespace blockade {

using Complex = std::complex<double>;

enum class Emitter : int { Ground = 0, Excited = 1 };

/// Truncated Hilbert space of one two-level emitter and one cavity mode.
///
/// Basis ordering is photon-major, emitter-minor: the state |q, n> with
/// photon number n in [0, n_max] and emitter state q lives at index 2n + q,
/// where |g> = 0 and |e> = 1. The cavity ladder operators are therefore
/// banded with offset 2 and the emitter operators with offset 1.
class FockSpace {
public:
    explicit FockSpace(int n_max);

    int n_max() const noexcept { return n_max_; }
    Eigen::Index dim() const noexcept { return 2 * (static_cast<Eigen::Index>(n_max_) + 1); }

    Eigen::Index index(int photons, Emitter q) const;
    int photons(Eigen::Index i) const noexcept { return static_cast<int>(i / 2); }
    Emitter emitter(Eigen::Index i) const noexcept {
        return (i % 2) == 0 ? Emitter::Ground : Emitter::Excited;
    }

    bool operator==(const FockSpace&) const = default;

private:
    int n_max_;
};

FockSpace build_space(int n_max);

/// Dense operator on a FockSpace. Hamiltonian terms carry units of rad/ns.
class OperatorMatrix {
public:
    OperatorMatrix(FockSpace space, Eigen::MatrixXcd entries);
    static OperatorMatrix zero(const FockSpace& space);

    const FockSpace& space() const noexcept { return space_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
    Eigen::MatrixXcd& matrix() noexcept { return entries_; }

    OperatorMatrix adjoint() const { return {space_, entries_.adjoint()}; }

private:
    FockSpace space_;
    Eigen::MatrixXcd entries_;
};

/// Pure (possibly sub-normalized) state vector on a FockSpace.
class QuantumState {
public:
    QuantumState(FockSpace space, Eigen::VectorXcd amplitudes);
    static QuantumState basis(const FockSpace& space, int photons, Emitter q);

    const FockSpace& space() const noexcept { return space_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    Eigen::VectorXcd& amplitudes() noexcept { return amplitudes_; }

    double norm_sq() const { return amplitudes_.squaredNorm(); }
    Complex amplitude(int photons, Emitter q) const { return amplitudes_(space_.index(photons, q)); }
    double population(int photons, Emitter q) const { return std::norm(amplitude(photons, q)); }

private:
    FockSpace space_;
    Eigen::VectorXcd amplitudes_;
};

struct LadderOps {
    OperatorMatrix a;
    OperatorMatrix a_dag;
    OperatorMatrix sigma_minus;
    OperatorMatrix sigma_plus;
};

/// Cavity and emitter ladder operators. a_dag sends n_max to the zero vector.
LadderOps ladder_ops(const FockSpace& space);

struct DressedEnergies {
    double plus;
    double minus;
};

/// n*omega_c +/- g*sqrt(n) for the n-excitation manifold at zero emitter-cavity detuning.
DressedEnergies dressed_energies(double g, double omega_c, int n);

/// Phase convention for the dressed kets.
///
/// `Real` gives (|g,n> +/- |e,n-1>)/sqrt(2). The coupling term
/// i g (a^dag sigma_- - a sigma_+) used by the Hamiltonian is not real in this
/// basis; its eigenvectors are `CouplingPhase`:
///   |n,+> = (|g,n> - i|e,n-1>)/sqrt(2)   with energy +g sqrt(n)
///   |n,-> = (|g,n> + i|e,n-1>)/sqrt(2)   with energy -g sqrt(n)
/// Populations and energies do not depend on the choice.
enum class DressedPhase { Real, CouplingPhase };

std::pair<QuantumState, QuantumState> dressed_states(const FockSpace& space, int n,
                                                     DressedPhase phase = DressedPhase::Real);

}  // namespace blockade

#endif  // BLOCKADE_FOCKSPACE_HPP
