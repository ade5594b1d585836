// Copyright 2026 The qdm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include "qdm/game.hpp"
#include "qdm/qcore.hpp"
#include "qdm/rng.hpp"

namespace qdm {

struct MachineConfig {
    HintVector hint;
    int alpha = 0;       // ancilla fiducial value
    double gamma = 0.0;  // dephasing rate; quantum only
    double xi = 1.0;     // score scale
};

struct GameResult {
    int m0;
    int m1;
    Guess guess;
    double score;
    std::optional<OpPairCase> sampled_case;  // classical machine only
};

namespace detail {
inline void validate_config(const MachineConfig& config, MachineKind kind) {
    require_bit(config.alpha, "alpha");
    (void)ScoreTable(config.xi);  // validates xi > 0
    if (kind == MachineKind::Classical) {
        if (config.gamma != 0.0)
            throw std::domain_error("classical machine requires gamma = 0");
    } else {
        require_rate(config.gamma);
    }
}
}  // namespace detail

//=========================================================================
// Classical machine
//=========================================================================

// Per-cell precomputation for tight Monte Carlo loops. Prepared machines are
// immutable; each play takes its RngStream explicitly, so distinct games may
// run concurrently on distinct substreams.
struct PreparedClassical {
    double p_u0_identity;
    double p_u1_identity;
    int alpha;
    ScoreTable table;
};

inline PreparedClassical prepare_classical(const MachineConfig& config) {
    detail::validate_config(config, MachineKind::Classical);
    const auto [p0, p1] = preferences_from_hint(config.hint);
    return {p0, p1, config.alpha, ScoreTable(config.xi)};
}

// One game of the classical machine. The operation pair is sampled once and
// shared by both inputs: u0 acts on both branches, u1 only on the second.
// Draw order is u0 then u1.
inline GameResult sample_game(const PreparedClassical& machine, const SecretBits& secrets,
                              RngStream& rng) {
    const int flip0 = rng.bernoulli(machine.p_u0_identity) ? 0 : 1;
    const int flip1 = rng.bernoulli(machine.p_u1_identity) ? 0 : 1;
    const OpPairCase& sampled = case_by_index(1 + 2 * flip0 + flip1);
    const int m0 = machine.alpha ^ flip0;
    const int m1 = machine.alpha ^ flip0 ^ flip1;
    const Guess guess(m0 ^ machine.alpha, m1 ^ machine.alpha);
    return {m0, m1, guess, score(secrets, guess, machine.table), sampled};
}

inline GameResult play_classical(const MachineConfig& config, const SecretBits& secrets,
                                 RngStream& rng) {
    return sample_game(prepare_classical(config), secrets, rng);
}

//=========================================================================
// Quantum machine
//=========================================================================

// Exact evaluation mode: the measurement-outcome distribution of the two
// branches, from the density-matrix pipeline. Branch 0 measures after u0;
// branch 1 after u0 -> dephase(gamma) -> u1. This is the variance-free
// per-cell oracle.
inline BranchProbs quantum_outcome_probs(const MachineConfig& config) {
    detail::validate_config(config, MachineKind::Quantum);
    const auto [p0, p1] = preferences_from_hint(config.hint);
    const PhaseDifference delta = phase_rule(config.hint.h0, config.hint.h1);
    const UnitaryGate u0 = build_unitary(p0, 0.0);
    const UnitaryGate u1 = build_unitary(p1, delta.radians);
    return branch_outcome_probs(u0, u1, config.gamma, config.alpha);
}

struct PreparedQuantum {
    BranchProbs probs;
    int alpha;
    ScoreTable table;
};

inline PreparedQuantum prepare_quantum(const MachineConfig& config) {
    return {quantum_outcome_probs(config), config.alpha, ScoreTable(config.xi)};
}

// One game of the quantum machine. The two branches are independent state
// preparations, so m0 and m1 are sampled independently. Draw order is m0
// then m1.
inline GameResult sample_game(const PreparedQuantum& machine, const SecretBits& secrets,
                              RngStream& rng) {
    const int m0 = rng.bernoulli(machine.probs.m0_zero) ? 0 : 1;
    const int m1 = rng.bernoulli(machine.probs.m1_zero) ? 0 : 1;
    const Guess guess(m0 ^ machine.alpha, m1 ^ machine.alpha);
    return {m0, m1, guess, score(secrets, guess, machine.table), std::nullopt};
}

inline GameResult play_quantum(const MachineConfig& config, const SecretBits& secrets,
                               RngStream& rng) {
    return sample_game(prepare_quantum(config), secrets, rng);
}

}  // namespace qdm
