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

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdm/qcore.hpp"

namespace qdm {

// The two realizations of the guessing machine.
enum class MachineKind { Classical, Quantum };

inline const char* machine_name(MachineKind kind) {
    return kind == MachineKind::Classical ? "cdm" : "qdm";
}

//=========================================================================
// Game data
//=========================================================================

inline int require_bit(int b, const char* what) {
    if (b != 0 && b != 1)
        throw std::domain_error(std::string(what) + " must be 0 or 1, got " +
                                std::to_string(b));
    return b;
}

// The hider's two secret bits, one per card.
struct SecretBits {
    int x0;
    int x1;

    SecretBits(int x0_, int x1_)
        : x0(require_bit(x0_, "x0")), x1(require_bit(x1_, "x1")) {}
};

inline bool operator==(const SecretBits& a, const SecretBits& b) {
    return a.x0 == b.x0 && a.x1 == b.x1;
}

// The guesser's two answers.
struct Guess {
    int y0;
    int y1;

    Guess(int y0_, int y1_)
        : y0(require_bit(y0_, "y0")), y1(require_bit(y1_, "y1")) {}
};

inline bool operator==(const Guess& a, const Guess& b) {
    return a.y0 == b.y0 && a.y1 == b.y1;
}

// Biases added to the even operation preferences; each component in
// [-1/2, 1/2]. Validated on construction, so every value is in range.
struct HintVector {
    double h0;
    double h1;

    HintVector(double h0_, double h1_) : h0(h0_), h1(h1_) {
        require_hint_component(h0, "h0");
        require_hint_component(h1, "h1");
    }
};

// Operation preferences induced by a hint: P(identity) = 1/2 + h per channel
// operation.
inline std::pair<double, double> preferences_from_hint(const HintVector& h) {
    return {0.5 + h.h0, 0.5 + h.h1};
}

// Score scale; a correct guess earns +xi/2, a wrong one -xi/2.
struct ScoreTable {
    double xi = 1.0;

    ScoreTable() = default;
    explicit ScoreTable(double xi_) : xi(xi_) {
        if (!(xi > 0.0))
            throw std::domain_error("score scale xi must be positive, got " +
                                    std::to_string(xi));
    }
};

inline double score(const SecretBits& secrets, const Guess& guess,
                    const ScoreTable& table = {}) {
    const double half = 0.5 * table.xi;
    return (guess.y0 == secrets.x0 ? half : -half) +
           (guess.y1 == secrets.x1 ? half : -half);
}

//=========================================================================
// Deterministic operation pairs
//=========================================================================

enum class OpKind { Identity, Flip };

// One of the four deterministic (u0, u1) configurations. Both operations
// act as XOR masks on the ancilla bit, so each pair induces a fixed guess
// function regardless of the fiducial value.
struct OpPairCase {
    int index;  // 1..4
    OpKind u0;
    OpKind u1;
};

inline bool operator==(const OpPairCase& a, const OpPairCase& b) {
    return a.index == b.index;
}

inline const std::array<OpPairCase, 4>& all_cases() {
    static const std::array<OpPairCase, 4> cases = {{
        {1, OpKind::Identity, OpKind::Identity},
        {2, OpKind::Identity, OpKind::Flip},
        {3, OpKind::Flip, OpKind::Identity},
        {4, OpKind::Flip, OpKind::Flip},
    }};
    return cases;
}

inline const OpPairCase& case_by_index(int index) {
    if (index < 1 || index > 4)
        throw std::domain_error("case index must be in 1..4, got " + std::to_string(index));
    return all_cases()[static_cast<std::size_t>(index - 1)];
}

inline int flip_mask(OpKind k) { return k == OpKind::Flip ? 1 : 0; }

// Ancilla outcome m_kappa for the pair run deterministically on input kappa:
// u1 acts only on the kappa = 1 branch, after u0.
inline int case_outcome(const OpPairCase& c, int kappa, int alpha) {
    require_bit(kappa, "kappa");
    require_bit(alpha, "alpha");
    int m = alpha ^ flip_mask(c.u0);
    if (kappa == 1) m ^= flip_mask(c.u1);
    return m;
}

// The guess function induced by the pair. y_kappa = m_kappa xor alpha, so
// the fiducial value cancels and the guesses depend on the pair alone.
inline Guess case_guess(const OpPairCase& c) {
    const int a0 = flip_mask(c.u0);
    const int a1 = flip_mask(c.u1);
    return Guess(a0, a0 ^ a1);
}

// The unique pair whose induced guesses match the secrets on both cards.
inline const OpPairCase& correct_case(const SecretBits& secrets) {
    for (const OpPairCase& c : all_cases())
        if (case_guess(c) == Guess(secrets.x0, secrets.x1)) return c;
    throw std::logic_error("no deterministic pair guesses these secrets");  // unreachable
}

// Inverse of correct_case: the secrets this pair guesses correctly.
inline SecretBits case_secrets(const OpPairCase& c) {
    const Guess g = case_guess(c);
    return SecretBits(g.y0, g.y1);
}

//=========================================================================
// Hint quality
//=========================================================================

enum class HintQuality { Good, Poor, Mixed, Neutral };

inline const char* quality_name(HintQuality q) {
    switch (q) {
        case HintQuality::Good: return "good";
        case HintQuality::Poor: return "poor";
        case HintQuality::Mixed: return "mixed";
        default: return "neutral";
    }
}

// Component signs of the hint quadrant containing the correct pair: +1 where
// the correct operation is the identity, -1 where it is the flip.
inline std::pair<int, int> best_hint_signs(const SecretBits& secrets) {
    const OpPairCase& c = correct_case(secrets);
    return {c.u0 == OpKind::Identity ? 1 : -1, c.u1 == OpKind::Identity ? 1 : -1};
}

// Quadrant of the worst deterministic pair. Flipping both operations leaves
// the second guess unchanged (it depends on their XOR), so the pair that
// gets both cards wrong flips u0 only.
inline std::pair<int, int> worst_hint_signs(const SecretBits& secrets) {
    const auto best = best_hint_signs(secrets);
    return {-best.first, best.second};
}

// Good: the hint points into the correct pair's quadrant (both the direct
// preference and the product effect on the second guess help). Poor: the
// worst pair's quadrant (both hurt). Mixed covers the remaining quadrants
// and the axes, where one effect helps and the other hurts or vanishes;
// Neutral is the exact origin.
inline HintQuality classify_hint(const HintVector& h, const SecretBits& secrets) {
    if (h.h0 == 0.0 && h.h1 == 0.0) return HintQuality::Neutral;
    const auto [s0, s1] = best_hint_signs(secrets);
    const double along0 = s0 * h.h0;
    const double along1 = s1 * h.h1;
    if (along0 > 0.0 && along1 > 0.0) return HintQuality::Good;
    if (along0 < 0.0 && along1 > 0.0) return HintQuality::Poor;
    return HintQuality::Mixed;
}

}  // namespace qdm
