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

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdm/game.hpp"
#include "qdm/qcore.hpp"

namespace qdm {

// Interference magnitude 2*sqrt((1/4 - h0^2)(1/4 - h1^2)): the maximum score
// differential between the quantum and classical machines. Zero whenever
// either hint component saturates, 1/2 at the origin.
inline double interference_magnitude(const HintVector& h) {
    return 2.0 * std::sqrt((0.25 - h.h0 * h.h0) * (0.25 - h.h1 * h.h1));
}

//=========================================================================
// Guess probabilities
//=========================================================================

struct GuessProbs {
    double y0_zero;
    double y0_one;
    double y1_zero;
    double y1_one;
};

// Classical machine: the first guess follows the direct preference, the
// second the parity of two independent operation draws.
inline GuessProbs classical_guess_probs(const HintVector& h) {
    const double y0_zero = 0.5 + h.h0;
    const double y1_zero = 0.5 + 2.0 * h.h0 * h.h1;
    return {y0_zero, 1.0 - y0_zero, y1_zero, 1.0 - y1_zero};
}

// Quantum machine: the classical parity term plus the interference term
// (1 - gamma) * Gamma * cos(delta). The result is asserted, not clamped, to
// lie in [0, 1]: a violation indicates a formula bug and clamping would
// mask it.
inline GuessProbs quantum_guess_probs(const HintVector& h, const PhaseDifference& delta,
                                      double gamma) {
    require_rate(gamma);
    if (!std::isfinite(delta.radians))
        throw std::domain_error("phase difference must be finite");
    const double y0_zero = 0.5 + h.h0;
    const double y1_zero = 0.5 + 2.0 * h.h0 * h.h1 +
                           (1.0 - gamma) * interference_magnitude(h) * std::cos(delta.radians);
    if (y1_zero < -kMatTol || y1_zero > 1.0 + kMatTol)
        throw std::logic_error("quantum guess probability escaped [0, 1]: " +
                               std::to_string(y1_zero));
    return {y0_zero, 1.0 - y0_zero, y1_zero, 1.0 - y1_zero};
}

//=========================================================================
// Closed-form payoffs
//=========================================================================

namespace detail {
inline double secret_sign(int bit) { return bit == 0 ? 1.0 : -1.0; }

inline double payoff_from_probs(const GuessProbs& p, const SecretBits& secrets,
                                double xi) {
    const double correct0 = secrets.x0 == 0 ? p.y0_zero : p.y0_one;
    const double correct1 = secrets.x1 == 0 ? p.y1_zero : p.y1_one;
    return 0.5 * xi * ((2.0 * correct0 - 1.0) + (2.0 * correct1 - 1.0));
}
}  // namespace detail

// Average classical payoff conditioned on one deterministic pair being the
// correct one (one secrets scenario per pair):
//   case 1: +h0 + 2 h0 h1      case 2: +h0 - 2 h0 h1
//   case 3: -h0 - 2 h0 h1      case 4: -h0 + 2 h0 h1
inline double case_payoff_classical(const HintVector& h, const OpPairCase& c,
                                    double xi = 1.0) {
    const SecretBits secrets = case_secrets(c);
    return xi * (detail::secret_sign(secrets.x0) * h.h0 +
                 detail::secret_sign(secrets.x1) * 2.0 * h.h0 * h.h1);
}

// Quantum counterpart: the classical payoff shifted by the interference term,
// whose sign follows the second secret bit of the case's scenario (+ for
// cases 1 and 4, - for cases 2 and 3).
inline double case_payoff_quantum(const HintVector& h, const OpPairCase& c,
                                  const PhaseDifference& delta, double gamma,
                                  double xi = 1.0) {
    require_rate(gamma);
    const SecretBits secrets = case_secrets(c);
    const double interference =
        (1.0 - gamma) * interference_magnitude(h) * std::cos(delta.radians);
    return case_payoff_classical(h, c, xi) +
           xi * detail::secret_sign(secrets.x1) * interference;
}

// Expected score of a machine against fixed secrets, from the closed-form
// guess probabilities. The quantum machine's phase difference follows the
// phase rule.
inline double expected_score(MachineKind kind, const HintVector& h,
                             const SecretBits& secrets, double gamma,
                             double xi = 1.0) {
    if (kind == MachineKind::Classical) {
        if (gamma != 0.0)
            throw std::domain_error("classical machine has no dephasing rate");
        return detail::payoff_from_probs(classical_guess_probs(h), secrets, xi);
    }
    const PhaseDifference delta = phase_rule(h.h0, h.h1);
    return detail::payoff_from_probs(quantum_guess_probs(h, delta, gamma), secrets, xi);
}

// Average over uniformly random secrets. The four per-case payoffs cancel
// pairwise, so this is identically zero for both machines.
inline double uniform_secrets_average(MachineKind kind, const HintVector& h,
                                      double gamma, double xi = 1.0) {
    const PhaseDifference delta = phase_rule(h.h0, h.h1);
    double total = 0.0;
    for (const OpPairCase& c : all_cases()) {
        total += kind == MachineKind::Classical
                     ? case_payoff_classical(h, c, xi)
                     : case_payoff_quantum(h, c, delta, gamma, xi);
    }
    return 0.25 * total;
}

//=========================================================================
// Brute-force oracle
//=========================================================================

// Independent verification path; no closed forms. The classical expectation
// enumerates the four deterministic operation pairs with their preference
// weights and scores each induced guess. The quantum expectation runs the
// density-matrix pipeline and enumerates the four measurement outcomes.
inline double brute_force_expected_score(MachineKind kind, const HintVector& h,
                                         const SecretBits& secrets, double gamma,
                                         double xi = 1.0) {
    const ScoreTable table(xi);
    if (kind == MachineKind::Classical) {
        if (gamma != 0.0)
            throw std::domain_error("classical machine has no dephasing rate");
        const auto [p0, p1] = preferences_from_hint(h);
        double total = 0.0;
        for (const OpPairCase& c : all_cases()) {
            const double w0 = c.u0 == OpKind::Identity ? p0 : 1.0 - p0;
            const double w1 = c.u1 == OpKind::Identity ? p1 : 1.0 - p1;
            total += w0 * w1 * score(secrets, case_guess(c), table);
        }
        return total;
    }
    const auto [p0, p1] = preferences_from_hint(h);
    const PhaseDifference delta = phase_rule(h.h0, h.h1);
    const UnitaryGate u0 = build_unitary(p0, 0.0);
    const UnitaryGate u1 = build_unitary(p1, delta.radians);
    const int alpha = 0;
    const BranchProbs bp = branch_outcome_probs(u0, u1, gamma, alpha);
    double total = 0.0;
    for (int m0 = 0; m0 <= 1; ++m0) {
        const double w0 = m0 == 0 ? bp.m0_zero : 1.0 - bp.m0_zero;
        for (int m1 = 0; m1 <= 1; ++m1) {
            const double w1 = m1 == 0 ? bp.m1_zero : 1.0 - bp.m1_zero;
            total += w0 * w1 * score(secrets, Guess(m0 ^ alpha, m1 ^ alpha), table);
        }
    }
    return total;
}

//=========================================================================
// Payoff surfaces
//=========================================================================

// One point of the per-case payoff surface: both machines' conditional
// payoffs at a hint, for reproducing the per-case surface data.
struct PayoffSurfacePoint {
    double h0;
    double h1;
    int case_index;
    double payoff_classical;
    double payoff_quantum;
};

inline PayoffSurfacePoint payoff_surface_point(const HintVector& h, const OpPairCase& c,
                                               double gamma, double xi = 1.0) {
    const PhaseDifference delta = phase_rule(h.h0, h.h1);
    return {h.h0, h.h1, c.index, case_payoff_classical(h, c, xi),
            case_payoff_quantum(h, c, delta, gamma, xi)};
}

}  // namespace qdm
