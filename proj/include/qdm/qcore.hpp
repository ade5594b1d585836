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
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdm {

using complexd = std::complex<double>;

// Tolerance for exact-math checks. Everything here is a handful of 2x2
// products in double precision, so 1e-12 is loose against accumulation and
// far tighter than any statistical claim.
inline constexpr double kMatTol = 1e-12;

inline void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(std::string(what) + " must be in [0, 1], got " +
                                std::to_string(p));
}

inline void require_rate(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("dephasing rate must be in [0, 1], got " +
                                std::to_string(gamma));
}

//=========================================================================
// 2x2 complex matrices
//=========================================================================

struct ComplexMat2 {
    complexd a00, a01, a10, a11;

    ComplexMat2 adjoint() const {
        return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
    }

    complexd trace() const { return a00 + a11; }

    bool finite() const {
        auto ok = [](complexd z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        };
        return ok(a00) && ok(a01) && ok(a10) && ok(a11);
    }
};

inline ComplexMat2 operator*(const ComplexMat2& l, const ComplexMat2& r) {
    return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11,
            l.a10 * r.a00 + l.a11 * r.a10, l.a10 * r.a01 + l.a11 * r.a11};
}

inline ComplexMat2 operator-(const ComplexMat2& l, const ComplexMat2& r) {
    return {l.a00 - r.a00, l.a01 - r.a01, l.a10 - r.a10, l.a11 - r.a11};
}

// Largest entrywise absolute value; the matrix norm used by all tolerance
// checks in this module.
inline double max_abs_entry(const ComplexMat2& m) {
    return std::max(std::max(std::abs(m.a00), std::abs(m.a01)),
                    std::max(std::abs(m.a10), std::abs(m.a11)));
}

inline ComplexMat2 identity_mat2() { return {1.0, 0.0, 0.0, 1.0}; }

inline bool is_unitary(const ComplexMat2& m, double tol = kMatTol) {
    return max_abs_entry(m.adjoint() * m - identity_mat2()) <= tol;
}

//=========================================================================
// Gates
//=========================================================================

// Unitary realization of a probabilistic operation: identity with
// probability p_identity, logical-not otherwise, carrying a steering phase
// on the off-diagonal amplitudes.
struct UnitaryGate {
    double p_identity;
    double phase;  // radians, normalized to [0, 2*pi)

    ComplexMat2 matrix() const {
        const double amp_keep = std::sqrt(p_identity);
        const double amp_flip = std::sqrt(1.0 - p_identity);
        const complexd up = std::polar(amp_flip, phase);
        const complexd down = std::polar(amp_flip, -phase);
        return {complexd(amp_keep), up, down, complexd(-amp_keep)};
    }
};

inline UnitaryGate build_unitary(double p_identity, double phase) {
    require_probability(p_identity, "p_identity");
    if (!std::isfinite(phase)) throw std::domain_error("phase must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double reduced = std::fmod(phase, two_pi);
    if (reduced < 0.0) reduced += two_pi;
    return UnitaryGate{p_identity, reduced};
}

// Stochastic (classical) realization of the same operation. Symmetric and
// doubly stochastic by construction.
struct StochasticGate {
    double p_identity;

    // Row-major [[p, 1-p], [1-p, p]]; columns sum to one.
    std::array<double, 4> matrix() const {
        return {p_identity, 1.0 - p_identity, 1.0 - p_identity, p_identity};
    }
};

inline StochasticGate build_stochastic(double p_identity) {
    require_probability(p_identity, "p_identity");
    return StochasticGate{p_identity};
}

// Applies the stochastic gate to a probability vector (p(0), p(1)).
inline std::pair<double, double> apply_stochastic(const StochasticGate& g,
                                                  std::pair<double, double> v) {
    const auto m = g.matrix();
    return {m[0] * v.first + m[1] * v.second, m[2] * v.first + m[3] * v.second};
}

//=========================================================================
// Phase rule
//=========================================================================

// Phase difference between the two unitaries, chosen by the sign of h0*h1:
// 0 for aligned hints, pi for opposing hints, pi/2 on the axes. The first
// phase is fixed to 0 and the second to the difference; global phases do not
// affect any measurement probability.
struct PhaseDifference {
    double radians;  // one of {0, pi/2, pi}
};

inline void require_hint_component(double h, const char* what) {
    if (!(h >= -0.5 && h <= 0.5))
        throw std::domain_error(std::string(what) + " must be in [-1/2, 1/2], got " +
                                std::to_string(h));
}

// The h0*h1 == 0 branch is an exact floating-point test, not a tolerance:
// sweep grids place points exactly on the axes, and a tolerance would widen
// the discontinuity region.
inline PhaseDifference phase_rule(double h0, double h1) {
    require_hint_component(h0, "h0");
    require_hint_component(h1, "h1");
    const double product = h0 * h1;
    if (product > 0.0) return {0.0};
    if (product < 0.0) return {std::numbers::pi};
    return {std::numbers::pi / 2.0};
}

//=========================================================================
// Density matrices
//=========================================================================

// 2x2 state of the ancilla qubit. Construction validates Hermiticity, unit
// trace and positivity, so every value of this type is a physical state.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMat2& m) : m_(m) { validate(); }

    static DensityMatrix pure_basis(int bit) {
        if (bit != 0 && bit != 1) throw std::domain_error("basis bit must be 0 or 1");
        return bit == 0 ? DensityMatrix({1.0, 0.0, 0.0, 0.0})
                        : DensityMatrix({0.0, 0.0, 0.0, 1.0});
    }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix({0.5, 0.0, 0.0, 0.5});
    }

    const ComplexMat2& entries() const { return m_; }

    double purity() const { return (m_ * m_).trace().real(); }

    // Eigenvalues of the (validated Hermitian) matrix, ascending.
    std::pair<double, double> eigenvalues() const {
        const double mean = 0.5 * (m_.a00.real() + m_.a11.real());
        const double half_gap = 0.5 * (m_.a00.real() - m_.a11.real());
        const double radius = std::sqrt(half_gap * half_gap + std::norm(m_.a01));
        return {mean - radius, mean + radius};
    }

private:
    void validate() const {
        if (!m_.finite()) throw std::domain_error("density matrix has non-finite entries");
        if (max_abs_entry(m_ - m_.adjoint()) > kMatTol)
            throw std::domain_error("density matrix is not Hermitian");
        if (std::abs(m_.trace() - complexd(1.0)) > kMatTol)
            throw std::domain_error("density matrix trace is not 1");
        if (eigenvalues().first < -kMatTol)
            throw std::domain_error("density matrix is not positive semidefinite");
    }

    ComplexMat2 m_;
};

// U rho U^dagger.
inline DensityMatrix apply_unitary(const UnitaryGate& gate, const DensityMatrix& state) {
    const ComplexMat2 u = gate.matrix();
    return DensityMatrix(u * state.entries() * u.adjoint());
}

// Dephasing channel: diagonal unchanged, off-diagonals scaled by (1 - gamma).
// Equivalent to the phase-flip mixture (1 - gamma/2) rho + (gamma/2) Z rho Z.
inline DensityMatrix dephase(const DensityMatrix& state, double gamma) {
    require_rate(gamma);
    const ComplexMat2& m = state.entries();
    const double keep = 1.0 - gamma;
    return DensityMatrix({m.a00, keep * m.a01, keep * m.a10, m.a11});
}

// Computational-basis outcome probabilities (P(0), P(1)).
inline std::pair<double, double> measure_probs(const DensityMatrix& state) {
    return {state.entries().a00.real(), state.entries().a11.real()};
}

//=========================================================================
// Ancilla pipeline
//=========================================================================

// Outcome probabilities of the two-branch ancilla pipeline: branch 0
// measures directly after u0, branch 1 after u0 -> dephase(gamma) -> u1.
// Each branch is an independent preparation of |alpha>.
struct BranchProbs {
    double m0_zero;
    double m1_zero;
};

inline BranchProbs branch_outcome_probs(const UnitaryGate& u0, const UnitaryGate& u1,
                                        double gamma, int alpha) {
    const DensityMatrix initial = DensityMatrix::pure_basis(alpha);
    const DensityMatrix after_u0 = apply_unitary(u0, initial);
    const DensityMatrix after_u1 = apply_unitary(u1, dephase(after_u0, gamma));
    return {measure_probs(after_u0).first, measure_probs(after_u1).first};
}

}  // namespace qdm
