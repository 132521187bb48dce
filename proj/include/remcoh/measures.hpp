// measures.hpp - coherence, entropies, quantum discord and PPT diagnostics
//
// All logarithms are base 2 and 0 log 0 = 0.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "remcoh/channels.hpp"
#include "remcoh/matrix.hpp"

namespace remcoh {

namespace detail {

inline double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

inline double entropy_of_spectrum(const std::vector<double>& eigs) {
    double h = 0.0;
    for (double l : eigs) h -= xlog2x(l);
    return h;
}

inline void require_two_qubits(const DensityMatrix& rho, const char* op) {
    if (rho.layout() != RegisterLayout::qubits(2)) {
        throw std::invalid_argument(std::string(op) + ": expected a two-qubit state");
    }
}

/// Entropy of a 2x2 Hermitian PSD block divided by its trace, weighted by the
/// trace: t * H(m / t).  Closed-form eigenvalues keep the optimizer cheap.
inline double weighted_qubit_entropy(Complex m00, Complex m01, Complex m11) {
    const double t = m00.real() + m11.real();
    if (t <= 0.0) return 0.0;
    const double half_gap = std::sqrt(0.25 * (m00.real() - m11.real()) * (m00.real() - m11.real()) + std::norm(m01));
    const double l1 = 0.5 * t + half_gap;
    const double l2 = std::max(0.0, 0.5 * t - half_gap);
    // t * H(l/t) = -sum l log(l/t) = -sum l log l + t log t
    return -xlog2x(l1) - xlog2x(l2) + xlog2x(t);
}

}  // namespace detail

// Coherence.

inline double l1_coherence(const ComplexMatrix& m) {
    double c = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) c += std::abs(m(i, j));
    return c;
}

inline double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.matrix()); }

// Entropies.

inline double von_neumann_entropy(const DensityMatrix& rho) {
    return detail::entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

inline double mutual_information(const DensityMatrix& rho_ab) {
    if (rho_ab.layout().size() != 2) throw std::invalid_argument("mutual_information: layout is not bipartite");
    return von_neumann_entropy(partial_trace(rho_ab, {0})) + von_neumann_entropy(partial_trace(rho_ab, {1})) -
           von_neumann_entropy(rho_ab);
}

// Discord.

/// Measurement direction on the Bloch sphere; the basis is {|n>, |-n>}.
struct BlochAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
};

struct ClassicalCorrelation {
    double value = 0.0;  // bits
    BlochAngles basis;
};

struct DiscordBreakdown {
    double mutual_information = 0.0;
    double classical_correlation = 0.0;
    double discord = 0.0;
    BlochAngles optimizer_basis;
};

/// Optimizer grid: a 64 x 128 (theta, phi) scan followed by three refinement
/// rounds, each a 9 x 9 stencil spanning +-1 previous step (so the step
/// shrinks 4x per round).  Fully deterministic.
struct DiscordSearchGrid {
    int theta_points = 64;
    int phi_points = 128;
    int refinement_rounds = 3;
    int stencil_half_width = 4;
};

/// max over projective measurements {n, -n} on A of S(B) - S(B|{n}).
inline ClassicalCorrelation classical_correlation(const DensityMatrix& rho_ab,
                                                  const DiscordSearchGrid& grid = {}) {
    detail::require_two_qubits(rho_ab, "classical_correlation");
    const auto& r = rho_ab.matrix();
    // Bob blocks R_ab = <a|_A rho |b>_A.
    auto block = [&](std::size_t a, std::size_t b, std::size_t i, std::size_t j) { return r(2 * a + i, 2 * b + j); };
    const double s_b = von_neumann_entropy(partial_trace(rho_ab, {1}));

    auto conditional_entropy = [&](double theta, double phi) {
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        const std::array<std::array<Complex, 2>, 2> dirs{{
            {Complex(c), std::polar(s, phi)},
            {-std::polar(s, -phi), Complex(c)},
        }};
        double h = 0.0;
        for (const auto& n : dirs) {
            // Bob block sum_ab conj(n_a) n_b R_ab
            std::array<Complex, 3> m{};  // (0,0), (0,1), (1,1)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const Complex w = std::conj(n[a]) * n[b];
                    m[0] += w * block(a, b, 0, 0);
                    m[1] += w * block(a, b, 0, 1);
                    m[2] += w * block(a, b, 1, 1);
                }
            h += detail::weighted_qubit_entropy(m[0], m[1], m[2]);
        }
        return h;
    };

    constexpr double pi = std::numbers::pi;
    double best_h = 0.0;
    BlochAngles best{};
    bool first = true;
    double dtheta = pi / (grid.theta_points - 1);
    double dphi = 2.0 * pi / grid.phi_points;
    for (int i = 0; i < grid.theta_points; ++i) {
        for (int j = 0; j < grid.phi_points; ++j) {
            const double th = i * dtheta;
            const double ph = j * dphi;
            const double h = conditional_entropy(th, ph);
            if (first || h < best_h) {
                best_h = h;
                best = {th, ph};
                first = false;
            }
        }
    }
    for (int round = 0; round < grid.refinement_rounds; ++round) {
        const double st = dtheta / grid.stencil_half_width;
        const double sp = dphi / grid.stencil_half_width;
        const BlochAngles centre = best;
        for (int i = -grid.stencil_half_width; i <= grid.stencil_half_width; ++i) {
            const double th = centre.theta + i * st;
            if (th < 0.0 || th > pi) continue;
            for (int j = -grid.stencil_half_width; j <= grid.stencil_half_width; ++j) {
                double ph = std::fmod(centre.phi + j * sp, 2.0 * pi);
                if (ph < 0.0) ph += 2.0 * pi;
                const double h = conditional_entropy(th, ph);
                if (h < best_h) {
                    best_h = h;
                    best = {th, ph};
                }
            }
        }
        dtheta = st;
        dphi = sp;
    }
    return {s_b - best_h, best};
}

/// Brute-force discord D(B|A) = I(A:B) - J(B|A).  Reference oracle for every
/// closed form below.
inline DiscordBreakdown discord_bruteforce(const DensityMatrix& rho_ab, const DiscordSearchGrid& grid = {}) {
    detail::require_two_qubits(rho_ab, "discord_bruteforce");
    const double mi = mutual_information(rho_ab);
    const auto cc = classical_correlation(rho_ab, grid);
    return {mi, cc.value, mi - cc.value, cc.basis};
}

class CorrelationVector {
public:
    CorrelationVector(double c1, double c2, double c3) : c_{c1, c2, c3} {
        for (double v : c_) {
            if (!(std::abs(v) <= 1.0 + kStateTolerance)) {
                throw std::invalid_argument("CorrelationVector: component outside [-1, 1]");
            }
        }
    }

    double c1() const { return c_[0]; }
    double c2() const { return c_[1]; }
    double c3() const { return c_[2]; }
    double operator[](std::size_t i) const { return c_.at(i); }
    double c() const { return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])}); }

    /// 4 x the Bell-diagonal eigenvalues.
    std::array<double, 4> bell_weights() const {
        const auto [a, b, c] = c_;
        return {1.0 - a - b - c, 1.0 - a + b + c, 1.0 + a - b + c, 1.0 + a + b - c};
    }

    /// (I + sum c_i sigma_i (x) sigma_i) / 4; valid only if all bell_weights >= 0.
    DensityMatrix bell_diagonal_state() const {
        ComplexMatrix m = ComplexMatrix::identity(4);
        for (std::size_t i = 0; i < 3; ++i) m += kron(pauli(i + 1), pauli(i + 1)) * Complex(c_[i]);
        return DensityMatrix(m * Complex(0.25), RegisterLayout::qubits(2));
    }

private:
    std::array<double, 3> c_;
};

/// c_i = Tr(sigma_i (x) sigma_i rho).
inline CorrelationVector correlation_vector(const DensityMatrix& rho_ab) {
    detail::require_two_qubits(rho_ab, "correlation_vector");
    std::array<double, 3> c{};
    for (std::size_t i = 0; i < 3; ++i) c[i] = trace(kron(pauli(i + 1), pauli(i + 1)) * rho_ab.matrix()).real();
    return {c[0], c[1], c[2]};
}

/// Closed-form discord of the maximally-mixed-marginal state with
/// correlations cv:
///   1/4 sum_w w log2 w - (1-c)/2 log2(1-c) - (1+c)/2 log2(1+c)
/// over the four Bell weights w, c = max |c_i|.
inline double discord_bell_diagonal(const CorrelationVector& cv) {
    double mi = 0.0;
    for (double w : cv.bell_weights()) {
        if (w < -kStateTolerance) {
            throw std::invalid_argument("discord_bell_diagonal: correlations do not describe a state");
        }
        mi += detail::xlog2x(w);
    }
    const double c = cv.c();
    const double cc = 0.5 * detail::xlog2x(1.0 - c) + 0.5 * detail::xlog2x(1.0 + c);
    return std::max(0.0, 0.25 * mi - cc);
}

/// Discord of the |+>-conditioned state for two complete depolarizing
/// channels, as an explicit function of k with c = k/(2+k).
inline double discord_scenario_A(double p) {
    const double k = control_k(p);
    const double c = k / (2.0 + k);
    using detail::xlog2x;
    return 0.25 * (3.0 * xlog2x(1.0 - c) + xlog2x(1.0 + 3.0 * c)) - 0.5 * xlog2x(1.0 - c) -
           0.5 * xlog2x(1.0 + c);
}

/// Two-branch closed form (delta <= pi/4 uses cos^2 delta, above uses
/// sin^2 delta) for depolarizing + U(gamma, delta).  The normalisation is
/// N = 1 + k(1 + cos gamma), the same one that appears in the partial
/// transpose spectrum; every log term is written as z log2 z of the
/// normalised argument.
inline double discord_scenario_B(double p, double gamma, double delta) {
    constexpr double pi = std::numbers::pi;
    if (!(delta >= 0.0 && delta <= pi / 2.0)) {
        throw std::invalid_argument("discord_scenario_B: delta outside [0, pi/2]");
    }
    const double k = control_k(p);
    const double norm = 1.0 + k * (1.0 + std::cos(gamma));
    const double s2 = std::pow(std::sin(gamma / 2.0), 2);
    const double t = delta <= pi / 4.0 ? std::pow(std::cos(delta), 2) : std::pow(std::sin(delta), 2);
    const double x = 2.0 * k * t * s2 / norm;
    const double y = 2.0 * k * std::cos(2.0 * delta) * s2 / norm;
    const double e1 = (1.0 + 2.0 * k) / norm;
    const double e2 = (1.0 + 2.0 * k * std::cos(gamma)) / norm;
    using detail::xlog2x;
    return 0.25 * (xlog2x(e1) + xlog2x(e2) - 2.0 * xlog2x(1.0 - x) - 2.0 * xlog2x(1.0 + x) +
                   2.0 * xlog2x(1.0 + y) + 2.0 * xlog2x(1.0 - y));
}

// Partial-transpose diagnostics.

inline double min_pt_eigenvalue(const DensityMatrix& rho_ab) {
    detail::require_two_qubits(rho_ab, "min_pt_eigenvalue");
    return hermitian_eigenvalues(partial_transpose(rho_ab, 0)).front();
}

inline bool is_ppt(const DensityMatrix& rho_ab) { return min_pt_eigenvalue(rho_ab) >= -kStateTolerance; }

/// Sum of |negative eigenvalues| of the partial transpose.
inline double negativity(const DensityMatrix& rho_ab) {
    detail::require_two_qubits(rho_ab, "negativity");
    double n = 0.0;
    for (double l : hermitian_eigenvalues(partial_transpose(rho_ab, 0)))
        if (l < 0.0) n -= l;
    return n;
}

/// The two doubly-degenerate eigenvalues of the partially transposed
/// |+>-conditioned state for depolarizing + U(gamma, delta).
inline std::pair<double, double> pt_eigs_scenario_B(double p, double gamma) {
    const double k = control_k(p);
    const double denom = 4.0 * (1.0 + k * (1.0 + std::cos(gamma)));
    return {(1.0 + 2.0 * k) / denom, (1.0 + 2.0 * k * std::cos(gamma)) / denom};
}

}  // namespace remcoh
