// channels.hpp - Kraus channels, the quantum SWITCH, and projective measurement
//
// Order convention for the SWITCH of channels `first` (Kraus X_i) and
// `second` (Kraus Y_j) on system (x) control:
//
//     W_ij = X_i Y_j (x) |0><0|  +  Y_j X_i (x) |1><1|
//
// so on the |0> control branch `second` acts on the state first, and on the
// |1> branch `first` acts first.  The control qubit is the last register.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "remcoh/matrix.hpp"

namespace remcoh {

class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops, std::string label = {},
                          std::optional<double> noise_param = std::nullopt)
        : ops_(std::move(kraus_ops)), label_(std::move(label)), noise_param_(noise_param) {
        if (ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
        const auto rows = ops_.front().rows();
        const auto cols = ops_.front().cols();
        for (const auto& k : ops_) {
            if (k.rows() != rows || k.cols() != cols) {
                throw std::invalid_argument("KrausChannel: Kraus operators differ in shape");
            }
        }
        const double residual = completeness_residual();
        if (residual > kStateTolerance) {
            throw std::invalid_argument("KrausChannel '" + label_ +
                                        "': completeness violated, residual " + std::to_string(residual));
        }
    }

    const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
    const std::string& label() const { return label_; }
    std::optional<double> noise_param() const { return noise_param_; }
    std::size_t dim_in() const { return ops_.front().cols(); }
    std::size_t dim_out() const { return ops_.front().rows(); }

    /// max entry of |sum K^dagger K - I|.
    double completeness_residual() const {
        ComplexMatrix sum(dim_in(), dim_in());
        for (const auto& k : ops_) sum += adjoint(k) * k;
        return max_abs_diff(sum, ComplexMatrix::identity(dim_in()));
    }

private:
    std::vector<ComplexMatrix> ops_;
    std::string label_;
    std::optional<double> noise_param_;
};

/// Control qubit sqrt(p)|0> + sqrt(1-p)|1>, with coherence amplitude
/// k = sqrt(p(1-p)) in [0, 1/2].
class ControlSpec {
public:
    explicit ControlSpec(double p) : p_(p) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ControlSpec: p outside [0, 1]");
    }

    double p() const { return p_; }
    double k() const { return std::sqrt(p_ * (1.0 - p_)); }
    Ket ket() const { return {std::sqrt(p_), std::sqrt(1.0 - p_)}; }
    DensityMatrix state() const { return DensityMatrix(projector(ket()), RegisterLayout({2})); }

private:
    double p_;
};

inline double control_k(double p) { return ControlSpec(p).k(); }

class SwitchChannel {
public:
    SwitchChannel(KrausChannel first, KrausChannel second, ControlSpec control)
        : first_(std::move(first)), second_(std::move(second)), control_(control),
          family_(build(first_, second_)) {}

    const KrausChannel& first() const { return first_; }
    const KrausChannel& second() const { return second_; }
    const ControlSpec& control() const { return control_; }

    /// The W_ij family as a channel on system (x) control.
    const KrausChannel& family() const { return family_; }

private:
    static KrausChannel build(const KrausChannel& first, const KrausChannel& second) {
        if (first.dim_in() != first.dim_out() || second.dim_in() != second.dim_out() ||
            first.dim_in() != second.dim_in()) {
            throw std::invalid_argument("switch_channel: channels must act on the same dimension");
        }
        const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}};
        const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
        std::vector<ComplexMatrix> ws;
        ws.reserve(first.kraus_ops().size() * second.kraus_ops().size());
        for (const auto& x : first.kraus_ops())
            for (const auto& y : second.kraus_ops()) ws.push_back(kron(x * y, p0) + kron(y * x, p1));
        return KrausChannel(std::move(ws), "switch(" + first.label() + ", " + second.label() + ")");
    }

    KrausChannel first_;
    KrausChannel second_;
    ControlSpec control_;
    KrausChannel family_;
};

class MeasurementResult {
public:
    MeasurementResult(double probability, std::optional<DensityMatrix> post_state, std::string label)
        : probability_(probability), post_state_(std::move(post_state)), label_(std::move(label)) {}

    double probability() const { return probability_; }
    const std::string& outcome_label() const { return label_; }
    bool is_null() const { return !post_state_.has_value(); }

    const DensityMatrix& post_state() const {
        if (!post_state_) {
            throw std::logic_error("MeasurementResult: outcome '" + label_ + "' has zero probability");
        }
        return *post_state_;
    }

private:
    double probability_;
    std::optional<DensityMatrix> post_state_;
    std::string label_;
};

/// Outcomes below this probability are reported as null.
inline constexpr double kNullOutcomeProbability = 1e-12;

// Named channels.

inline KrausChannel identity_channel(std::size_t dim = 2) {
    return KrausChannel({ComplexMatrix::identity(dim)}, "identity");
}

inline KrausChannel unitary_channel(const ComplexMatrix& u, std::string label = "unitary") {
    return KrausChannel({u}, std::move(label));
}

/// Kraus set {sigma_i / 2}: every qubit state goes to I/2.
inline KrausChannel complete_depolarizing() {
    std::vector<ComplexMatrix> ops;
    for (const auto& s : pauli_set()) ops.push_back(s * Complex(0.5));
    return KrausChannel(std::move(ops), "complete_depolarizing", 1.0);
}

/// rho -> (1 - q) rho + q I/2.
inline KrausChannel partial_depolarizing(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("partial_depolarizing: q outside [0, 1]");
    std::vector<ComplexMatrix> ops{pauli(0) * Complex(std::sqrt(1.0 - 0.75 * q))};
    for (std::size_t i = 1; i < 4; ++i) ops.push_back(pauli(i) * Complex(std::sqrt(q) / 2.0));
    return KrausChannel(std::move(ops), "partial_depolarizing", q);
}

/// [[cos(g/2), -sin(g/2) e^{-i d}], [sin(g/2) e^{i d}, cos(g/2)]].
inline ComplexMatrix unitary_u(double gamma, double delta) {
    const double c = std::cos(gamma / 2.0);
    const double s = std::sin(gamma / 2.0);
    return ComplexMatrix{{c, -s * std::polar(1.0, -delta)}, {s * std::polar(1.0, delta), c}};
}

/// [[alpha, -conj(beta)], [beta, conj(alpha)]]: maps |0> to alpha|0> + beta|1>
/// and |1> to the orthogonal state.
inline ComplexMatrix state_unitary(Complex alpha, Complex beta) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1.0) > kStateTolerance) {
        throw std::invalid_argument("state_unitary: |alpha|^2 + |beta|^2 = " + std::to_string(n));
    }
    return ComplexMatrix{{alpha, -std::conj(beta)}, {beta, std::conj(alpha)}};
}

inline SwitchChannel switch_channel(KrausChannel first, KrausChannel second, ControlSpec control) {
    return SwitchChannel(std::move(first), std::move(second), control);
}

// Channel application.

inline ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho) {
    ComplexMatrix out(ops.front().rows(), ops.front().rows());
    for (const auto& k : ops) out += k * rho * adjoint(k);
    return out;
}

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim_in() != rho.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
    auto layout = ch.dim_out() == ch.dim_in() ? rho.layout() : RegisterLayout({ch.dim_out()});
    return DensityMatrix(apply_kraus(ch.kraus_ops(), rho.matrix()), std::move(layout));
}

/// Applies `ch` to the contiguous registers [first, first + span) of `rho`.
inline DensityMatrix apply_local(const KrausChannel& ch, const DensityMatrix& rho, std::size_t first,
                                 std::size_t span = 1) {
    if (ch.dim_in() != ch.dim_out()) throw std::invalid_argument("apply_local: channel must be square");
    std::vector<ComplexMatrix> ops;
    ops.reserve(ch.kraus_ops().size());
    for (const auto& k : ch.kraus_ops()) ops.push_back(embed(k, rho.layout(), first, span));
    return DensityMatrix(apply_kraus(ops, rho.matrix()), rho.layout());
}

/// (I (x) W_ij)(rho12 (x) rho_c)(I (x) W_ij)^dagger: the SWITCH acts on Bob's
/// qubit and the control.  Output layout is {Alice, Bob, control}.
inline DensityMatrix apply_switch_to_second_qubit(const DensityMatrix& rho12, const SwitchChannel& sw) {
    if (rho12.layout() != RegisterLayout::qubits(2)) {
        throw std::invalid_argument("apply_switch_to_second_qubit: expected a two-qubit state");
    }
    if (sw.first().dim_in() != 2) {
        throw std::invalid_argument("apply_switch_to_second_qubit: switch must act on a qubit");
    }
    return apply_local(sw.family(), tensor(rho12, sw.control().state()), 1, 2);
}

inline void require_orthonormal_basis(const std::vector<Ket>& basis, std::size_t dim) {
    if (basis.size() != dim) throw std::invalid_argument("measurement basis is not complete");
    for (std::size_t a = 0; a < dim; ++a) {
        if (basis[a].size() != dim) throw std::invalid_argument("measurement basis vector has wrong length");
        for (std::size_t b = 0; b < dim; ++b) {
            const Complex expected = a == b ? 1.0 : 0.0;
            if (std::abs(inner(basis[a], basis[b]) - expected) > kStateTolerance) {
                throw std::invalid_argument("measurement basis is not orthonormal");
            }
        }
    }
}

/// Projective measurement of one register.  The measured register is traced
/// away in the post-states; outcomes with probability below
/// kNullOutcomeProbability carry probability 0 and no state.
inline std::vector<MeasurementResult> measure_register(const DensityMatrix& rho, std::size_t reg,
                                                       const std::vector<Ket>& basis,
                                                       const std::vector<std::string>& labels = {}) {
    const auto& layout = rho.layout();
    if (reg >= layout.size()) throw std::invalid_argument("measure_register: register index out of range");
    if (layout.size() < 2) throw std::invalid_argument("measure_register: nothing left after measurement");
    const std::size_t d = layout.dim(reg);
    require_orthonormal_basis(basis, d);

    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < layout.size(); ++r)
        if (r != reg) rest.push_back(layout.dim(r));
    const RegisterLayout out_layout(rest);

    std::size_t left = 1, right = 1;
    for (std::size_t r = 0; r < layout.size(); ++r) {
        if (r < reg) left *= layout.dim(r);
        if (r > reg) right *= layout.dim(r);
    }

    std::vector<MeasurementResult> results;
    results.reserve(d);
    for (std::size_t o = 0; o < d; ++o) {
        // (I (x) <v| (x) I) rho (I (x) |v> (x) I)
        ComplexMatrix bra(1, d);
        for (std::size_t i = 0; i < d; ++i) bra(0, i) = std::conj(basis[o][i]);
        const ComplexMatrix m = kron(kron(ComplexMatrix::identity(left), bra), ComplexMatrix::identity(right));
        const ComplexMatrix post = m * rho.matrix() * adjoint(m);
        const double prob = trace(post).real();
        std::string label = o < labels.size() ? labels[o] : std::to_string(o);
        if (prob < kNullOutcomeProbability) {
            results.emplace_back(0.0, std::nullopt, std::move(label));
        } else {
            results.emplace_back(prob, DensityMatrix::normalized(post, out_layout), std::move(label));
        }
    }
    return results;
}

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

inline const std::vector<Ket>& plus_minus_basis() {
    static const std::vector<Ket> basis{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    return basis;
}

inline const std::vector<Ket>& computational_basis() {
    static const std::vector<Ket> basis{{1.0, 0.0}, {0.0, 1.0}};
    return basis;
}

}  // namespace remcoh
