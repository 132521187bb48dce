#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace remcoh;
using namespace remcoh::testing;

namespace {

const ComplexMatrix kP0{{1.0, 0.0}, {0.0, 0.0}};
const ComplexMatrix kP1{{0.0, 0.0}, {0.0, 1.0}};

DensityMatrix singlet() { return DensityMatrix::pure(singlet_ket(), RegisterLayout::qubits(2)); }

std::vector<KrausChannel> sample_channels() {
    return {identity_channel(),
            complete_depolarizing(),
            partial_depolarizing(0.0),
            partial_depolarizing(0.3),
            partial_depolarizing(1.0),
            unitary_channel(unitary_u(1.0, 0.5)),
            unitary_channel(state_unitary(0.6, Complex(0.0, 0.8))),
            amplitude_damping(0.35)};
}

/// The control-|0> and control-|1> branches of a SWITCH output, as the
/// reduced Alice-Bob operator, computed directly from the two channels.
ComplexMatrix sequential(const KrausChannel& outer, const KrausChannel& inner, const DensityMatrix& rho12) {
    return nested_on_bob(outer, inner, rho12.matrix());
}

}  // namespace

TEST(KrausChannel, RejectsIncompleteOrMismatchedFamilies) {
    EXPECT_THROW(KrausChannel({}), std::invalid_argument);
    EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2) * Complex(0.9)}), std::invalid_argument);
    EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix(3, 3)}), std::invalid_argument);
}

TEST(ChannelProperty, EveryChannelIsComplete) {
    for (const auto& ch : sample_channels()) EXPECT_LE(ch.completeness_residual(), 1e-10) << ch.label();
    for (const auto& a : sample_channels())
        for (const auto& b : sample_channels())
            for (double p : {0.0, 0.3, 1.0})
                EXPECT_LE(switch_channel(a, b, ControlSpec(p)).family().completeness_residual(), 1e-10)
                    << a.label() << " / " << b.label();
}

TEST(ChannelProperty, OutputsAreStatesOnRandomInputs) {
    for (const auto& ch : sample_channels()) {
        for (int t = 0; t < 100; ++t) {
            const auto rho = random_qubit_state();
            const auto raw = apply_kraus(ch.kraus_ops(), rho.matrix());
            EXPECT_NEAR(trace(raw).real(), 1.0, 1e-12);
            EXPECT_LE(max_asymmetry(raw), 1e-12);
            EXPECT_GE(hermitian_eigenvalues(raw).front(), -1e-10);
            EXPECT_LE(max_abs_diff(raw, kraus_sum(ch.kraus_ops(), rho.matrix())), 1e-14);
        }
    }
}

TEST(CompleteDepolarizing, SendsEverythingToMaximallyMixed) {
    const auto ch = complete_depolarizing();
    EXPECT_EQ(ch.kraus_ops().size(), 4u);
    EXPECT_LE(ch.completeness_residual(), 1e-15);
    const auto half = ComplexMatrix::identity(2) * Complex(0.5);
    EXPECT_LE(max_abs_diff(apply_channel(ch, DensityMatrix::pure({1.0, 0.0}, RegisterLayout::qubits(1))).matrix(),
                           half),
              1e-15);
    EXPECT_LE(max_abs_diff(apply_channel(ch, DensityMatrix::pure(plus_minus_basis()[0], RegisterLayout::qubits(1)))
                               .matrix(),
                           half),
              1e-15);
    for (int t = 0; t < 10; ++t)
        EXPECT_LE(max_abs_diff(apply_channel(ch, random_qubit_state()).matrix(), half), 1e-14);
}

TEST(PartialDepolarizing, EndpointsAndMidpoint) {
    for (int t = 0; t < 10; ++t) {
        const auto rho = random_qubit_state();
        EXPECT_LE(max_abs_diff(apply_channel(partial_depolarizing(0.0), rho).matrix(), rho.matrix()), 1e-14);
        EXPECT_LE(max_abs_diff(apply_channel(partial_depolarizing(1.0), rho).matrix(),
                               apply_channel(complete_depolarizing(), rho).matrix()),
                  1e-14);
        const double q = uniform();
        const auto expected = rho.matrix() * Complex(1.0 - q) + ComplexMatrix::identity(2) * Complex(q / 2.0);
        EXPECT_LE(max_abs_diff(apply_channel(partial_depolarizing(q), rho).matrix(), expected), 1e-14);
    }
    const auto plus = DensityMatrix::pure(plus_minus_basis()[0], RegisterLayout::qubits(1));
    const auto out = apply_channel(partial_depolarizing(0.5), plus);
    EXPECT_NEAR(std::abs(out(0, 1)), 0.25, 1e-15);
    EXPECT_NEAR(l1_coherence(out), 0.5, 1e-15);
    const auto zero = DensityMatrix::pure({1.0, 0.0}, RegisterLayout::qubits(1));
    EXPECT_LE(max_abs_diff(apply_channel(partial_depolarizing(0.4), zero).matrix(), dm({{0.8, 0.0}, {0.0, 0.2}})),
              1e-15);
    EXPECT_EQ(partial_depolarizing(0.4).noise_param(), 0.4);
    EXPECT_THROW(partial_depolarizing(-0.01), std::invalid_argument);
    EXPECT_THROW(partial_depolarizing(1.01), std::invalid_argument);
    EXPECT_THROW(partial_depolarizing(std::nan("")), std::invalid_argument);
}

TEST(UnitaryU, EntriesAndUnitarity) {
    EXPECT_LE(max_abs_diff(unitary_u(0.0, 1.3), ComplexMatrix::identity(2)), 0.0);
    EXPECT_LE(max_abs_diff(unitary_u(pi, 0.0), dm({{0.0, -1.0}, {1.0, 0.0}})), 1e-15);
    const double g = 0.7, d = 1.9;
    const auto u = unitary_u(g, d);
    EXPECT_NEAR(std::abs(u(0, 0) - std::cos(g / 2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(0, 1) + std::sin(g / 2) * std::exp(Complex(0.0, -d))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 0) - std::sin(g / 2) * std::exp(Complex(0.0, d))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 1) - std::cos(g / 2)), 0.0, 1e-15);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const auto v = unitary_u(2 * pi * i / 9, 2 * pi * j / 9);
            EXPECT_LE(max_abs_diff(adjoint(v) * v, ComplexMatrix::identity(2)), 1e-14);
        }
}

TEST(StateUnitary, ColumnsAreTargetAndOrthogonalState) {
    EXPECT_LE(max_abs_diff(state_unitary(1.0, 0.0), ComplexMatrix::identity(2)), 0.0);
    for (int t = 0; t < 10; ++t) {
        const auto v = random_ket(2);
        const auto u = state_unitary(v[0], v[1]);
        EXPECT_EQ(u(0, 0), v[0]);
        EXPECT_EQ(u(1, 0), v[1]);
        EXPECT_EQ(u(0, 1), -std::conj(v[1]));
        EXPECT_EQ(u(1, 1), std::conj(v[0]));
        const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
        EXPECT_NEAR(std::abs(det - 1.0), 0.0, 1e-14);
        EXPECT_LE(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(2)), 1e-14);
    }
    EXPECT_THROW(state_unitary(1.0, 0.1), std::invalid_argument);
}

TEST(ControlSpec, RangeOfK) {
    EXPECT_EQ(ControlSpec(0.0).k(), 0.0);
    EXPECT_EQ(ControlSpec(1.0).k(), 0.0);
    EXPECT_EQ(ControlSpec(0.5).k(), 0.5);
    for (int i = 0; i <= 100; ++i) {
        const double k = ControlSpec(i / 100.0).k();
        EXPECT_GE(k, 0.0);
        EXPECT_LE(k, 0.5);
    }
    EXPECT_THROW(ControlSpec(-0.1), std::invalid_argument);
    EXPECT_THROW(ControlSpec(1.5), std::invalid_argument);
    // p weights |0>.
    EXPECT_NEAR(ControlSpec(1.0).state()(0, 0).real(), 1.0, 0.0);
}

TEST(SwitchChannel, IdentityChannelsLeaveStateAndControlUntouched) {
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
        const auto rho = random_density(RegisterLayout::qubits(2));
        const auto sw = switch_channel(identity_channel(), identity_channel(), ControlSpec(p));
        const auto out = apply_switch_to_second_qubit(rho, sw);
        EXPECT_EQ(out.layout(), RegisterLayout::qubits(3));
        EXPECT_LE(max_abs_diff(out.matrix(), kron(rho.matrix(), ControlSpec(p).state().matrix())), 1e-14);
    }
}

TEST(SwitchChannel, DepolarizingFamilyMatchesPauliProducts) {
    const auto sw = switch_channel(complete_depolarizing(), complete_depolarizing(), ControlSpec(0.5));
    const auto& w = sw.family().kraus_ops();
    ASSERT_EQ(w.size(), 16u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const auto expected = (naive_kron(pauli(i) * pauli(j), kP0) + naive_kron(pauli(j) * pauli(i), kP1)) *
                                  Complex(0.25);
            EXPECT_LE(max_abs_diff(w[4 * i + j], expected), 1e-15) << i << j;
        }
}

TEST(SwitchChannel, CompletenessForMixedPair) {
    const auto sw =
        switch_channel(partial_depolarizing(0.3), unitary_channel(unitary_u(1.0, 0.5)), ControlSpec(0.37));
    EXPECT_LE(sw.family().completeness_residual(), 1e-12);
}

TEST(SwitchChannel, RejectsDimensionMismatch) {
    EXPECT_THROW(switch_channel(identity_channel(2), identity_channel(3), ControlSpec(0.5)), std::invalid_argument);
    const KrausChannel isometry({ComplexMatrix(3, 2, {1.0, 0.0, 0.0, 1.0, 0.0, 0.0})});
    EXPECT_THROW(switch_channel(isometry, isometry, ControlSpec(0.5)), std::invalid_argument);
    const auto sw = switch_channel(identity_channel(), identity_channel(), ControlSpec(0.5));
    EXPECT_THROW(apply_switch_to_second_qubit(random_density(RegisterLayout({2, 3})), sw), std::invalid_argument);
}

TEST(SwitchChannel, DefiniteControlReducesToSequentialComposition) {
    // Amplitude damping does not commute with the rotation, so this pins
    // which channel acts first on each control branch.
    const auto ad = amplitude_damping(0.35);
    const auto rot = unitary_channel(unitary_u(1.1, 0.4));
    const auto rho = random_density(RegisterLayout::qubits(2));
    ASSERT_GT(max_abs_diff(sequential(ad, rot, rho), sequential(rot, ad, rho)), 1e-3);

    const auto control_0 = apply_switch_to_second_qubit(rho, switch_channel(ad, rot, ControlSpec(1.0)));
    EXPECT_LE(max_abs_diff(partial_trace(control_0, {0, 1}).matrix(), sequential(ad, rot, rho)), 1e-12);
    EXPECT_LE(max_abs_diff(control_0.matrix(), kron(sequential(ad, rot, rho), kP0)), 1e-12);

    const auto control_1 = apply_switch_to_second_qubit(rho, switch_channel(ad, rot, ControlSpec(0.0)));
    EXPECT_LE(max_abs_diff(partial_trace(control_1, {0, 1}).matrix(), sequential(rot, ad, rho)), 1e-12);
    EXPECT_LE(max_abs_diff(control_1.matrix(), kron(sequential(rot, ad, rho), kP1)), 1e-12);
}

TEST(SwitchChannelProperty, DefiniteControlOnAllChannelPairs) {
    for (const auto& a : sample_channels())
        for (const auto& b : sample_channels()) {
            const auto rho = random_density(RegisterLayout::qubits(2));
            const auto out1 = apply_switch_to_second_qubit(rho, switch_channel(a, b, ControlSpec(1.0)));
            const auto out0 = apply_switch_to_second_qubit(rho, switch_channel(a, b, ControlSpec(0.0)));
            EXPECT_LE(max_abs_diff(partial_trace(out1, {0, 1}).matrix(), sequential(a, b, rho)), 1e-12);
            EXPECT_LE(max_abs_diff(partial_trace(out0, {0, 1}).matrix(), sequential(b, a, rho)), 1e-12);
        }
}

TEST(SwitchChannel, DepolarizingPairAtDefiniteControlGivesProductOfMarginals) {
    const auto out = apply_switch_to_second_qubit(singlet(), switch_channel(complete_depolarizing(),
                                                                            complete_depolarizing(), ControlSpec(1.0)));
    const auto reduced = partial_trace(out, {0, 1});
    EXPECT_LE(max_abs_diff(reduced.matrix(), ComplexMatrix::identity(4) * Complex(0.25)), 1e-12);
    EXPECT_LE(max_abs_diff(reduced.matrix(), sequential(complete_depolarizing(), complete_depolarizing(), singlet())),
              1e-12);
}

TEST(SwitchChannel, DepolarizingPairOnSingletMatchesClosedFormOutput) {
    // I/4 (x) diag(p, 1-p) + (k/4) |Psi-><Psi-| (x) (|0><1| + |1><0|)
    for (double p : {0.5, 0.2, 0.9}) {
        const double k = std::sqrt(p * (1.0 - p));
        const auto expected = naive_kron(ComplexMatrix::identity(4) * Complex(0.25), dm({{p, 0.0}, {0.0, 1.0 - p}})) +
                              naive_kron(projector(singlet_ket()) * Complex(k / 4.0), pauli(1));
        const auto out = apply_switch_to_second_qubit(
            singlet(), switch_channel(complete_depolarizing(), complete_depolarizing(), ControlSpec(p)));
        EXPECT_LE(max_abs_diff(out.matrix(), expected), 1e-12) << "p = " << p;
    }
}

TEST(SwitchChannelProperty, ExchangingChannelsMirrorsTheControl) {
    const auto x_on_control = naive_kron(ComplexMatrix::identity(4), pauli(1));
    for (int t = 0; t < 10; ++t) {
        const auto rho = random_density(RegisterLayout::qubits(2));
        const double p = uniform();
        const auto a = amplitude_damping(uniform());
        const auto b = unitary_channel(random_unitary_2());
        const auto ab = apply_switch_to_second_qubit(rho, switch_channel(a, b, ControlSpec(p)));
        const auto ba = apply_switch_to_second_qubit(rho, switch_channel(b, a, ControlSpec(1.0 - p)));
        EXPECT_LE(max_abs_diff(ab.matrix(), x_on_control * ba.matrix() * x_on_control), 1e-12);
    }
}

TEST(SwitchChannelProperty, SelfSwitchIndependentOfKrausRepresentation) {
    // Mixing the depolarizing Kraus operators by a real rotation gives the
    // same channel; the self-switch output must not notice.
    const double t = 0.7;
    const auto& s = pauli_set();
    const std::vector<ComplexMatrix> mixed{(s[0] * Complex(std::cos(t)) + s[1] * Complex(std::sin(t))) * Complex(0.5),
                                           (s[1] * Complex(std::cos(t)) - s[0] * Complex(std::sin(t))) * Complex(0.5),
                                           s[2] * Complex(0.5), s[3] * Complex(0.5)};
    const KrausChannel alt(mixed, "depolarizing_rotated");
    for (int n = 0; n < 5; ++n) {
        const auto rho = random_density(RegisterLayout::qubits(2));
        const double p = uniform();
        const auto ref = apply_switch_to_second_qubit(
            rho, switch_channel(complete_depolarizing(), complete_depolarizing(), ControlSpec(p)));
        const auto other = apply_switch_to_second_qubit(rho, switch_channel(alt, alt, ControlSpec(p)));
        const auto swapped = apply_switch_to_second_qubit(rho, switch_channel(alt, complete_depolarizing(),
                                                                              ControlSpec(p)));
        const auto swapped_back = apply_switch_to_second_qubit(rho, switch_channel(complete_depolarizing(), alt,
                                                                                   ControlSpec(p)));
        EXPECT_LE(max_abs_diff(ref.matrix(), other.matrix()), 1e-12);
        EXPECT_LE(max_abs_diff(swapped.matrix(), swapped_back.matrix()), 1e-12);
    }
}

TEST(ApplyChannel, IdentityAndDimensionChecks) {
    const auto rho = random_qubit_state();
    EXPECT_LE(max_abs_diff(apply_channel(identity_channel(), rho).matrix(), rho.matrix()), 0.0);
    EXPECT_THROW(apply_channel(identity_channel(3), rho), std::invalid_argument);
}

TEST(MeasureRegister, ScenarioAControlOutcome) {
    const double p = 0.5, k = 0.5;
    const auto out = apply_switch_to_second_qubit(
        singlet(), switch_channel(complete_depolarizing(), complete_depolarizing(), ControlSpec(p)));
    const auto res = measure_register(out, 2, plus_minus_basis(), {"+", "-"});
    ASSERT_EQ(res.size(), 2u);
    EXPECT_EQ(res[0].outcome_label(), "+");
    EXPECT_NEAR(res[0].probability(), (2.0 + k) / 4.0, 1e-12);
    EXPECT_NEAR(res[0].probability(), 0.625, 1e-12);
    EXPECT_NEAR(res[0].probability() + res[1].probability(), 1.0, 1e-12);
    const double c = 4.0 / (2.0 + k);
    const auto eq8 = (ComplexMatrix::identity(4) * Complex(1.0 / 8.0) + projector(singlet_ket()) * Complex(k / 4.0)) *
                     Complex(c);
    EXPECT_LE(max_abs_diff(res[0].post_state().matrix(), eq8), 1e-12);
    EXPECT_EQ(res[0].post_state().layout(), RegisterLayout::qubits(2));
}

TEST(MeasureRegister, DefiniteControlGivesEvenOdds) {
    const auto out = apply_switch_to_second_qubit(
        singlet(), switch_channel(complete_depolarizing(), complete_depolarizing(), ControlSpec(1.0)));
    const auto res = measure_register(out, 2, plus_minus_basis());
    EXPECT_NEAR(res[0].probability(), 0.5, 1e-12);
    EXPECT_NEAR(res[1].probability(), 0.5, 1e-12);
}

TEST(MeasureRegister, NullOutcomeCarriesNoState) {
    const auto zero_zero = DensityMatrix::pure({1.0, 0.0, 0.0, 0.0}, RegisterLayout::qubits(2));
    const auto res = measure_register(zero_zero, 0, computational_basis());
    EXPECT_FALSE(res[0].is_null());
    EXPECT_NEAR(res[0].probability(), 1.0, 1e-15);
    EXPECT_TRUE(res[1].is_null());
    EXPECT_EQ(res[1].probability(), 0.0);
    EXPECT_THROW((void)res[1].post_state(), std::logic_error);
}

TEST(MeasureRegister, RejectsBadBasesAndRegisters) {
    const auto rho = random_density(RegisterLayout::qubits(2));
    EXPECT_THROW(measure_register(rho, 2, computational_basis()), std::invalid_argument);
    EXPECT_THROW(measure_register(rho, 0, {{1.0, 0.0}}), std::invalid_argument);
    EXPECT_THROW(measure_register(rho, 0, {{1.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    EXPECT_THROW(measure_register(random_qubit_state(), 0, computational_basis()), std::invalid_argument);
}

TEST(MeasureRegisterProperty, ProbabilitiesSumToOneAndPostStatesAreValid) {
    for (int t = 0; t < 30; ++t) {
        const auto rho = random_density(RegisterLayout({2, 3, 2}));
        const auto u = random_unitary_2();
        const std::vector<Ket> basis{{u(0, 0), u(1, 0)}, {u(0, 1), u(1, 1)}};
        for (std::size_t reg : {0u, 2u}) {
            const auto res = measure_register(rho, reg, basis);
            EXPECT_NEAR(res[0].probability() + res[1].probability(), 1.0, 1e-12);
            for (const auto& r : res) EXPECT_NEAR(trace(r.post_state().matrix()).real(), 1.0, 1e-12);
        }
    }
}
