#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centralspin/config.hpp"
#include "centralspin/model.hpp"
#include "centralspin/oracle.hpp"

using namespace centralspin;
using namespace centralspin::oracle;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

}  // namespace

TEST(PauliExponential, Examples) {
    EXPECT_LT((pauli_exponential({0.3, 1.0, -2.0, 0.5}, 0.0) - ComplexMatrix2::identity()).max_abs(), 1e-15);

    const auto half_turn = pauli_exponential({0.0, 1.0, 0.0, 0.0}, kPi / 2);
    EXPECT_LT((half_turn - (-kI) * ComplexMatrix2::pauli_x()).max_abs(), 1e-15);

    // r = 5. At r t = pi/2 the propagator is -i n.sigma; at r t = pi it is -I.
    const PauliGenerator g{0.0, 3.0, 0.0, 4.0};
    const auto quarter = pauli_exponential(g, kPi / 10);
    const auto expected = (-kI / 5.0) * (3.0 * ComplexMatrix2::pauli_x() + 4.0 * ComplexMatrix2::pauli_z());
    EXPECT_LT((quarter - expected).max_abs(), 1e-15);
    EXPECT_LT((pauli_exponential(g, kPi / 5) + ComplexMatrix2::identity()).max_abs(), 1e-15);
    EXPECT_LT((series_exponential(g, kPi / 10) - expected).max_abs(), 1e-12);
}

TEST(PauliExponential, ZeroGeneratorIsGlobalPhase) {
    const auto u = pauli_exponential({0.7, 0.0, 0.0, 0.0}, 2.0);
    EXPECT_LT((u - std::polar(1.0, -1.4) * ComplexMatrix2::identity()).max_abs(), 1e-15);
}

TEST(PauliExponential, UnitaryAndMatchesSeries) {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    std::uniform_real_distribution<double> ut(-5.0, 5.0);
    double worst_unitary = 0.0;
    double worst_series = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const PauliGenerator g{uc(gen), uc(gen), uc(gen), uc(gen)};
        const double t = ut(gen);
        const auto u = pauli_exponential(g, t);
        worst_unitary = std::max(worst_unitary, unitarity_defect(u));
        worst_series = std::max(worst_series, (u - series_exponential(g, t)).max_abs());
    }
    EXPECT_LT(worst_unitary, 1e-12);
    EXPECT_LT(worst_series, 1e-12);
}

TEST(SingleSpinFactorExact, Examples) {
    EXPECT_LT(std::abs(single_spin_factor_exact(BathSpinParams::make(1.3, 0.4), 0.0) - 1.0), 1e-15);

    const auto zero = single_spin_factor_exact(BathSpinParams::make(1.0, 1.0), kPi / (2.0 * std::sqrt(2.0)));
    EXPECT_LT(std::abs(zero), 1e-12);

    // Reference from scipy.linalg.expm: <0| e^{i(sx - 0.5 sz)0.7} e^{-i(sx + 0.5 sz)0.7} |0>.
    const auto up = single_spin_factor_exact(BathSpinParams::make(1.0, 0.5, 1.0, 0.0), 0.7);
    EXPECT_NEAR(up.real(), 0.8011097428144274, 1e-13);
    EXPECT_NEAR(up.imag(), -0.4472067109899281, 1e-13);
}

TEST(SingleSpinFactorExact, RealClosedFormForSigmaXStates) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    const double h = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 5000; ++k) {
        const double w = u(gen), l = u(gen), t = ut(gen);
        for (const auto& spin : {BathSpinParams::make(w, l), BathSpinParams::make(w, l, h, -h)}) {
            const auto exact = single_spin_factor_exact(spin, t);
            EXPECT_NEAR(exact.real(), single_spin_factor(spin, t), 1e-12);
            EXPECT_NEAR(exact.imag(), 0.0, 1e-12);
        }
    }
}

TEST(SingleSpinFactorExact, BoundedForArbitraryStates) {
    const auto bath = random_bath(200, 77, 2.0, 2.0, true);
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    for (const auto& s : bath.spins()) {
        for (int k = 0; k < 20; ++k) EXPECT_LE(std::abs(single_spin_factor_exact(s, ut(gen))), 1.0 + 1e-12);
    }
}

TEST(DecoherenceFactorExact, MatchesClosedFormForSigmaXBath) {
    const auto bath = BathModel::homogeneous(10, 1.0, 0.3);
    EXPECT_LT(std::abs(decoherence_factor_exact(bath, 0.0) - 1.0), 1e-14);
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> ut(0.0, 100.0);
    for (int k = 0; k < 1000; ++k) {
        const double t = ut(gen);
        EXPECT_LT(std::abs(decoherence_factor_exact(bath, t) - decoherence_factor(bath, t)), 1e-12);
    }
}

TEST(DecoherenceFactorExact, SigmaZSpinBreaksClosedForm) {
    // One spin in |0>, one in |+>: the closed form is only the real part.
    const BathModel bath({BathSpinParams::make(1.0, 0.5, 1.0, 0.0), BathSpinParams::make(1.0, 0.5)});
    const auto f = decoherence_factor_exact(bath, 0.7);
    EXPECT_GT(std::abs(f.imag()), 0.1);
    EXPECT_LE(std::abs(f), 1.0);
    EXPECT_NEAR(f.real(), decoherence_factor(bath, 0.7), 1e-12);
}

TEST(StateVector, BasisOrdering) {
    // Central |0>, bath spin 0 in |1>, bath spin 1 in |0>: only index 0b010 is populated.
    const auto central = CentralSpinParams::make(1.0, 0.0);
    const BathModel bath({BathSpinParams::make(1.0, 0.1, 0.0, 1.0), BathSpinParams::make(1.0, 0.1, 1.0, 0.0)});
    const auto psi = StateVector::product_state(central, bath);
    ASSERT_EQ(psi.dimension(), 8u);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(std::abs(psi.amplitudes()[k]), k == 0b010 ? 1.0 : 0.0) << k;

    const auto flipped = StateVector::product_state(CentralSpinParams::make(1.0, kPi), bath);
    EXPECT_NEAR(std::abs(flipped.amplitudes()[0b110]), 1.0, 1e-15);
}

TEST(StateVector, HamiltonianActionOnBasisState) {
    // H|0,00> = (Omega/2 + l0 + l1)|0,00> + w0|0,10> + w1|0,01>
    const auto central = CentralSpinParams::make(2.0, 0.0);
    const BathModel bath({BathSpinParams::make(0.3, 0.5), BathSpinParams::make(0.7, 0.2)});
    std::vector<Complex> in(8), out;
    in[0] = 1.0;
    apply_hamiltonian(central, bath, in, out);
    EXPECT_NEAR(out[0].real(), 1.0 + 0.5 + 0.2, 1e-15);
    EXPECT_NEAR(out[0b010].real(), 0.3, 1e-15);
    EXPECT_NEAR(out[0b001].real(), 0.7, 1e-15);
    // Central |1> flips the sign of the coupling term.
    std::fill(in.begin(), in.end(), Complex{});
    in[0b100] = 1.0;
    apply_hamiltonian(central, bath, in, out);
    EXPECT_NEAR(out[0b100].real(), -1.0 - 0.5 - 0.2, 1e-15);
}

TEST(FullHilbert, InitialStateMatchesModel) {
    const auto central = CentralSpinParams::make(1.0, 1.1);
    const auto bath = random_bath(4, 3, 2.0, 2.0, true);
    const auto rho = full_hilbert_reduced_density(central, bath, 0.0);
    EXPECT_LT((rho - reduced_density_matrix(central, 1.0, 0.0)).max_abs(), 1e-14);
}

TEST(FullHilbert, SingleSpinCoherence) {
    const auto central = CentralSpinParams::make(1.0, kPi / 2);
    const auto bath = BathModel::homogeneous(1, 1.0, 0.5);
    const auto rho = full_hilbert_reduced_density(central, bath, 1.3);
    const double expected = 0.5 * std::abs(decoherence_factor_exact(bath, 1.3));
    EXPECT_NEAR(std::abs(rho(0, 1)), expected, 1e-8);
}

TEST(FullHilbert, HeterogeneousMatchesFactorisedModel) {
    const auto central = CentralSpinParams::make(1.3, 0.8);
    const auto bath = random_bath(4, 2024, 2.0, 2.0, true);
    const FullHilbertEvolver evolver(central, bath);
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.25 * k;
        const auto rho = evolver.reduced_density(t);
        const auto model = reduced_density_matrix(central, decoherence_factor_exact(bath, t), t);
        EXPECT_LT(trace_distance(rho, model), 1e-8) << "t=" << t;
        // Pure dephasing: populations do not move.
        EXPECT_NEAR(rho(0, 0).real(), std::pow(std::cos(0.4), 2), 1e-8);
        EXPECT_NEAR(evolver.state_at(t).norm(), 1.0, 1e-10);
    }
}

TEST(FullHilbert, RungeKuttaAgreesWithEigendecomposition) {
    const auto central = CentralSpinParams::make(1.0, 1.9);
    const auto bath = random_bath(3, 99, 2.0, 2.0, true);
    const FullHilbertEvolver eig(central, bath, Propagation::eigendecomposition);
    const FullHilbertEvolver rk(central, bath, Propagation::runge_kutta);
    for (double t : {0.0, 0.7, 3.3}) {
        EXPECT_LT(trace_distance(eig.reduced_density(t), rk.reduced_density(t)), 1e-9) << t;
        EXPECT_NEAR(rk.state_at(t).norm(), 1.0, 1e-10);
    }
}

TEST(FullHilbert, NineSpinsUseRungeKutta) {
    const auto central = CentralSpinParams::make(1.0, 1.0);
    const auto bath = BathModel::homogeneous(9, 0.6, 0.2);
    const FullHilbertEvolver evolver(central, bath);
    EXPECT_EQ(evolver.method(), Propagation::runge_kutta);
    const double t = 0.8;
    const auto model = reduced_density_matrix(central, decoherence_factor(bath, t), t);
    EXPECT_LT(trace_distance(evolver.reduced_density(t), model), 1e-8);
}

TEST(FullHilbert, RejectsLargeBath) {
    const auto central = CentralSpinParams::make(1.0, 1.0);
    EXPECT_THROW(full_hilbert_reduced_density(central, BathModel::homogeneous(13, 1.0, 0.1), 0.1),
                 std::invalid_argument);
    EXPECT_THROW(full_hilbert_reduced_density(central, BathModel::homogeneous(2, 1.0, 0.1), -1.0),
                 std::invalid_argument);
}
