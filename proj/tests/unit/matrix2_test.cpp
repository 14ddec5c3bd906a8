#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "centralspin/matrix2.hpp"

using namespace centralspin;

TEST(ComplexMatrix2, PauliAlgebra) {
    const auto x = ComplexMatrix2::pauli_x();
    const auto y = ComplexMatrix2::pauli_y();
    const auto z = ComplexMatrix2::pauli_z();
    // sx sy = i sz
    EXPECT_LT((x * y - Complex(0, 1) * z).max_abs(), 1e-15);
    EXPECT_LT((x * x - ComplexMatrix2::identity()).max_abs(), 1e-15);
    EXPECT_DOUBLE_EQ(unitarity_defect(y), 0.0);
    EXPECT_DOUBLE_EQ(hermiticity_defect(y), 0.0);
}

TEST(ComplexMatrix2, HermitianEigenKnownMatrix) {
    // [[2, 1-i], [1+i, 3]] has eigenvalues 1 and 4.
    const ComplexMatrix2 m{2.0, Complex(1, -1), Complex(1, 1), 3.0};
    const auto e = hermitian_eigen(m);
    EXPECT_NEAR(e.lower, 1.0, 1e-14);
    EXPECT_NEAR(e.upper, 4.0, 1e-14);
    const auto mv = m.apply(e.upper_vector);
    EXPECT_NEAR(std::abs(mv[0] - 4.0 * e.upper_vector[0]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(mv[1] - 4.0 * e.upper_vector[1]), 0.0, 1e-14);
    const auto lv = m.apply(e.lower_vector);
    EXPECT_NEAR(std::abs(lv[0] - e.lower_vector[0]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(lv[1] - e.lower_vector[1]), 0.0, 1e-14);
}

TEST(ComplexMatrix2, HermitianEigenRandomResidual) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(gen), d = u(gen);
        const Complex b(u(gen), u(gen));
        const ComplexMatrix2 m{a, b, std::conj(b), d};
        const auto e = hermitian_eigen(m);
        EXPECT_NEAR(e.upper + e.lower, a + d, 1e-13);
        const auto mv = m.apply(e.upper_vector);
        EXPECT_LT(std::abs(mv[0] - e.upper * e.upper_vector[0]) + std::abs(mv[1] - e.upper * e.upper_vector[1]),
                  1e-13);
    }
}

TEST(ComplexMatrix2, TraceDistance) {
    const ComplexMatrix2 up{1.0, 0.0, 0.0, 0.0};
    const ComplexMatrix2 down{0.0, 0.0, 0.0, 1.0};
    const ComplexMatrix2 mixed{0.5, 0.0, 0.0, 0.5};
    EXPECT_NEAR(trace_distance(up, down), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(up, mixed), 0.5, 1e-15);
    EXPECT_NEAR(trace_distance(up, up), 0.0, 1e-15);
}
