#pragma once

#include <array>
#include <complex>

namespace centralspin {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major. Used for single-spin propagators and the
/// reduced density matrix of the central spin.
class ComplexMatrix2 {
public:
    constexpr ComplexMatrix2() = default;
    constexpr ComplexMatrix2(Complex a00, Complex a01, Complex a10, Complex a11)
        : m_{a00, a01, a10, a11} {}

    static constexpr ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr ComplexMatrix2 zero() { return {}; }
    static ComplexMatrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static ComplexMatrix2 pauli_y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
    static ComplexMatrix2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

    Complex& operator()(int row, int col) { return m_[2 * row + col]; }
    const Complex& operator()(int row, int col) const { return m_[2 * row + col]; }

    ComplexMatrix2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }
    Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    /// Largest absolute entry.
    double max_abs() const;

    ComplexMatrix2& operator+=(const ComplexMatrix2& rhs);
    ComplexMatrix2& operator-=(const ComplexMatrix2& rhs);
    ComplexMatrix2& operator*=(Complex s);

    friend ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b) { return a += b; }
    friend ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b) { return a -= b; }
    friend ComplexMatrix2 operator*(ComplexMatrix2 a, Complex s) { return a *= s; }
    friend ComplexMatrix2 operator*(Complex s, ComplexMatrix2 a) { return a *= s; }
    friend ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);

    /// Matrix-vector product on a two-component spinor.
    std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const;

private:
    std::array<Complex, 4> m_{};
};

/// Eigen-decomposition of a Hermitian 2x2 matrix. `upper` is the larger
/// eigenvalue; vectors are normalized, phase unspecified.
struct HermitianEigen2 {
    double lower = 0.0;
    double upper = 0.0;
    std::array<Complex, 2> lower_vector{};
    std::array<Complex, 2> upper_vector{};
};

HermitianEigen2 hermitian_eigen(const ComplexMatrix2& m);

/// max |m - m^dagger|
double hermiticity_defect(const ComplexMatrix2& m);

/// max |U^dagger U - I|
double unitarity_defect(const ComplexMatrix2& u);

/// Trace distance 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const ComplexMatrix2& a, const ComplexMatrix2& b);

}  // namespace centralspin
