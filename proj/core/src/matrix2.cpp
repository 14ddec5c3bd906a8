#include "centralspin/matrix2.hpp"

#include <algorithm>
#include <cmath>

namespace centralspin {

ComplexMatrix2 ComplexMatrix2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double ComplexMatrix2::max_abs() const {
    double r = 0.0;
    for (const auto& z : m_) r = std::max(r, std::abs(z));
    return r;
}

ComplexMatrix2& ComplexMatrix2::operator+=(const ComplexMatrix2& rhs) {
    for (int i = 0; i < 4; ++i) m_[i] += rhs.m_[i];
    return *this;
}

ComplexMatrix2& ComplexMatrix2::operator-=(const ComplexMatrix2& rhs) {
    for (int i = 0; i < 4; ++i) m_[i] -= rhs.m_[i];
    return *this;
}

ComplexMatrix2& ComplexMatrix2::operator*=(Complex s) {
    for (auto& z : m_) z *= s;
    return *this;
}

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

std::array<Complex, 2> ComplexMatrix2::apply(const std::array<Complex, 2>& v) const {
    return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
}

namespace {

std::array<Complex, 2> normalized(Complex x, Complex y) {
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    return {x / n, y / n};
}

}  // namespace

HermitianEigen2 hermitian_eigen(const ComplexMatrix2& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    // Average the two off-diagonal entries so tiny Hermiticity defects do not bias the result.
    const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));

    const double mean = 0.5 * (a + d);
    const double half = std::hypot(0.5 * (a - d), std::abs(b));

    HermitianEigen2 e;
    e.upper = mean + half;
    e.lower = mean - half;
    if (half == 0.0) {
        e.upper_vector = {1.0, 0.0};
        e.lower_vector = {0.0, 1.0};
        return e;
    }

    // (b, upper - a) and (upper - d, b*) both span the upper eigenspace; take the better conditioned one.
    const Complex u1x = b, u1y = e.upper - a;
    const Complex u2x = e.upper - d, u2y = std::conj(b);
    if (std::norm(u1x) + std::norm(u1y) >= std::norm(u2x) + std::norm(u2y)) {
        e.upper_vector = normalized(u1x, u1y);
    } else {
        e.upper_vector = normalized(u2x, u2y);
    }
    // Orthogonal complement.
    e.lower_vector = {-std::conj(e.upper_vector[1]), std::conj(e.upper_vector[0])};
    return e;
}

double hermiticity_defect(const ComplexMatrix2& m) { return (m - m.adjoint()).max_abs(); }

double unitarity_defect(const ComplexMatrix2& u) {
    return (u.adjoint() * u - ComplexMatrix2::identity()).max_abs();
}

double trace_distance(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    const auto e = hermitian_eigen(a - b);
    return 0.5 * (std::abs(e.upper) + std::abs(e.lower));
}

}  // namespace centralspin
