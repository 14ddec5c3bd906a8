#include "centralspin/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace centralspin::oracle {

double PauliGenerator::norm() const { return std::sqrt(cx * cx + cy * cy + cz * cz); }

ComplexMatrix2 PauliGenerator::matrix() const {
    return {Complex(c0 + cz, 0.0), Complex(cx, -cy), Complex(cx, cy), Complex(c0 - cz, 0.0)};
}

ComplexMatrix2 pauli_exponential(const PauliGenerator& g, double t) {
    const Complex global = std::polar(1.0, -g.c0 * t);
    const double r = g.norm();
    if (r == 0.0) return ComplexMatrix2::identity() * global;

    const double c = std::cos(r * t);
    const double s = std::sin(r * t) / r;
    // cos(rt) I - i sin(rt)/r (cx sx + cy sy + cz sz)
    const Complex minus_i(0.0, -1.0);
    const ComplexMatrix2 u{Complex(c, 0.0) + minus_i * s * g.cz, minus_i * s * Complex(g.cx, -g.cy),
                           minus_i * s * Complex(g.cx, g.cy), Complex(c, 0.0) - minus_i * s * g.cz};
    return u * global;
}

ComplexMatrix2 series_exponential(const PauliGenerator& g, double t) {
    ComplexMatrix2 a = g.matrix() * Complex(0.0, -t);

    // Scale until ||A|| <= 1/2, sum 24 Taylor terms, square back up.
    int squarings = 0;
    const double size = 2.0 * a.max_abs();
    if (size > 0.5) squarings = static_cast<int>(std::ceil(std::log2(size / 0.5)));
    a *= Complex(std::ldexp(1.0, -squarings), 0.0);

    ComplexMatrix2 sum = ComplexMatrix2::identity();
    ComplexMatrix2 term = ComplexMatrix2::identity();
    for (int k = 1; k <= 24; ++k) {
        term = term * a;
        term *= Complex(1.0 / k, 0.0);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

Complex single_spin_factor_exact(const BathSpinParams& spin, double t) {
    const auto forward = pauli_exponential({0.0, spin.omega, 0.0, spin.lambda}, t);
    const auto backward = pauli_exponential({0.0, spin.omega, 0.0, -spin.lambda}, t);
    const auto m = backward.adjoint() * forward;
    const auto v = m.apply({spin.amp0, spin.amp1});
    return std::conj(spin.amp0) * v[0] + std::conj(spin.amp1) * v[1];
}

Complex decoherence_factor_exact(const BathModel& bath, double t) {
    Complex f{1.0, 0.0};
    for (const auto& s : bath.spins()) f *= single_spin_factor_exact(s, t);
    return f;
}

// ---------------------------------------------------------------------------
// Full tensor-product simulation

namespace {

void check_bath_size(std::size_t n) {
    if (n > kMaxFullHilbertBath) {
        throw std::invalid_argument("full Hilbert evolution limited to N <= " + std::to_string(kMaxFullHilbertBath) +
                                    ", got N = " + std::to_string(n));
    }
}

double sz_sign(std::size_t index, std::size_t bit) { return ((index >> bit) & 1U) ? -1.0 : 1.0; }

// Diagonal of H in the product basis: (Omega/2) sz_c + sz_c sum_i lambda_i sz_i.
std::vector<double> diagonal_energies(const CentralSpinParams& central, const BathModel& bath) {
    const std::size_t n = bath.size();
    const std::size_t dim = std::size_t{1} << (n + 1);
    std::vector<double> diag(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double sc = sz_sign(k, n);
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += bath[i].lambda * sz_sign(k, n - 1 - i);
        diag[k] = 0.5 * central.omega * sc + sc * v;
    }
    return diag;
}

double hamiltonian_norm_bound(const CentralSpinParams& central, const BathModel& bath) {
    double b = 0.5 * central.omega;
    for (const auto& s : bath.spins()) b += s.omega + s.lambda;
    return b;
}

}  // namespace

StateVector::StateVector(std::size_t bath_size, std::vector<Complex> amplitudes)
    : bath_size_(bath_size), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << (bath_size_ + 1))) {
        throw std::invalid_argument("state vector dimension does not match 2^(N+1)");
    }
}

StateVector StateVector::product_state(const CentralSpinParams& central, const BathModel& bath) {
    const std::size_t n = bath.size();
    check_bath_size(n);
    const std::size_t dim = std::size_t{1} << (n + 1);
    std::vector<Complex> amps(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Complex a = ((k >> n) & 1U) ? central.beta() : central.alpha();
        for (std::size_t i = 0; i < n; ++i) a *= ((k >> (n - 1 - i)) & 1U) ? bath[i].amp1 : bath[i].amp0;
        amps[k] = a;
    }
    return StateVector(n, std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& z : amplitudes_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix2 StateVector::reduced_central() const {
    const std::size_t half = std::size_t{1} << bath_size_;
    ComplexMatrix2 rho = ComplexMatrix2::zero();
    for (std::size_t b = 0; b < half; ++b) {
        const Complex up = amplitudes_[b];
        const Complex down = amplitudes_[half + b];
        rho(0, 0) += up * std::conj(up);
        rho(0, 1) += up * std::conj(down);
        rho(1, 0) += down * std::conj(up);
        rho(1, 1) += down * std::conj(down);
    }
    return rho;
}

void apply_hamiltonian(const CentralSpinParams& central, const BathModel& bath, const std::vector<Complex>& in,
                       std::vector<Complex>& out) {
    const std::size_t n = bath.size();
    const std::size_t dim = std::size_t{1} << (n + 1);
    if (in.size() != dim) throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
    out.assign(dim, Complex{});
    for (std::size_t k = 0; k < dim; ++k) {
        const double sc = sz_sign(k, n);
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += bath[i].lambda * sz_sign(k, n - 1 - i);
        Complex acc = (0.5 * central.omega * sc + sc * v) * in[k];
        for (std::size_t i = 0; i < n; ++i) acc += bath[i].omega * in[k ^ (std::size_t{1} << (n - 1 - i))];
        out[k] = acc;
    }
}

struct FullHilbertEvolver::Spectrum {
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
    Eigen::VectorXcd initial_coefficients;  // V^T psi(0)
};

FullHilbertEvolver::FullHilbertEvolver(const CentralSpinParams& central, const BathModel& bath, Propagation method)
    : central_(central), bath_(bath), method_(method) {
    const std::size_t n = bath.size();
    check_bath_size(n);
    if (method_ == Propagation::automatic) {
        method_ = n <= kMaxEigenBath ? Propagation::eigendecomposition : Propagation::runge_kutta;
    }
    if (method_ != Propagation::eigendecomposition) return;

    // H has only sx and sz terms, so it is real symmetric in the product basis.
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << (n + 1));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const auto diag = diagonal_energies(central, bath);
    for (Eigen::Index k = 0; k < dim; ++k) {
        h(k, k) = diag[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<Eigen::Index>(static_cast<std::size_t>(k) ^ (std::size_t{1} << (n - 1 - i)));
            h(k, j) += bath[i].omega;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("full Hilbert eigendecomposition failed");

    const auto psi0 = StateVector::product_state(central, bath);
    Eigen::VectorXcd v0(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v0(k) = psi0.amplitudes()[static_cast<std::size_t>(k)];

    spectrum_ = std::make_unique<Spectrum>();
    spectrum_->energies = solver.eigenvalues();
    spectrum_->vectors = solver.eigenvectors();
    spectrum_->initial_coefficients = spectrum_->vectors.transpose().cast<Complex>() * v0;
}

FullHilbertEvolver::~FullHilbertEvolver() = default;
FullHilbertEvolver::FullHilbertEvolver(FullHilbertEvolver&&) noexcept = default;
FullHilbertEvolver& FullHilbertEvolver::operator=(FullHilbertEvolver&&) noexcept = default;

StateVector FullHilbertEvolver::state_at(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
    if (method_ == Propagation::runge_kutta) return runge_kutta(t);

    const auto& sp = *spectrum_;
    Eigen::VectorXcd c = sp.initial_coefficients;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -sp.energies(k) * t);
    const Eigen::VectorXcd psi = sp.vectors.cast<Complex>() * c;
    return StateVector(bath_.size(), std::vector<Complex>(psi.data(), psi.data() + psi.size()));
}

StateVector FullHilbertEvolver::runge_kutta(double t) const {
    auto psi = StateVector::product_state(central_, bath_).amplitudes();
    if (t == 0.0) return StateVector(bath_.size(), std::move(psi));

    // Classical RK4 on d psi/dt = -i H psi. With h ||H|| <= 5e-3 the per-step amplification
    // error (h||H||)^6/144 stays below 1e-16.
    const double bound = hamiltonian_norm_bound(central_, bath_);
    const auto steps = static_cast<std::size_t>(std::ceil(t * bound / 5e-3));
    const double h = t / static_cast<double>(steps);
    const Complex mih(0.0, -h);

    const std::size_t dim = psi.size();
    std::vector<Complex> k1, k2, k3, k4, tmp(dim);
    for (std::size_t s = 0; s < steps; ++s) {
        apply_hamiltonian(central_, bath_, psi, k1);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + 0.5 * mih * k1[k];
        apply_hamiltonian(central_, bath_, tmp, k2);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + 0.5 * mih * k2[k];
        apply_hamiltonian(central_, bath_, tmp, k3);
        for (std::size_t k = 0; k < dim; ++k) tmp[k] = psi[k] + mih * k3[k];
        apply_hamiltonian(central_, bath_, tmp, k4);
        for (std::size_t k = 0; k < dim; ++k) {
            psi[k] += mih / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
    }
    return StateVector(bath_.size(), std::move(psi));
}

ComplexMatrix2 full_hilbert_reduced_density(const CentralSpinParams& central, const BathModel& bath, double t) {
    check_bath_size(bath.size());
    if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
    return FullHilbertEvolver(central, bath).reduced_density(t);
}

}  // namespace centralspin::oracle
