#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "centralspin/matrix2.hpp"
#include "centralspin/model.hpp"

// Brute-force ground truth for the closed forms in model.hpp. Nothing here reuses the
// closed-form decoherence factor or density matrix.

namespace centralspin::oracle {

/// c0 I + cx sx + cy sy + cz sz
struct PauliGenerator {
    double c0 = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double cz = 0.0;

    double norm() const;
    ComplexMatrix2 matrix() const;
};

/// exp(-i g t) from the closed Pauli formula
///   e^{-i c0 t} [cos(r t) I - i sin(r t) (c . sigma)/r],  r = |c|.
ComplexMatrix2 pauli_exponential(const PauliGenerator& g, double t);

/// exp(-i g t) by scaling and squaring of a truncated Taylor series. Independent second path
/// for pauli_exponential; not used in production code.
ComplexMatrix2 series_exponential(const PauliGenerator& g, double t);

/// <chi| e^{+i(w sx - l sz)t} e^{-i(w sx + l sz)t} |chi>
Complex single_spin_factor_exact(const BathSpinParams& spin, double t);

/// Product of single_spin_factor_exact over the bath.
Complex decoherence_factor_exact(const BathModel& bath, double t);

/// Largest bath for full tensor-product evolution.
inline constexpr std::size_t kMaxFullHilbertBath = 12;
/// Largest bath for which the dense eigendecomposition path is used by default.
inline constexpr std::size_t kMaxEigenBath = 8;

/// Amplitudes over the 2^(N+1) product basis. The central qubit is the most significant bit;
/// bath spin i (0-based) occupies bit N-1-i. Bit value 0 is the sz = +1 state |0>.
class StateVector {
public:
    StateVector(std::size_t bath_size, std::vector<Complex> amplitudes);

    /// (cos(theta0/2)|0> + sin(theta0/2)|1>) (x) prod_i (amp0_i|0> + amp1_i|1>)
    static StateVector product_state(const CentralSpinParams& central, const BathModel& bath);

    std::size_t bath_size() const { return bath_size_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    double norm() const;

    /// Partial trace over all bath bits.
    ComplexMatrix2 reduced_central() const;

private:
    std::size_t bath_size_;
    std::vector<Complex> amplitudes_;
};

/// out = H in, for H = (Omega/2) sz_c + sum_i omega_i sx_i + sz_c (x) sum_i lambda_i sz_i.
void apply_hamiltonian(const CentralSpinParams& central, const BathModel& bath, const std::vector<Complex>& in,
                       std::vector<Complex>& out);

enum class Propagation { automatic, eigendecomposition, runge_kutta };

/// Evolves the product initial state in the full Hilbert space. Construction diagonalises H
/// once (eigendecomposition path) so repeated queries at many times are cheap.
class FullHilbertEvolver {
public:
    /// Throws std::invalid_argument if N > kMaxFullHilbertBath.
    FullHilbertEvolver(const CentralSpinParams& central, const BathModel& bath,
                       Propagation method = Propagation::automatic);
    ~FullHilbertEvolver();
    FullHilbertEvolver(FullHilbertEvolver&&) noexcept;
    FullHilbertEvolver& operator=(FullHilbertEvolver&&) noexcept;

    StateVector state_at(double t) const;
    ComplexMatrix2 reduced_density(double t) const { return state_at(t).reduced_central(); }
    Propagation method() const { return method_; }

private:
    struct Spectrum;
    CentralSpinParams central_;
    BathModel bath_;
    Propagation method_;
    std::unique_ptr<Spectrum> spectrum_;

    StateVector runge_kutta(double t) const;
};

/// Reduced density matrix of the central spin from full tensor-product evolution.
/// Throws std::invalid_argument for N > 12 or t < 0.
ComplexMatrix2 full_hilbert_reduced_density(const CentralSpinParams& central, const BathModel& bath, double t);

}  // namespace centralspin::oracle
