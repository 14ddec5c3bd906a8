#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "centralspin/matrix2.hpp"

// Central spin-1/2 coupled to N independent bath spins:
//
//   H = (Omega/2) sz_c + sum_i omega_i sx_i + sz_c (x) sum_i lambda_i sz_i,   hbar = 1.
//
// The central spin starts in cos(theta0/2)|0> + sin(theta0/2)|1>, the bath in a
// pure product state. Everything in this header is closed form.

namespace centralspin {

/// Central qubit: self-frequency and initial polar Bloch angle.
struct CentralSpinParams {
    double omega = 1.0;
    double theta0 = 0.0;

    /// Throws std::invalid_argument unless omega > 0 and 0 <= theta0 <= pi.
    static CentralSpinParams make(double omega, double theta0);

    double alpha() const;   // cos(theta0/2)
    double beta() const;    // sin(theta0/2)
    double period() const;  // 2 pi / omega
};

/// One bath spin: self-frequency, coupling and initial state amplitudes in the sz basis.
struct BathSpinParams {
    double omega = 1.0;
    double lambda = 0.0;
    Complex amp0{1.0 / std::numbers::sqrt2, 0.0};
    Complex amp1{1.0 / std::numbers::sqrt2, 0.0};

    /// Spin initialised in the +1 eigenstate of sx.
    static BathSpinParams make(double omega, double lambda);
    /// Throws std::invalid_argument on negative frequencies/couplings or a non-normalised state.
    static BathSpinParams make(double omega, double lambda, Complex amp0, Complex amp1);

    /// True if the initial state is an sx eigenstate (up to global phase), within `tol`.
    bool is_sigma_x_eigenstate(double tol = 1e-12) const;
};

/// Ordered collection of bath spins, N >= 1.
class BathModel {
public:
    explicit BathModel(std::vector<BathSpinParams> spins);

    /// N identical spins sharing one initial state (sx eigenstate by default).
    static BathModel homogeneous(std::size_t n, double omega, double lambda);
    static BathModel homogeneous(std::size_t n, double omega, double lambda, Complex amp0, Complex amp1);

    std::size_t size() const { return spins_.size(); }
    std::span<const BathSpinParams> spins() const { return spins_; }
    const BathSpinParams& operator[](std::size_t i) const { return spins_[i]; }

    bool is_homogeneous() const;
    bool all_sigma_x_eigenstates() const;
    double max_dressed_frequency() const;

    /// N (lambda/omega)^2, meaningful for homogeneous baths.
    double effective_coupling_squared() const;

private:
    std::vector<BathSpinParams> spins_;
};

/// sqrt(omega_i^2 + lambda_i^2)
double dressed_frequency(const BathSpinParams& spin);

/// 1 - 2 lambda^2/(omega^2 + lambda^2) sin^2(sqrt(omega^2 + lambda^2) t). Equal to 1 for a
/// degenerate spin (omega = lambda = 0).
double single_spin_factor(const BathSpinParams& spin, double t);

/// Closed-form decoherence factor, the product of single_spin_factor over the bath.
double decoherence_factor(const BathModel& bath, double t);

struct TimeAverage {
    double mean = 0.0;
    double dispersion = 0.0;  // sqrt of the empirical variance
};

/// Mean and standard deviation of F(t) over `samples` equally spaced (midpoint) times in
/// [0, horizon]. Throws std::invalid_argument if horizon <= 0 or samples < 2.
TimeAverage mean_time_averaged_factor(const BathModel& bath, double horizon, std::size_t samples);

/// Reduced density matrix of the central spin,
///
///   [[ a^2,                       a b f e^{-i Omega t} ],
///    [ a b conj(f) e^{+i Omega t}, b^2                 ]],
///
/// a = cos(theta0/2), b = sin(theta0/2). Throws std::invalid_argument if |f| > 1 + 1e-12.
ComplexMatrix2 reduced_density_matrix(const CentralSpinParams& central, Complex f, double t);

}  // namespace centralspin
