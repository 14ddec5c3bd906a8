#pragma once

#include <cstddef>
#include <stdexcept>

#include "centralspin/model.hpp"

namespace centralspin {

/// Sampling and refinement controls for the geometric-phase quadratures.
struct QuadratureSpec {
    std::size_t points_per_period = 64;  // samples per fastest oscillation period, >= 16
    double tolerance = 1e-10;            // absolute, radians
    int refinement_limit = 14;           // max step halvings

    /// Throws std::invalid_argument if points_per_period < 16 or tolerance <= 0.
    void validate() const;
};

struct GpResult {
    double phase = 0.0;            // radians, accumulated (not reduced mod 2 pi)
    double estimated_error = 0.0;  // radians
    std::size_t evaluations = 0;   // integrand evaluations
};

class GpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The bath holds a spin not prepared in an sx eigenstate, so F(t) is complex.
class UnsupportedBathState : public GpError {
public:
    using GpError::GpError;
};

/// Refinement limit reached before two successive estimates agreed to the tolerance.
class QuadratureNotConverged : public GpError {
public:
    using GpError::GpError;
};

/// The two eigenvalues of the reduced density matrix met on the grid, so the eigenvector
/// branch cannot be followed.
class DegenerateBranch : public GpError {
public:
    using GpError::GpError;
};

/// cos^2(theta_+) for tan(theta_+) = tan(theta0/2)/f, written in the form
/// f^2 cos^2(theta0/2) / (f^2 cos^2(theta0/2) + sin^2(theta0/2)), which is finite at f = 0.
double theta_plus_cos2(double theta0, double f);

/// pi (1 + cos theta0)
double unitary_gp(double theta0);

/// Sign of the lambda^2 correction in the weak-coupling expansion. Fixed by comparing the
/// quadrature of gp_exact against the unitary phase at weak coupling: the exact phase always
/// lies below the unitary one because |F| <= 1 only shrinks cos^2(theta_+).
inline constexpr double kPerturbativeSign = -1.0;

/// Omega * integral_0^{cycles tau} cos^2(theta_+(t)) dt, tau = 2 pi / Omega, by composite
/// Simpson on a grid resolving the fastest of Omega and the dressed bath frequencies.
///
/// Throws UnsupportedBathState if any bath spin is not an sx eigenstate,
/// QuadratureNotConverged if refinement stalls, std::invalid_argument if cycles == 0.
GpResult gp_exact(const CentralSpinParams& central, const BathModel& bath, std::size_t cycles = 1,
                  const QuadratureSpec& spec = {});

/// Mixed-state kinematic phase
///
///   arg{ sum_k sqrt(e_k(0) e_k(T)) <k(0)|k(T)> exp(-integral <k|d_t k> dt) },  T = cycles tau,
///
/// evaluated by diagonalising the reduced density matrix on a grid. Only the upper eigenvalue
/// branch contributes (the lower one starts at zero weight). The eigenvector gauge keeps its |0>
/// component equal to a nonnegative number times e^{-i Omega t}; the connection integral uses
/// the trapezoid rule with Richardson refinement. The result is unwrapped: principal argument
/// of the endpoint overlap plus the accumulated connection phase.
///
/// Throws as gp_exact, and DegenerateBranch if the two eigenvalues coincide on the grid.
GpResult gp_kinematic(const CentralSpinParams& central, const BathModel& bath, std::size_t cycles = 1,
                      const QuadratureSpec& spec = {});

/// Weak-coupling expansion for a homogeneous bath of n spins (frequency omega, coupling lambda):
///
///   pi(1 + cos theta0) + sign * n (lambda/omega)^2 sin^2(theta0) [pi - Omega/(4 omega) sin(4 pi omega/Omega)].
///
/// `sign` exists so validation can inject the wrong value; callers use the default.
double gp_perturbative(const CentralSpinParams& central, std::size_t n, double omega, double lambda,
                       double sign = kPerturbativeSign);

/// gp_exact(cycles = 1) - unitary_gp(theta0).
double gp_deviation(const CentralSpinParams& central, const BathModel& bath, const QuadratureSpec& spec = {});

/// gp_perturbative - unitary_gp(theta0).
double gp_perturbative_deviation(const CentralSpinParams& central, std::size_t n, double omega, double lambda,
                                 double sign = kPerturbativeSign);

}  // namespace centralspin
