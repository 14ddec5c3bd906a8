#include "centralspin/geometric_phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace centralspin {

void QuadratureSpec::validate() const {
    if (points_per_period < 16) throw std::invalid_argument("points_per_period must be >= 16");
    if (!(tolerance > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (refinement_limit < 1) throw std::invalid_argument("refinement_limit must be >= 1");
}

double theta_plus_cos2(double theta0, double f) {
    const double c = std::cos(0.5 * theta0);
    const double s = std::sin(0.5 * theta0);
    const double num = f * f * c * c;
    const double den = num + s * s;
    // den == 0 only for theta0 = 0 and f = 0, where the f -> 0 limit along theta0 = 0 is 1.
    return den > 0.0 ? num / den : 1.0;
}

double unitary_gp(double theta0) { return std::numbers::pi * (1.0 + std::cos(theta0)); }

namespace {

struct Grid {
    double length = 0.0;
    std::size_t intervals = 0;  // even
};

void check_preconditions(const BathModel& bath, std::size_t cycles, const QuadratureSpec& spec) {
    spec.validate();
    if (cycles == 0) throw std::invalid_argument("cycles must be >= 1");
    if (!bath.all_sigma_x_eigenstates()) {
        throw UnsupportedBathState(
            "geometric phase requires every bath spin to start in an sx eigenstate (real decoherence factor)");
    }
}

// Initial grid: step at most (pi / max(dressed frequencies, Omega)) / points_per_period.
Grid initial_grid(const CentralSpinParams& central, const BathModel& bath, std::size_t cycles,
                  const QuadratureSpec& spec) {
    const double length = static_cast<double>(cycles) * central.period();
    const double fastest = std::max(bath.max_dressed_frequency(), central.omega);
    const double max_step = std::numbers::pi / fastest / static_cast<double>(spec.points_per_period);
    auto n = static_cast<std::size_t>(std::ceil(length / max_step));
    n += n % 2;
    return {length, std::max<std::size_t>(n, 2)};
}

[[noreturn]] void not_converged(const char* what, double diff, const QuadratureSpec& spec) {
    throw QuadratureNotConverged(std::string(what) + ": no convergence after " +
                                 std::to_string(spec.refinement_limit) + " halvings (last change " +
                                 std::to_string(diff) + ", tolerance " + std::to_string(spec.tolerance) + ")");
}

}  // namespace

GpResult gp_exact(const CentralSpinParams& central, const BathModel& bath, std::size_t cycles,
                  const QuadratureSpec& spec) {
    check_preconditions(bath, cycles, spec);
    const auto grid = initial_grid(central, bath, cycles, spec);
    const double theta0 = central.theta0;
    auto integrand = [&](double t) { return theta_plus_cos2(theta0, decoherence_factor(bath, t)); };

    // Composite Simpson. Nodes are split into endpoints, even interior and odd interior so each
    // halving only evaluates the new midpoints.
    std::size_t n = grid.intervals;
    double h = grid.length / static_cast<double>(n);
    const double ends = integrand(0.0) + integrand(grid.length);
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t k = 1; k < n; ++k) (k % 2 ? odd : even) += integrand(static_cast<double>(k) * h);
    std::size_t evaluations = n + 1;
    double estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);

    double diff = 0.0;
    for (int level = 0; level < spec.refinement_limit; ++level) {
        even += odd;
        odd = 0.0;
        h *= 0.5;
        for (std::size_t k = 0; k < n; ++k) odd += integrand((2.0 * static_cast<double>(k) + 1.0) * h);
        evaluations += n;
        n *= 2;
        const double refined = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        diff = std::abs(refined - estimate) * central.omega;
        estimate = refined;
        if (diff < spec.tolerance) return {central.omega * estimate, diff, evaluations};
    }
    not_converged("gp_exact", diff, spec);
}

namespace {

// Upper-branch eigenvector (e^{-i Omega t} a, b), a >= 0, on one grid point.
struct BranchPoint {
    double weight = 0.0;  // upper eigenvalue
    double a = 0.0;
    Complex b{};
};

BranchPoint upper_branch(const CentralSpinParams& central, const BathModel& bath, double t) {
    const auto rho = reduced_density_matrix(central, decoherence_factor(bath, t), t);
    const auto eig = hermitian_eigen(rho);
    if (eig.upper - eig.lower < 1e-12) {
        throw DegenerateBranch("reduced density matrix eigenvalues cross at t = " + std::to_string(t));
    }
    const Complex v0 = eig.upper_vector[0];
    const Complex v1 = eig.upper_vector[1];
    Complex gauge;
    if (std::abs(v0) > 1e-14) {
        gauge = std::polar(1.0, -central.omega * t) * std::conj(v0) / std::abs(v0);
    } else {
        gauge = std::conj(v1) / std::abs(v1);
    }
    // After the gauge the |0> component is |v0| e^{-i Omega t}; strip the explicit phase.
    return {eig.upper, std::abs(v0), v1 * gauge};
}

struct KinematicSample {
    double connection = 0.0;  // trapezoid sum of Omega a^2 - Im(conj(b) b')
    Complex overlap{};        // sqrt(e(0) e(T)) <psi(0)|psi(T)>
};

KinematicSample kinematic_on_grid(const CentralSpinParams& central, const BathModel& bath, double length,
                                  std::size_t n) {
    const double h = length / static_cast<double>(n);
    std::vector<BranchPoint> pts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) pts[k] = upper_branch(central, bath, static_cast<double>(k) * h);
    // The a >= 0 gauge jumps by -1 when the branch crosses the |1> pole (F changing sign with
    // a < 1/2). Undo the jump so the vector is continuous along the path.
    const Complex step_phase = std::polar(1.0, -central.omega * h);
    for (std::size_t k = 1; k <= n; ++k) {
        const Complex link = pts[k - 1].a * pts[k].a * step_phase + std::conj(pts[k - 1].b) * pts[k].b;
        if (link.real() < 0.0) {
            pts[k].a = -pts[k].a;
            pts[k].b = -pts[k].b;
        }
    }

    auto rate = [&](std::size_t k) {
        // b' by central differences, one-sided second order at the ends.
        Complex db;
        if (k == 0) {
            db = (-3.0 * pts[0].b + 4.0 * pts[1].b - pts[2].b) / (2.0 * h);
        } else if (k == n) {
            db = (3.0 * pts[n].b - 4.0 * pts[n - 1].b + pts[n - 2].b) / (2.0 * h);
        } else {
            db = (pts[k + 1].b - pts[k - 1].b) / (2.0 * h);
        }
        return central.omega * pts[k].a * pts[k].a - (std::conj(pts[k].b) * db).imag();
    };

    double sum = 0.5 * (rate(0) + rate(n));
    for (std::size_t k = 1; k < n; ++k) sum += rate(k);

    const auto& first = pts.front();
    const auto& last = pts.back();
    const Complex overlap =
        first.a * last.a * std::polar(1.0, -central.omega * length) + std::conj(first.b) * last.b;
    return {sum * h, std::sqrt(first.weight * last.weight) * overlap};
}

}  // namespace

GpResult gp_kinematic(const CentralSpinParams& central, const BathModel& bath, std::size_t cycles,
                      const QuadratureSpec& spec) {
    check_preconditions(bath, cycles, spec);
    const auto grid = initial_grid(central, bath, cycles, spec);

    std::size_t n = grid.intervals;
    auto coarse = kinematic_on_grid(central, bath, grid.length, n);
    std::size_t evaluations = n + 1;
    double previous = std::numeric_limits<double>::quiet_NaN();
    double diff = std::numeric_limits<double>::infinity();
    for (int level = 0; level < spec.refinement_limit; ++level) {
        n *= 2;
        const auto fine = kinematic_on_grid(central, bath, grid.length, n);
        evaluations += n + 1;
        const double extrapolated = fine.connection + (fine.connection - coarse.connection) / 3.0;
        if (!std::isnan(previous)) {
            diff = std::abs(extrapolated - previous);
            if (diff < spec.tolerance) return {std::arg(fine.overlap) + extrapolated, diff, evaluations};
        }
        previous = extrapolated;
        coarse = fine;
    }
    not_converged("gp_kinematic", diff, spec);
}

double gp_perturbative(const CentralSpinParams& central, std::size_t n, double omega, double lambda, double sign) {
    if (!(omega > 0.0)) throw std::invalid_argument("perturbative phase needs a positive bath frequency");
    const double ratio = lambda / omega;
    const double s = std::sin(central.theta0);
    const double bracket =
        std::numbers::pi - central.omega / (4.0 * omega) * std::sin(4.0 * std::numbers::pi * omega / central.omega);
    return unitary_gp(central.theta0) + sign * static_cast<double>(n) * ratio * ratio * s * s * bracket;
}

double gp_deviation(const CentralSpinParams& central, const BathModel& bath, const QuadratureSpec& spec) {
    return gp_exact(central, bath, 1, spec).phase - unitary_gp(central.theta0);
}

double gp_perturbative_deviation(const CentralSpinParams& central, std::size_t n, double omega, double lambda,
                                 double sign) {
    return gp_perturbative(central, n, omega, lambda, sign) - unitary_gp(central.theta0);
}

}  // namespace centralspin
