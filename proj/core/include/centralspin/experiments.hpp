#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "centralspin/geometric_phase.hpp"
#include "centralspin/model.hpp"

// Parameter sweeps for the figure data sets. Every sweep is deterministic: cells are
// evaluated on a worker pool but rows are emitted in a fixed order.

namespace centralspin::experiments {

/// Sweep axes. The bath is homogeneous with omega = omega_ratio * central_omega and sx-eigenstate
/// initial states.
struct SweepGrid {
    std::vector<double> theta0_values;
    std::vector<double> lambda_values;
    std::vector<std::size_t> n_values;
    double omega_ratio = 1.0;
    double central_omega = 1.0;
    std::size_t cycles = 1;

    /// Throws std::invalid_argument on empty axes or out-of-range values.
    void validate() const;

    /// theta0 in [0, pi] (41 points), lambda in [0, 0.2] (51 points), N = 10.
    static SweepGrid figure1();
    /// theta0 in {0.1, 0.25, 0.5, 0.75} pi, lambda in [0, 0.2] (51 points), N = n.
    static SweepGrid exact_vs_perturbative(std::size_t n);
    /// theta0 = k pi / 40 for k = 1..39; (lambda, N) in {0.05, 0.1} x {10, 100}.
    static SweepGrid figure4();
};

struct SweepRecord {
    double theta0 = 0.0;
    double lambda = 0.0;
    std::size_t n = 0;
    std::size_t cycles = 1;
    double gp_exact = 0.0;
    double gp_perturbative = 0.0;
    double gp_unitary = 0.0;
    double deviation_exact = 0.0;
    double deviation_pert = 0.0;
    double quadrature_error = 0.0;
    bool disagreement = false;  // |gp_exact - gp_perturbative| > 5% of |gp_exact|
    bool failed = false;
    std::string error;
};

struct SweepTable {
    std::vector<SweepRecord> records;  // ordered by (n, theta0, lambda)
    bool has_disagreement_column = false;

    std::size_t failed_cells() const;
};

struct SweepOptions {
    QuadratureSpec quadrature{};
    std::size_t workers = 1;
};

/// Relative gap between exact and perturbative phases that trips the disagreement flag.
inline constexpr double kDisagreementThreshold = 0.05;

/// One cell: exact, perturbative and unitary phases for a homogeneous bath. Quadrature failures
/// are recorded in the record instead of thrown.
SweepRecord evaluate_cell(double theta0, double lambda, std::size_t n, const SweepGrid& grid,
                          const QuadratureSpec& spec);

/// Exact GP over the (theta0, lambda) plane.
SweepTable figure1_surface(const SweepGrid& grid, const SweepOptions& options = {});

/// Exact and perturbative GP per (theta0, lambda, N) with the disagreement flag.
SweepTable exact_vs_perturbative(const SweepGrid& grid, const SweepOptions& options = {});

/// Deviation of both phases from the unitary value along theta0 for each (lambda, N).
SweepTable deviation_vs_theta0(const SweepGrid& grid, const SweepOptions& options = {});

struct WindingRow {
    std::string label;
    std::size_t n = 0;
    double omega = 0.0;
    double lambda = 0.0;
    std::size_t m = 0;
    double gp_exact = 0.0;
    double ratio = 0.0;
    double quadrature_error = 0.0;
};

/// gp_exact(m cycles) / gp_exact(1 cycle) for m = 1..m_max. Throws std::invalid_argument if
/// m_max < 2; quadrature errors propagate.
std::vector<WindingRow> winding_ratio(const CentralSpinParams& central, const BathModel& bath, std::size_t m_max,
                                      const QuadratureSpec& spec = {}, std::string_view label = "");

/// Bath frequency near `omega_target` whose dressed period pi/sqrt(omega^2 + lambda^2) divides
/// 2 pi / central_omega exactly, so F(t) is periodic over one system cycle.
double commensurate_bath_frequency(double central_omega, double lambda, double omega_target);

/// Winding study: two commensurate cases with lambda_eff differing by 4x, plus one incommensurate case.
std::vector<WindingRow> figure5_winding(std::size_t m_max = 10, const SweepOptions& options = {});

struct DispersionRow {
    std::size_t n = 0;
    double mean = 0.0;
    double dispersion = 0.0;
};

/// Least-squares line y = intercept + slope x with residual RMS.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::vector<double> residuals;
};

struct DispersionStudy {
    std::vector<DispersionRow> rows;
    LinearFit log_log;  // log(dispersion) vs log(N)
    LinearFit log_lin;  // log(dispersion) vs N
    bool fit_valid = false;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Time-averaged mean and dispersion of F for homogeneous baths of each size.
DispersionStudy dispersion_vs_n(const std::vector<std::size_t>& n_values, double omega, double lambda,
                                double horizon, std::size_t samples, const SweepOptions& options = {});

// CSV emission. Floats use 17 significant digits, '.' separator, no locale dependence.

/// Throws std::logic_error if a record's gp_unitary differs from pi(1 + cos theta0) by more than 1e-12.
void write_sweep_csv(std::ostream& out, const SweepTable& table);
void write_winding_csv(std::ostream& out, const std::vector<WindingRow>& rows);
void write_dispersion_csv(std::ostream& out, const DispersionStudy& study);
void write_dispersion_fit(std::ostream& out, const DispersionStudy& study);

/// Gnuplot script that plots `csv_name` for the named experiment (fig1..fig5, dispersion).
std::string gnuplot_script(std::string_view experiment, std::string_view csv_name);

}  // namespace centralspin::experiments
