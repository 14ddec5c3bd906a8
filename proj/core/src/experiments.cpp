#include "centralspin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "centralspin/csv.hpp"

namespace centralspin::experiments {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) {
        v[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    if (count > 1) v.back() = hi;
    return v;
}

// Runs body(i) for i in [0, count) on `workers` threads. Each index is visited exactly once.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
}

struct Cell {
    double theta0;
    double lambda;
    std::size_t n;
};

std::vector<Cell> cells_of(const SweepGrid& grid) {
    std::vector<Cell> cells;
    cells.reserve(grid.n_values.size() * grid.theta0_values.size() * grid.lambda_values.size());
    for (auto n : grid.n_values)
        for (auto th : grid.theta0_values)
            for (auto l : grid.lambda_values) cells.push_back({th, l, n});
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return std::tie(a.n, a.theta0, a.lambda) < std::tie(b.n, b.theta0, b.lambda);
    });
    return cells;
}

SweepTable run_grid(const SweepGrid& grid, const SweepOptions& options, bool flag) {
    grid.validate();
    options.quadrature.validate();
    const auto cells = cells_of(grid);
    SweepTable table;
    table.has_disagreement_column = flag;
    table.records.resize(cells.size());
    parallel_for(cells.size(), options.workers, [&](std::size_t i) {
        table.records[i] = evaluate_cell(cells[i].theta0, cells[i].lambda, cells[i].n, grid, options.quadrature);
    });
    return table;
}

}  // namespace

void SweepGrid::validate() const {
    if (theta0_values.empty() || lambda_values.empty() || n_values.empty()) {
        throw std::invalid_argument("sweep grid axes must be non-empty");
    }
    for (double th : theta0_values) {
        if (!(th >= 0.0 && th <= kPi)) throw std::invalid_argument("sweep theta0 outside [0, pi]");
    }
    for (double l : lambda_values) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("sweep lambda must be >= 0");
    }
    for (auto n : n_values) {
        if (n == 0) throw std::invalid_argument("sweep bath size must be >= 1");
    }
    if (!(omega_ratio > 0.0)) throw std::invalid_argument("omega_ratio must be positive");
    if (!(central_omega > 0.0)) throw std::invalid_argument("central_omega must be positive");
    if (cycles == 0) throw std::invalid_argument("cycles must be >= 1");
}

SweepGrid SweepGrid::figure1() {
    SweepGrid g;
    g.theta0_values = linspace(0.0, kPi, 41);
    g.lambda_values = linspace(0.0, 0.2, 51);
    g.n_values = {10};
    return g;
}

SweepGrid SweepGrid::exact_vs_perturbative(std::size_t n) {
    SweepGrid g;
    g.theta0_values = {0.1 * kPi, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi};
    g.lambda_values = linspace(0.0, 0.2, 51);
    g.n_values = {n};
    return g;
}

SweepGrid SweepGrid::figure4() {
    SweepGrid g;
    for (int k = 1; k <= 39; ++k) g.theta0_values.push_back(k * kPi / 40.0);
    g.lambda_values = {0.05, 0.1};
    g.n_values = {10, 100};
    return g;
}

std::size_t SweepTable::failed_cells() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return r.failed; }));
}

SweepRecord evaluate_cell(double theta0, double lambda, std::size_t n, const SweepGrid& grid,
                          const QuadratureSpec& spec) {
    SweepRecord r;
    r.theta0 = theta0;
    r.lambda = lambda;
    r.n = n;
    r.cycles = grid.cycles;
    r.gp_unitary = unitary_gp(theta0);

    const double omega = grid.omega_ratio * grid.central_omega;
    const auto central = CentralSpinParams::make(grid.central_omega, theta0);
    // The expansion is per cycle; m cycles of a quasi-periodic path scale it by m.
    const double m = static_cast<double>(grid.cycles);
    r.gp_perturbative = m * gp_perturbative(central, n, omega, lambda);
    r.deviation_pert = r.gp_perturbative - m * r.gp_unitary;
    try {
        const auto res = gp_exact(central, BathModel::homogeneous(n, omega, lambda), grid.cycles, spec);
        r.gp_exact = res.phase;
        r.quadrature_error = res.estimated_error;
        r.deviation_exact = r.gp_exact - m * r.gp_unitary;
        r.disagreement = std::abs(r.gp_exact - r.gp_perturbative) > kDisagreementThreshold * std::abs(r.gp_exact);
    } catch (const GpError& e) {
        r.failed = true;
        r.error = e.what();
        r.gp_exact = r.deviation_exact = r.quadrature_error = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

SweepTable figure1_surface(const SweepGrid& grid, const SweepOptions& options) {
    return run_grid(grid, options, false);
}

SweepTable exact_vs_perturbative(const SweepGrid& grid, const SweepOptions& options) {
    return run_grid(grid, options, true);
}

SweepTable deviation_vs_theta0(const SweepGrid& grid, const SweepOptions& options) {
    return run_grid(grid, options, false);
}

std::vector<WindingRow> winding_ratio(const CentralSpinParams& central, const BathModel& bath, std::size_t m_max,
                                      const QuadratureSpec& spec, std::string_view label) {
    if (m_max < 2) throw std::invalid_argument("winding study needs m_max >= 2");
    const auto one = gp_exact(central, bath, 1, spec);
    std::vector<WindingRow> rows;
    rows.reserve(m_max);
    for (std::size_t m = 1; m <= m_max; ++m) {
        const auto res = m == 1 ? one : gp_exact(central, bath, m, spec);
        WindingRow row;
        row.label = std::string(label);
        row.n = bath.size();
        row.omega = bath[0].omega;
        row.lambda = bath[0].lambda;
        row.m = m;
        row.gp_exact = res.phase;
        row.ratio = res.phase / one.phase;
        row.quadrature_error = res.estimated_error;
        rows.push_back(std::move(row));
    }
    return rows;
}

double commensurate_bath_frequency(double central_omega, double lambda, double omega_target) {
    // pi/r divides 2 pi/Omega  <=>  r = k Omega / 2 for integer k.
    const double half = 0.5 * central_omega;
    const double r_target = std::hypot(omega_target, lambda);
    double k = std::max(1.0, std::round(r_target / half));
    while (k * half <= lambda) k += 1.0;
    const double r = k * half;
    return std::sqrt(r * r - lambda * lambda);
}

std::vector<WindingRow> figure5_winding(std::size_t m_max, const SweepOptions& options) {
    const auto central = CentralSpinParams::make(1.0, kPi / 2);
    constexpr std::size_t n = 10;
    struct Case {
        const char* label;
        double lambda;
        bool commensurate;
    };
    const Case cases[] = {
        {"commensurate", 0.025, true},
        {"commensurate", 0.1, true},
        {"incommensurate", 0.05, false},  // omega = 1.25 puts r halfway between multiples of Omega/2
    };
    std::vector<std::vector<WindingRow>> parts(std::size(cases));
    parallel_for(std::size(cases), options.workers, [&](std::size_t i) {
        const auto& c = cases[i];
        const double omega = c.commensurate ? commensurate_bath_frequency(central.omega, c.lambda, 1.0) : 1.25;
        parts[i] = winding_ratio(central, BathModel::homogeneous(n, omega, c.lambda), m_max, options.quadrature,
                                 c.label);
    });
    std::vector<WindingRow> rows;
    for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
    return rows;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs >= 2 paired points");
    const auto count = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / count, my = sy / count;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.residuals.push_back(r);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / count);
    return fit;
}

DispersionStudy dispersion_vs_n(const std::vector<std::size_t>& n_values, double omega, double lambda,
                                double horizon, std::size_t samples, const SweepOptions& options) {
    if (n_values.empty()) throw std::invalid_argument("dispersion study needs at least one N");
    auto sizes = n_values;
    std::sort(sizes.begin(), sizes.end());

    DispersionStudy study;
    study.rows.resize(sizes.size());
    parallel_for(sizes.size(), options.workers, [&](std::size_t i) {
        const auto avg = mean_time_averaged_factor(BathModel::homogeneous(sizes[i], omega, lambda), horizon, samples);
        study.rows[i] = {sizes[i], avg.mean, avg.dispersion};
    });

    std::vector<double> log_n, n_lin, log_d;
    for (const auto& r : study.rows) {
        if (!(r.dispersion > 0.0)) continue;
        log_n.push_back(std::log(static_cast<double>(r.n)));
        n_lin.push_back(static_cast<double>(r.n));
        log_d.push_back(std::log(r.dispersion));
    }
    if (log_d.size() >= 2 && log_d.size() == study.rows.size()) {
        study.log_log = fit_line(log_n, log_d);
        study.log_lin = fit_line(n_lin, log_d);
        study.fit_valid = true;
    }
    return study;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    if (table.has_disagreement_column) {
        out << "theta0,lambda,n,cycles,gp_exact,gp_perturbative,gp_unitary,deviation_exact,deviation_pert,"
               "quadrature_error,disagreement,status\n";
    } else {
        out << "theta0,lambda,n,cycles,gp_exact,gp_perturbative,gp_unitary,deviation_exact,deviation_pert,"
               "quadrature_error,status\n";
    }
    for (const auto& r : table.records) {
        if (std::abs(r.gp_unitary - unitary_gp(r.theta0)) > 1e-12) {
            throw std::logic_error("sweep record carries an inconsistent unitary phase at theta0 = " +
                                   format_double(r.theta0));
        }
        out << format_double(r.theta0) << ',' << format_double(r.lambda) << ',' << r.n << ',' << r.cycles << ','
            << format_double(r.gp_exact) << ',' << format_double(r.gp_perturbative) << ','
            << format_double(r.gp_unitary) << ',' << format_double(r.deviation_exact) << ','
            << format_double(r.deviation_pert) << ',' << format_double(r.quadrature_error) << ',';
        if (table.has_disagreement_column) out << (r.disagreement ? 1 : 0) << ',';
        out << (r.failed ? "failed" : "ok") << '\n';
    }
}

void write_winding_csv(std::ostream& out, const std::vector<WindingRow>& rows) {
    out << "case,n,omega,lambda,m,gp_exact,ratio,quadrature_error\n";
    for (const auto& r : rows) {
        out << r.label << ',' << r.n << ',' << format_double(r.omega) << ',' << format_double(r.lambda) << ','
            << r.m << ',' << format_double(r.gp_exact) << ',' << format_double(r.ratio) << ','
            << format_double(r.quadrature_error) << '\n';
    }
}

void write_dispersion_csv(std::ostream& out, const DispersionStudy& study) {
    out << "n,mean,dispersion\n";
    for (const auto& r : study.rows) {
        out << r.n << ',' << format_double(r.mean) << ',' << format_double(r.dispersion) << '\n';
    }
}

void write_dispersion_fit(std::ostream& out, const DispersionStudy& study) {
    out << "model,slope,intercept,residual_rms,residuals\n";
    if (!study.fit_valid) {
        out << "power_law,nan,nan,nan,\nexponential,nan,nan,nan,\n";
        return;
    }
    auto emit = [&](const char* name, const LinearFit& f) {
        out << name << ',' << format_double(f.slope) << ',' << format_double(f.intercept) << ','
            << format_double(f.residual_rms) << ',';
        for (std::size_t i = 0; i < f.residuals.size(); ++i) {
            if (i) out << ';';
            out << format_double(f.residuals[i]);
        }
        out << '\n';
    };
    emit("power_law", study.log_log);
    emit("exponential", study.log_lin);
}

std::string gnuplot_script(std::string_view experiment, std::string_view csv_name) {
    std::ostringstream s;
    s << "# gnuplot script for " << experiment << "\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 900,650\n"
      << "set output '" << experiment << ".png'\n";
    if (experiment == "fig1") {
        // columns: theta0(1) lambda(2) gp_exact(5)
        s << "set xlabel 'lambda'\nset ylabel 'theta0'\nset zlabel 'GP'\n"
          << "set dgrid3d 41,51\nset hidden3d\n"
          << "splot '" << csv_name << "' using 2:1:5 with lines title 'exact GP, N=10'\n";
    } else if (experiment == "fig2" || experiment == "fig3") {
        // One curve per theta0 value, selected by filtering column 1.
        s << "thetas = '0.31415926535897931 0.78539816339744828 1.5707963267948966 2.3561944901923448'\n"
          << "set xlabel 'lambda'\nset ylabel 'GP'\n"
          << "plot for [th in thetas] '" << csv_name
          << "' using 2:((abs($1-(th+0))<1e-9)?$5:1/0) with lines title sprintf('exact, theta0=%.3f', th+0), \\\n"
          << "     for [th in thetas] '" << csv_name
          << "' using 2:((abs($1-(th+0))<1e-9)?$6:1/0) with points title sprintf('perturbative, theta0=%.3f', th+0)\n";
    } else if (experiment == "fig4") {
        s << "set xlabel 'theta0'\nset ylabel 'GP - unitary GP'\n"
          << "plot for [n in '10 100'] for [l in '0.05 0.1'] '" << csv_name
          << "' using 1:(($3==(n+0) && abs($2-(l+0))<1e-12)?$8:1/0) with lines title sprintf('exact N=%s lambda=%s', n, l), \\\n"
          << "     for [n in '10 100'] for [l in '0.05 0.1'] '" << csv_name
          << "' using 1:(($3==(n+0) && abs($2-(l+0))<1e-12)?$9:1/0) with points title sprintf('perturbative N=%s lambda=%s', n, l)\n";
    } else if (experiment == "fig5") {
        s << "set xlabel 'm'\nset ylabel 'GP(m)/GP(1)'\n"
          << "plot for [l in '0.025 0.1 0.05'] '" << csv_name
          << "' using 5:((abs($4-(l+0))<1e-12)?$7:1/0) with linespoints title sprintf('lambda=%s', l), \\\n"
          << "     x with lines title 'm'\n";
    } else if (experiment == "dispersion") {
        s << "set logscale xy\nset xlabel 'N'\nset ylabel 'dispersion of F'\n"
          << "plot '" << csv_name << "' using 1:3 with linespoints title 'dispersion', \\\n"
          << "     '" << csv_name << "' using 1:2 with linespoints title 'mean'\n";
    } else {
        throw std::invalid_argument("no plot template for experiment " + std::string(experiment));
    }
    return s.str();
}

}  // namespace centralspin::experiments
