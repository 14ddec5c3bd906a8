#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centralspin/config.hpp"
#include "centralspin/csv.hpp"
#include "centralspin/experiments.hpp"
#include "centralspin/geometric_phase.hpp"
#include "centralspin/oracle.hpp"
#include "validation.hpp"

namespace centralspin::cli {

namespace {

namespace fs = std::filesystem;
namespace ex = centralspin::experiments;

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string config_path;
    std::string out_dir = ".";
    double tolerance = 1e-10;
    std::size_t workers = 1;
    std::uint64_t seed = 20240611;
    std::size_t cycles = 1;

    ModelConfig model() const {
        return config_path.empty() ? default_model_config() : load_model_config(config_path, seed);
    }
    QuadratureSpec quadrature() const {
        QuadratureSpec q;
        q.tolerance = tolerance;
        return q;
    }
};

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot open " + (dir / name).string() + " for writing");
    return f;
}

void finish(std::ofstream& f, const std::string& name) {
    f.flush();
    if (!f) throw OutputError("write failed for " + name);
}

// ---------------------------------------------------------------------------

int cmd_decoherence(const RunConfig& rc, double t_max, std::size_t steps, std::ostream& out) {
    const auto model = rc.model();
    if (!(t_max > 0.0)) throw CLI::ValidationError("--t-max", "must be positive");
    if (steps < 2) throw CLI::ValidationError("--steps", "must be >= 2");

    auto f = open_output(rc.out_dir, "decoherence.csv");
    f << "t,F_closed,F_exact_re,F_exact_im\n";
    double worst = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
        const double closed = decoherence_factor(model.bath, t);
        const Complex exact = oracle::decoherence_factor_exact(model.bath, t);
        worst = std::max(worst, std::abs(closed - exact));
        f << format_double(t) << ',' << format_double(closed) << ',' << format_double(exact.real()) << ','
          << format_double(exact.imag()) << '\n';
    }
    finish(f, "decoherence.csv");
    out << "rows=" << steps << " max_abs_diff=" << format_double(worst)
        << " sigma_x_bath=" << (model.bath.all_sigma_x_eigenstates() ? "true" : "false")
        << " agreement=" << (worst < 1e-10 ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_gp(const RunConfig& rc, std::ostream& out) {
    const auto model = rc.model();
    const auto spec = rc.quadrature();
    const double m = static_cast<double>(rc.cycles);

    const auto exact = gp_exact(model.central, model.bath, rc.cycles, spec);
    const auto kinematic = gp_kinematic(model.central, model.bath, rc.cycles, spec);
    const double unitary = m * unitary_gp(model.central.theta0);

    double pert = std::numeric_limits<double>::quiet_NaN();
    if (model.bath.is_homogeneous()) {
        const auto& s = model.bath[0];
        pert = m * gp_perturbative(model.central, model.bath.size(), s.omega, s.lambda);
    }
    const double dev_exact = exact.phase - unitary;
    const double dev_pert = pert - unitary;
    const bool consistent = std::abs(exact.phase - pert) < 0.01 * std::abs(dev_exact);

    out << "cycles=" << rc.cycles << " n=" << model.bath.size() << " theta0=" << format_double(model.central.theta0)
        << " gp_exact=" << format_double(exact.phase) << " gp_kinematic=" << format_double(kinematic.phase)
        << " gp_perturbative=" << format_double(pert) << " gp_unitary=" << format_double(unitary)
        << " deviation_exact=" << format_double(dev_exact) << " deviation_pert=" << format_double(dev_pert)
        << " deviation_kinematic=" << format_double(kinematic.phase - unitary)
        << " quadrature_error=" << format_double(exact.estimated_error) << " evaluations=" << exact.evaluations
        << " weak_coupling_consistent=" << (consistent ? "true" : "false") << '\n';
    return kExitOk;
}

const std::vector<std::string> kExperiments{"fig1", "fig2", "fig3", "fig4", "fig5", "dispersion"};

int cmd_sweep(const RunConfig& rc, const std::string& name, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    ex::SweepOptions options;
    options.quadrature = rc.quadrature();
    options.workers = rc.workers;

    auto apply_config = [&](ex::SweepGrid grid) {
        grid.cycles = rc.cycles;
        if (!rc.config_path.empty()) {
            const auto model = rc.model();
            grid.central_omega = model.central.omega;
            grid.omega_ratio = model.bath[0].omega / model.central.omega;
        }
        return grid;
    };

    std::size_t rows = 0;
    std::size_t failed = 0;
    auto f = open_output(rc.out_dir, name + ".csv");
    if (name == "fig1" || name == "fig2" || name == "fig3" || name == "fig4") {
        ex::SweepTable table;
        if (name == "fig1") {
            table = ex::figure1_surface(apply_config(ex::SweepGrid::figure1()), options);
        } else if (name == "fig2") {
            table = ex::exact_vs_perturbative(apply_config(ex::SweepGrid::exact_vs_perturbative(10)), options);
        } else if (name == "fig3") {
            table = ex::exact_vs_perturbative(apply_config(ex::SweepGrid::exact_vs_perturbative(100)), options);
        } else {
            table = ex::deviation_vs_theta0(apply_config(ex::SweepGrid::figure4()), options);
        }
        ex::write_sweep_csv(f, table);
        rows = table.records.size();
        failed = table.failed_cells();
    } else if (name == "fig5") {
        const auto table = ex::figure5_winding(10, options);
        ex::write_winding_csv(f, table);
        rows = table.size();
    } else {
        const auto study = ex::dispersion_vs_n({2, 4, 8, 16, 32, 64}, 1.0, 0.3, 1e4 * 2.0 * std::numbers::pi,
                                               1'000'000, options);
        ex::write_dispersion_csv(f, study);
        rows = study.rows.size();
        auto fit = open_output(rc.out_dir, "dispersion_fit.csv");
        ex::write_dispersion_fit(fit, study);
        finish(fit, "dispersion_fit.csv");
    }
    finish(f, name + ".csv");

    auto script = open_output(rc.out_dir, name + ".gp");
    script << ex::gnuplot_script(name, name + ".csv");
    finish(script, name + ".gp");

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "experiment=" << name << " rows=" << rows << " failed=" << failed << '\n';
    err << "wall_time_s=" << seconds << '\n';
    return kExitOk;
}

int cmd_validate(const RunConfig& rc, std::optional<double> sign_override, std::ostream& out) {
    const auto model = rc.model();
    ValidationOptions options;
    options.seed = rc.seed;
    options.quadrature = rc.quadrature();
    if (sign_override) options.perturbative_sign = *sign_override;

    const auto report = run_validation(model, options);
    for (const auto& s : report.suites) {
        out << "suite=" << s.name << " status=" << (s.passed ? "PASS" : "FAIL")
            << " observed=" << format_double(s.observed) << " threshold=" << format_double(s.threshold)
            << " detail=\"" << s.detail << "\"\n";
    }
    out << "perturbative_sign=" << format_double(report.sign_used)
        << " observed_sign=" << format_double(report.sign_observed) << " evidence=\"" << report.sign_evidence
        << "\"\n";
    out << "overall=" << (report.all_passed() ? "PASS" : "FAIL") << '\n';
    return report.all_passed() ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decoherence factor and geometric phase of a central spin in an N-spin bath", "centralspin"};
    app.require_subcommand(1);

    RunConfig rc;
    app.add_option("--config", rc.config_path, "JSON model configuration")->check(CLI::ExistingFile);
    app.add_option("--out", rc.out_dir, "Output directory for CSV files");
    app.add_option("--tol", rc.tolerance, "Quadrature tolerance (radians)")->check(CLI::PositiveNumber);
    app.add_option("--workers", rc.workers, "Worker threads for sweeps")->check(CLI::Range(1, 1024));
    app.add_option("--seed", rc.seed, "Seed for random bath generation");
    app.add_option("--cycles", rc.cycles, "Number of system cycles")->check(CLI::Range(1, 100000));

    double t_max = 20.0;
    std::size_t steps = 1001;
    auto* decoherence = app.add_subcommand("decoherence", "Time series of closed-form and exact F(t)");
    decoherence->fallthrough();
    decoherence->add_option("--t-max", t_max, "Final time");
    decoherence->add_option("--steps", steps, "Number of time samples (>= 2)");

    auto* gp = app.add_subcommand("gp", "Exact, kinematic, perturbative and unitary geometric phases");
    gp->fallthrough();

    std::string experiment;
    auto* sweep = app.add_subcommand("sweep", "Regenerate a figure data set");
    sweep->fallthrough();
    sweep->add_option("experiment", experiment, "fig1|fig2|fig3|fig4|fig5|dispersion")
        ->required()
        ->check(CLI::IsMember(kExperiments));

    std::optional<double> sign_override;
    auto* validate = app.add_subcommand("validate", "Run the oracle suites");
    validate->fallthrough();
    validate->add_option("--perturbative-sign", sign_override, "Override the perturbative sign (diagnostics)")
        ->check(CLI::IsMember({-1.0, 1.0}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decoherence) return cmd_decoherence(rc, t_max, steps, out);
        if (*gp) return cmd_gp(rc, out);
        if (*sweep) return cmd_sweep(rc, experiment, out, err);
        if (*validate) return cmd_validate(rc, sign_override, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << '\n';
        return kExitOutput;
    } catch (const GpError& e) {
        err << "quadrature failure: " << e.what() << '\n';
        return kExitQuadrature;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace centralspin::cli
