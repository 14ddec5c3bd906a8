#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "centralspin/experiments.hpp"

using namespace centralspin;
using namespace centralspin::experiments;

namespace {

constexpr double kPi = std::numbers::pi;

SweepGrid small_grid() {
    SweepGrid g;
    g.theta0_values = {0.0, kPi / 3, kPi / 2, kPi};
    g.lambda_values = {0.0, 0.05, 0.1};
    g.n_values = {10};
    return g;
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream s;
    write_sweep_csv(s, table);
    return s.str();
}

}  // namespace

TEST(SweepGrid, DefaultShapes) {
    const auto f1 = SweepGrid::figure1();
    EXPECT_EQ(f1.theta0_values.size(), 41u);
    EXPECT_EQ(f1.lambda_values.size(), 51u);
    EXPECT_EQ(f1.lambda_values.back(), 0.2);
    EXPECT_EQ(f1.theta0_values.back(), kPi);
    EXPECT_EQ(f1.n_values, std::vector<std::size_t>{10});

    const auto f4 = SweepGrid::figure4();
    EXPECT_EQ(f4.theta0_values.size(), 39u);
    EXPECT_EQ(f4.n_values, (std::vector<std::size_t>{10, 100}));

    SweepGrid bad = small_grid();
    bad.lambda_values.clear();
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = small_grid();
    bad.theta0_values.push_back(4.0);
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(EvaluateCell, Examples) {
    const auto grid = SweepGrid::figure1();
    const QuadratureSpec spec;
    const auto unitary = evaluate_cell(kPi / 2, 0.0, 10, grid, spec);
    EXPECT_NEAR(unitary.gp_exact, kPi, 1e-9);
    EXPECT_NEAR(unitary.deviation_exact, 0.0, 1e-9);

    const auto pole = evaluate_cell(kPi, 0.2, 10, grid, spec);
    EXPECT_NEAR(pole.gp_exact, 0.0, 1e-9);

    const auto weak = evaluate_cell(kPi / 2, 0.05, 10, grid, spec);
    EXPECT_LT(weak.gp_exact, kPi);
    EXPECT_FALSE(weak.failed);
    EXPECT_NEAR(weak.gp_unitary, kPi, 1e-15);
}

TEST(Figure1, DeviationGrowsWithLambda) {
    SweepGrid g;
    g.theta0_values = {kPi / 4, kPi / 2};
    for (int k = 0; k <= 10; ++k) g.lambda_values.push_back(0.01 * k);
    g.n_values = {10};
    const auto table = figure1_surface(g);
    ASSERT_EQ(table.records.size(), 22u);
    for (std::size_t i = 1; i < table.records.size(); ++i) {
        const auto& a = table.records[i - 1];
        const auto& b = table.records[i];
        if (a.theta0 != b.theta0) continue;
        EXPECT_GT(std::abs(b.deviation_exact), std::abs(a.deviation_exact)) << b.theta0 << ' ' << b.lambda;
    }
}

TEST(Figure1, ZeroCouplingCollapsesToUnitary) {
    SweepGrid g = SweepGrid::figure1();
    g.lambda_values = {0.0};
    for (const auto& r : figure1_surface(g).records) {
        EXPECT_NEAR(r.gp_exact, kPi * (1.0 + std::cos(r.theta0)), 1e-10) << r.theta0;
    }
}

TEST(Sweep, RowOrderAndWorkerIndependence) {
    SweepOptions one, many;
    many.workers = 4;
    const auto a = figure1_surface(small_grid(), one);
    const auto b = figure1_surface(small_grid(), many);
    ASSERT_EQ(a.records.size(), 12u);
    EXPECT_EQ(sweep_csv(a), sweep_csv(b));
    for (std::size_t i = 1; i < a.records.size(); ++i) {
        const auto& p = a.records[i - 1];
        const auto& q = a.records[i];
        EXPECT_TRUE(p.theta0 < q.theta0 || (p.theta0 == q.theta0 && p.lambda < q.lambda));
    }
}

TEST(ExactVsPerturbative, DisagreementFlagTracksBathSize) {
    SweepGrid g;
    g.theta0_values = {kPi / 2};
    g.lambda_values = {0.02, 0.1};
    g.n_values = {10, 100};
    const auto table = exact_vs_perturbative(g);
    ASSERT_EQ(table.records.size(), 4u);
    EXPECT_TRUE(table.has_disagreement_column);
    // (10, 0.02), (10, 0.1), (100, 0.02), (100, 0.1)
    EXPECT_FALSE(table.records[0].disagreement);
    EXPECT_TRUE(table.records[3].disagreement);
    for (const auto& r : table.records) {
        EXPECT_EQ(r.disagreement,
                  std::abs(r.gp_exact - r.gp_perturbative) > kDisagreementThreshold * std::abs(r.gp_exact));
    }
}

TEST(Figure4, LargerBathDeviatesMore) {
    SweepGrid g = SweepGrid::figure4();
    g.lambda_values = {0.05};
    const auto table = deviation_vs_theta0(g);
    ASSERT_EQ(table.records.size(), 78u);
    double peak = 0.0, peak_theta = 0.0;
    for (std::size_t k = 0; k < 39; ++k) {
        const auto& small = table.records[k];
        const auto& large = table.records[39 + k];
        ASSERT_EQ(small.n, 10u);
        ASSERT_EQ(large.n, 100u);
        EXPECT_GT(std::abs(large.deviation_exact), std::abs(small.deviation_exact)) << small.theta0;
        if (std::abs(small.deviation_exact) > peak) {
            peak = std::abs(small.deviation_exact);
            peak_theta = small.theta0;
        }
    }
    EXPECT_NEAR(peak_theta, kPi / 2, kPi / 8);
}

TEST(Winding, CommensurateBathWindsLinearly) {
    const double omega = commensurate_bath_frequency(1.0, 0.1, 1.0);
    EXPECT_NEAR(std::hypot(omega, 0.1), 1.0, 1e-15);
    const double w2 = commensurate_bath_frequency(2.0, 0.3, 2.4);
    const double r2 = std::hypot(w2, 0.3);
    EXPECT_NEAR(r2 / 1.0 - std::round(r2), 0.0, 1e-12);

    const auto rows = winding_ratio(CentralSpinParams::make(1.0, kPi / 2), BathModel::homogeneous(10, omega, 0.1), 5);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) EXPECT_NEAR(r.ratio, static_cast<double>(r.m), 1e-8) << r.m;
    EXPECT_THROW(winding_ratio(CentralSpinParams::make(1.0, 1.0), BathModel::homogeneous(1, 1.0, 0.1), 1),
                 std::invalid_argument);
}

TEST(Winding, Figure5Cases) {
    const auto rows = figure5_winding(4);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0].label, "commensurate");
    EXPECT_EQ(rows[8].label, "incommensurate");
    EXPECT_NEAR(rows[3].ratio, 4.0, 1e-8);
    EXPECT_NEAR(rows[7].ratio, 4.0, 1e-8);
    // Couplings of the two commensurate cases differ by 4x.
    EXPECT_NEAR(rows[4].lambda / rows[0].lambda, 4.0, 1e-15);
    EXPECT_GT(std::abs(rows[11].ratio - 4.0), 1e-6);

    std::ostringstream s;
    write_winding_csv(s, rows);
    EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "case,n,omega,lambda,m,gp_exact,ratio,quadrature_error");
}

TEST(FitLine, ExactLine) {
    const auto fit = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(fit.slope, 2.0, 1e-14);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
    EXPECT_NEAR(fit.residual_rms, 0.0, 1e-14);
    EXPECT_EQ(fit.residuals.size(), 4u);
    EXPECT_THROW(fit_line({1}, {1}), std::invalid_argument);
    EXPECT_THROW(fit_line({1, 2}, {1}), std::invalid_argument);
}

TEST(Dispersion, RowsAndFits) {
    const auto study = dispersion_vs_n({4, 1, 2}, 1.0, 0.3, 200.0 * kPi, 20'000);
    ASSERT_EQ(study.rows.size(), 3u);
    EXPECT_EQ(study.rows[0].n, 1u);
    EXPECT_EQ(study.rows[2].n, 4u);
    EXPECT_TRUE(study.fit_valid);
    for (const auto& r : study.rows) {
        EXPECT_GT(r.mean, 0.0);
        EXPECT_LT(r.mean, 1.0);
        EXPECT_GT(r.dispersion, 0.0);
    }

    std::ostringstream csv, fit;
    write_dispersion_csv(csv, study);
    write_dispersion_fit(fit, study);
    EXPECT_EQ(csv.str().substr(0, 18), "n,mean,dispersion\n");
    EXPECT_NE(fit.str().find("power_law,"), std::string::npos);
    EXPECT_NE(fit.str().find("exponential,"), std::string::npos);

    const auto flat = dispersion_vs_n({1, 2}, 1.0, 0.0, 10.0, 100);
    EXPECT_FALSE(flat.fit_valid);
    EXPECT_THROW(dispersion_vs_n({}, 1.0, 0.3, 1.0, 10), std::invalid_argument);
}

TEST(SweepCsv, HeaderAndFormatting) {
    auto table = figure1_surface(small_grid());
    const auto text = sweep_csv(table);
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "theta0,lambda,n,cycles,gp_exact,gp_perturbative,gp_unitary,deviation_exact,deviation_pert,"
              "quadrature_error,status");
    // Header plus one line per record.
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
    EXPECT_NE(text.find("3.1415926535897931"), std::string::npos);

    table.records[2].gp_unitary += 1e-9;
    std::ostringstream sink;
    EXPECT_THROW(write_sweep_csv(sink, table), std::logic_error);
}

TEST(Gnuplot, ScriptsReferenceCsv) {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "dispersion"}) {
        const auto script = gnuplot_script(name, std::string(name) + ".csv");
        EXPECT_NE(script.find(std::string(name) + ".csv"), std::string::npos) << name;
        EXPECT_NE(script.find("plot"), std::string::npos) << name;
    }
}
