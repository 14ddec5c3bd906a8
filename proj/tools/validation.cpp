#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "centralspin/csv.hpp"
#include "centralspin/oracle.hpp"

namespace centralspin::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

std::size_t uniform_int(std::mt19937_64& gen, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen);
}

}  // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

SuiteResult check_closed_form_factor(const ModelConfig& config, std::uint64_t seed) {
    constexpr int kConfigs = 200;
    constexpr int kTimes = 1000;
    constexpr double kThreshold = 1e-10;

    std::mt19937_64 gen(seed);
    double worst = 0.0;
    auto sweep = [&](const BathModel& bath) {
        for (int k = 0; k < kTimes; ++k) {
            const double t = uniform(gen, 0.0, 50.0);
            const Complex exact = oracle::decoherence_factor_exact(bath, t);
            worst = std::max(worst, std::abs(decoherence_factor(bath, t) - exact));
        }
    };
    for (int c = 0; c < kConfigs; ++c) {
        sweep(random_bath(uniform_int(gen, 1, 10), gen(), 2.0, 2.0));
    }
    int extra = 0;
    if (config.bath.all_sigma_x_eigenstates()) {
        sweep(config.bath);
        extra = 1;
    }
    std::ostringstream detail;
    detail << kConfigs + extra << " configs x " << kTimes << " times";
    return {"closed_form_factor", worst < kThreshold, worst, kThreshold, detail.str()};
}

SuiteResult check_full_hilbert_density(const ModelConfig& config, std::uint64_t seed) {
    constexpr double kThreshold = 1e-8;
    constexpr int kConfigsPerSize = 5;
    constexpr int kTimes = 20;

    std::mt19937_64 gen(seed);
    double worst = 0.0;
    int configs = 0;
    auto compare = [&](const CentralSpinParams& central, const BathModel& bath) {
        const oracle::FullHilbertEvolver evolver(central, bath);
        for (int k = 0; k < kTimes; ++k) {
            const double t = uniform(gen, 0.0, 10.0);
            const auto model = reduced_density_matrix(central, oracle::decoherence_factor_exact(bath, t), t);
            worst = std::max(worst, trace_distance(model, evolver.reduced_density(t)));
        }
        ++configs;
    };
    for (std::size_t n : {1, 2, 4, 8}) {
        for (int c = 0; c < kConfigsPerSize; ++c) {
            const auto central = CentralSpinParams::make(uniform(gen, 0.5, 2.0), uniform(gen, 0.0, kPi));
            compare(central, random_bath(n, gen(), 2.0, 2.0, /*random_states=*/true));
        }
    }
    if (config.bath.size() <= oracle::kMaxEigenBath) compare(config.central, config.bath);

    std::ostringstream detail;
    detail << configs << " configs x " << kTimes << " times, N in {1,2,4,8}, trace distance";
    return {"full_hilbert_density", worst < kThreshold, worst, kThreshold, detail.str()};
}

SuiteResult check_kinematic_reduction(const ModelConfig& config, std::uint64_t seed, const QuadratureSpec& spec) {
    constexpr double kThreshold = 1e-6;
    constexpr int kConfigs = 50;

    std::mt19937_64 gen(seed);
    double worst = 0.0;
    int configs = 0;
    std::string failure;
    auto compare = [&](const CentralSpinParams& central, const BathModel& bath) {
        try {
            const double exact = gp_exact(central, bath, 1, spec).phase;
            const double kinematic = gp_kinematic(central, bath, 1, spec).phase;
            // Phases are defined modulo 2 pi.
            const double gap = std::remainder(exact - kinematic, 2.0 * kPi);
            worst = std::max(worst, std::abs(gap));
        } catch (const GpError& e) {
            failure = e.what();
            worst = std::numeric_limits<double>::infinity();
        }
        ++configs;
    };
    for (int c = 0; c < kConfigs; ++c) {
        const auto central = CentralSpinParams::make(1.0, uniform(gen, 0.05 * kPi, 0.95 * kPi));
        compare(central, random_bath(uniform_int(gen, 1, 10), gen(), 2.0, 0.3));
    }
    if (config.bath.all_sigma_x_eigenstates()) compare(config.central, config.bath);

    std::ostringstream detail;
    detail << configs << " real-F configs, |gp_kinematic - gp_exact| mod 2pi";
    if (!failure.empty()) detail << "; error: " << failure;
    return {"kinematic_reduction", worst < kThreshold, worst, kThreshold, detail.str()};
}

SuiteResult check_perturbative_order(double sign, const QuadratureSpec& spec) {
    constexpr double kMinRatio = 8.0;
    constexpr double kMagnitudeTolerance = 0.15;
    constexpr std::size_t n = 10;
    const auto central = CentralSpinParams::make(1.0, kPi / 2);

    auto residual = [&](double lambda) {
        const double exact = gp_exact(central, BathModel::homogeneous(n, 1.0, lambda), 1, spec).phase;
        return std::abs(exact - gp_perturbative(central, n, 1.0, lambda, sign));
    };
    const double r_large = residual(0.04);
    const double r_small = residual(0.02);
    const double ratio = r_large / r_small;

    const double deviation = gp_deviation(central, BathModel::homogeneous(n, 1.0, 0.02), spec);
    const double predicted = static_cast<double>(n) * 0.02 * 0.02 * kPi;
    const double magnitude_error = std::abs(std::abs(deviation) - predicted) / predicted;

    std::ostringstream detail;
    detail << "residual(0.04)=" << format_double(r_large) << " residual(0.02)=" << format_double(r_small)
           << " magnitude_rel_error=" << format_double(magnitude_error) << " (limit " << kMagnitudeTolerance << ")";
    const bool ok = ratio >= kMinRatio && magnitude_error <= kMagnitudeTolerance;
    return {"perturbative_order", ok, ratio, kMinRatio, detail.str()};
}

SuiteResult check_sign_determination(double sign, std::uint64_t seed, const QuadratureSpec& spec,
                                     ValidationReport& report) {
    constexpr int kConfigs = 20;
    std::mt19937_64 gen(seed);
    int negative = 0;
    int positive = 0;
    double smallest = std::numeric_limits<double>::infinity();
    double largest = 0.0;
    for (int c = 0; c < kConfigs; ++c) {
        const double theta0 = uniform(gen, 0.05 * kPi, 0.95 * kPi);
        const std::size_t n = uniform_int(gen, 1, 100);
        const double omega = uniform(gen, 0.5, 2.0);
        const double lambda_eff2 = uniform(gen, 1e-3, 1e-2);
        const double lambda = omega * std::sqrt(lambda_eff2 / static_cast<double>(n));
        const double dev =
            gp_deviation(CentralSpinParams::make(1.0, theta0), BathModel::homogeneous(n, omega, lambda), spec);
        (dev < 0.0 ? negative : positive) += 1;
        smallest = std::min(smallest, std::abs(dev));
        largest = std::max(largest, std::abs(dev));
    }
    const double observed = negative == kConfigs ? -1.0 : positive == kConfigs ? 1.0 : 0.0;
    report.sign_observed = observed;
    report.sign_used = sign;

    std::ostringstream ev;
    ev << "negative=" << negative << " positive=" << positive << " min|dev|=" << format_double(smallest)
       << " max|dev|=" << format_double(largest);
    report.sign_evidence = ev.str();
    return {"sign_determination", observed != 0.0 && observed == sign, static_cast<double>(std::max(negative, positive)),
            static_cast<double>(kConfigs), ev.str()};
}

ValidationReport run_validation(const ModelConfig& config, const ValidationOptions& options) {
    ValidationReport report;
    report.sign_used = options.perturbative_sign;
    report.suites.push_back(check_closed_form_factor(config, options.seed));
    report.suites.push_back(check_full_hilbert_density(config, options.seed + 1));
    report.suites.push_back(check_kinematic_reduction(config, options.seed + 2, options.quadrature));
    report.suites.push_back(check_perturbative_order(options.perturbative_sign, options.quadrature));
    report.suites.push_back(
        check_sign_determination(options.perturbative_sign, options.seed + 3, options.quadrature, report));
    return report;
}

}  // namespace centralspin::cli
