#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centralspin/config.hpp"
#include "centralspin/geometric_phase.hpp"

namespace centralspin::cli {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;   // max error, or the statistic the suite thresholds
    double threshold = 0.0;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    double perturbative_sign = kPerturbativeSign;
    QuadratureSpec quadrature{};
};

struct ValidationReport {
    std::vector<SuiteResult> suites;
    double sign_used = kPerturbativeSign;
    double sign_observed = 0.0;  // sign of gp_exact - gp_unitary at weak coupling, 0 if inconsistent
    std::string sign_evidence;

    bool all_passed() const;
};

// Individual oracle suites. Each draws its random configurations from `seed`.
SuiteResult check_closed_form_factor(const ModelConfig& config, std::uint64_t seed);
SuiteResult check_full_hilbert_density(const ModelConfig& config, std::uint64_t seed);
SuiteResult check_kinematic_reduction(const ModelConfig& config, std::uint64_t seed, const QuadratureSpec& spec);
SuiteResult check_perturbative_order(double sign, const QuadratureSpec& spec);
SuiteResult check_sign_determination(double sign, std::uint64_t seed, const QuadratureSpec& spec,
                                     ValidationReport& report);

ValidationReport run_validation(const ModelConfig& config, const ValidationOptions& options = {});

}  // namespace centralspin::cli
