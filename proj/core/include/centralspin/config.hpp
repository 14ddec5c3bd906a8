#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "centralspin/model.hpp"

namespace centralspin {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model parameters read from a JSON configuration file.
///
/// Homogeneous bath:
///
///     { "system": { "omega": 1.0, "theta0": 1.5707963267948966 },
///       "bath":   { "n": 10, "omega": 1.0, "lambda": 0.05 } }
///
/// Heterogeneous bath, one row per spin (omega, lambda, amp0_re, amp0_im, amp1_re, amp1_im):
///
///     "bath": { "spins": [[1.0, 0.5, 0.7071067811865476, 0, 0.7071067811865476, 0], ...] }
///
/// Seeded random heterogeneous bath (sx-eigenstate initial states):
///
///     "bath": { "random": { "n": 4, "omega_max": 2.0, "lambda_max": 2.0 } }
struct ModelConfig {
    CentralSpinParams central;
    BathModel bath;
};

/// N = 10, omega = Omega = 1, lambda = 0.05, theta0 = pi/2.
ModelConfig default_model_config();

/// Throws ConfigError on malformed input or parameters violating the model invariants.
ModelConfig parse_model_config(std::string_view text, std::uint64_t seed = 0);
ModelConfig load_model_config(const std::filesystem::path& path, std::uint64_t seed = 0);

/// Heterogeneous bath with omega_i, lambda_i drawn uniformly from (0, omega_max] x (0, lambda_max].
/// Initial states are sx eigenstates unless `random_states` is set, in which case each spin gets a
/// Haar-random pure state.
BathModel random_bath(std::size_t n, std::uint64_t seed, double omega_max = 2.0, double lambda_max = 2.0,
                      bool random_states = false);

}  // namespace centralspin
