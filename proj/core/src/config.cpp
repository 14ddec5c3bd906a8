#include "centralspin/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace centralspin {

namespace {

using nlohmann::json;

double number_at(const json& obj, const char* key, const char* section) {
    if (!obj.contains(key)) {
        throw ConfigError(std::string("missing key ") + section + "." + key);
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string(section) + "." + key + " must be a number");
    return v.get<double>();
}

BathModel parse_bath(const json& bath, std::uint64_t seed) {
    if (!bath.is_object()) throw ConfigError("bath section must be an object");

    if (bath.contains("spins")) {
        const auto& rows = bath.at("spins");
        if (!rows.is_array() || rows.empty()) throw ConfigError("bath.spins must be a non-empty list");
        std::vector<BathSpinParams> spins;
        spins.reserve(rows.size());
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != 6) {
                throw ConfigError("each bath.spins entry needs 6 numbers: omega, lambda, amp0_re, amp0_im, amp1_re, amp1_im");
            }
            double v[6];
            for (std::size_t k = 0; k < 6; ++k) {
                if (!row[k].is_number()) throw ConfigError("bath.spins entries must be numeric");
                v[k] = row[k].get<double>();
            }
            spins.push_back(BathSpinParams::make(v[0], v[1], {v[2], v[3]}, {v[4], v[5]}));
        }
        return BathModel(std::move(spins));
    }

    if (bath.contains("random")) {
        const auto& r = bath.at("random");
        const double n = number_at(r, "n", "bath.random");
        if (n < 1 || n != std::floor(n)) throw ConfigError("bath.random.n must be a positive integer");
        const double omega_max = r.value("omega_max", 2.0);
        const double lambda_max = r.value("lambda_max", 2.0);
        return random_bath(static_cast<std::size_t>(n), seed, omega_max, lambda_max, r.value("random_states", false));
    }

    const double n = number_at(bath, "n", "bath");
    if (n < 1 || n != std::floor(n)) throw ConfigError("bath.n must be a positive integer");
    return BathModel::homogeneous(static_cast<std::size_t>(n), number_at(bath, "omega", "bath"),
                                  number_at(bath, "lambda", "bath"));
}

}  // namespace

ModelConfig default_model_config() {
    return {CentralSpinParams::make(1.0, std::numbers::pi / 2), BathModel::homogeneous(10, 1.0, 0.05)};
}

ModelConfig parse_model_config(std::string_view text, std::uint64_t seed) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    if (!doc.contains("system")) throw ConfigError("missing section: system");
    if (!doc.contains("bath")) throw ConfigError("missing section: bath");

    try {
        const auto& sys = doc.at("system");
        auto central = CentralSpinParams::make(number_at(sys, "omega", "system"), number_at(sys, "theta0", "system"));
        return {central, parse_bath(doc.at("bath"), seed)};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ModelConfig load_model_config(const std::filesystem::path& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_config(buf.str(), seed);
}

BathModel random_bath(std::size_t n, std::uint64_t seed, double omega_max, double lambda_max, bool random_states) {
    if (n == 0) throw std::invalid_argument("random bath needs n >= 1");
    std::mt19937_64 gen(seed);
    // (0, max]: draw from [0, max) and reflect.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<BathSpinParams> spins;
    spins.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double omega = omega_max * (1.0 - unit(gen));
        const double lambda = lambda_max * (1.0 - unit(gen));
        if (!random_states) {
            spins.push_back(BathSpinParams::make(omega, lambda));
            continue;
        }
        Complex a0{gauss(gen), gauss(gen)};
        Complex a1{gauss(gen), gauss(gen)};
        const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
        a0 /= norm;
        a1 /= norm;
        spins.push_back(BathSpinParams::make(omega, lambda, a0, a1));
    }
    return BathModel(std::move(spins));
}

}  // namespace centralspin
