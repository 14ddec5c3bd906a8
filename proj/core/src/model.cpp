#include "centralspin/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace centralspin {

CentralSpinParams CentralSpinParams::make(double omega, double theta0) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("central spin frequency must be positive, got " + std::to_string(omega));
    }
    if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi)) {
        throw std::invalid_argument("theta0 must lie in [0, pi], got " + std::to_string(theta0));
    }
    return {omega, theta0};
}

double CentralSpinParams::alpha() const { return std::cos(0.5 * theta0); }
double CentralSpinParams::beta() const { return std::sin(0.5 * theta0); }
double CentralSpinParams::period() const { return 2.0 * std::numbers::pi / omega; }

BathSpinParams BathSpinParams::make(double omega, double lambda) {
    const Complex amp{1.0 / std::numbers::sqrt2, 0.0};
    return make(omega, lambda, amp, amp);
}

BathSpinParams BathSpinParams::make(double omega, double lambda, Complex amp0, Complex amp1) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("bath spin frequency must be >= 0, got " + std::to_string(omega));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("bath coupling must be >= 0, got " + std::to_string(lambda));
    }
    const double norm = std::norm(amp0) + std::norm(amp1);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("bath spin initial state is not normalised (|a0|^2+|a1|^2 = " +
                                    std::to_string(norm) + ")");
    }
    return {omega, lambda, amp0, amp1};
}

bool BathSpinParams::is_sigma_x_eigenstate(double tol) const {
    // |<+|chi>|^2 or |<-|chi>|^2 must be 1.
    const double plus = 0.5 * std::norm(amp0 + amp1);
    const double minus = 0.5 * std::norm(amp0 - amp1);
    return 1.0 - std::max(plus, minus) <= tol;
}

BathModel::BathModel(std::vector<BathSpinParams> spins) : spins_(std::move(spins)) {
    if (spins_.empty()) throw std::invalid_argument("bath must contain at least one spin");
}

BathModel BathModel::homogeneous(std::size_t n, double omega, double lambda) {
    return BathModel(std::vector<BathSpinParams>(n, BathSpinParams::make(omega, lambda)));
}

BathModel BathModel::homogeneous(std::size_t n, double omega, double lambda, Complex amp0, Complex amp1) {
    return BathModel(std::vector<BathSpinParams>(n, BathSpinParams::make(omega, lambda, amp0, amp1)));
}

bool BathModel::is_homogeneous() const {
    const auto& s0 = spins_.front();
    return std::all_of(spins_.begin(), spins_.end(), [&](const BathSpinParams& s) {
        return s.omega == s0.omega && s.lambda == s0.lambda && s.amp0 == s0.amp0 && s.amp1 == s0.amp1;
    });
}

bool BathModel::all_sigma_x_eigenstates() const {
    return std::all_of(spins_.begin(), spins_.end(),
                       [](const BathSpinParams& s) { return s.is_sigma_x_eigenstate(); });
}

double BathModel::max_dressed_frequency() const {
    double r = 0.0;
    for (const auto& s : spins_) r = std::max(r, dressed_frequency(s));
    return r;
}

double BathModel::effective_coupling_squared() const {
    const auto& s = spins_.front();
    const double ratio = s.lambda / s.omega;
    return static_cast<double>(spins_.size()) * ratio * ratio;
}

double dressed_frequency(const BathSpinParams& spin) { return std::hypot(spin.omega, spin.lambda); }

double single_spin_factor(const BathSpinParams& spin, double t) {
    const double r2 = spin.omega * spin.omega + spin.lambda * spin.lambda;
    if (r2 == 0.0) return 1.0;
    const double s = std::sin(std::sqrt(r2) * t);
    return 1.0 - 2.0 * spin.lambda * spin.lambda / r2 * s * s;
}

double decoherence_factor(const BathModel& bath, double t) {
    double f = 1.0;
    for (const auto& s : bath.spins()) f *= single_spin_factor(s, t);
    return f;
}

TimeAverage mean_time_averaged_factor(const BathModel& bath, double horizon, std::size_t samples) {
    if (!(horizon > 0.0)) throw std::invalid_argument("time-average horizon must be positive");
    if (samples < 2) throw std::invalid_argument("time average needs at least 2 samples");

    // Welford accumulation over midpoint samples.
    const double dt = horizon / static_cast<double>(samples);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double f = decoherence_factor(bath, (static_cast<double>(k) + 0.5) * dt);
        const double delta = f - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (f - mean);
    }
    return {mean, std::sqrt(m2 / static_cast<double>(samples))};
}

ComplexMatrix2 reduced_density_matrix(const CentralSpinParams& central, Complex f, double t) {
    if (std::abs(f) > 1.0 + 1e-12) {
        throw std::invalid_argument("decoherence value exceeds unit modulus: |f| = " + std::to_string(std::abs(f)));
    }
    const double a = central.alpha();
    const double b = central.beta();
    const Complex coherence = a * b * f * std::polar(1.0, -central.omega * t);
    return {a * a, coherence, std::conj(coherence), b * b};
}

}  // namespace centralspin
