#include "wheatstone/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wheatstone/errors.hpp"

namespace wheatstone {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw DomainError(std::string(name) + " must be finite");
}

void require_non_negative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0)
        throw DomainError(std::string(name) + " must be non-negative");
}

}  // namespace

void BridgeConfig::validate() const {
    for (std::size_t i = 0; i < omega.size(); ++i)
        require_finite(omega[i], "omega");
    require_finite(j1, "j1");
    require_finite(j2, "j2");
    require_finite(j3, "j3");
    require_finite(jx, "jx");
    require_finite(j0, "j0");
    require_finite(kappa1, "kappa1");
    require_finite(kappa4, "kappa4");
    if (kappa1 <= 0 || kappa4 <= 0)
        throw DomainError("bath rates kappa1 and kappa4 must be positive");
    require_non_negative(t1, "t1");
    require_non_negative(t4, "t4");
    if (n1)
        require_non_negative(*n1, "n1");
    if (n4)
        require_non_negative(*n4, "n4");
    require_non_negative(kappa2, "kappa2");
    require_non_negative(kappa3, "kappa3");
    require_non_negative(gamma2, "gamma2");
    require_non_negative(gamma3, "gamma3");
}

double BridgeConfig::occupation1() const { return n1 ? *n1 : thermal_occupation(omega[0], t1); }

double BridgeConfig::occupation4() const { return n4 ? *n4 : thermal_occupation(omega[3], t4); }

void BridgeConfig::require_gain_compensated() const {
    if (!gain_compensated())
        throw DomainError("gain compensation requires gamma2 == kappa2 and gamma3 == kappa3");
}

BridgeConfig BridgeConfig::balanced() const {
    BridgeConfig out = *this;
    out.jx = balance_coupling(j1, j2, j3);
    return out;
}

double thermal_occupation(double omega, double t) {
    if (!std::isfinite(omega) || omega <= 0)
        throw DomainError("thermal occupation needs a positive finite frequency");
    require_non_negative(t, "temperature");
    if (t == 0)
        return 0.0;
    return 1.0 / std::expm1(omega / t);
}

NoiseSpec noise_spec(const BridgeConfig& config) {
    NoiseSpec spec;
    spec.n1 = config.occupation1();
    spec.n4 = config.occupation4();
    spec.channels.push_back({0, config.kappa1, spec.n1, ChannelKind::loss});
    spec.channels.push_back({3, config.kappa4, spec.n4, ChannelKind::loss});
    if (config.kappa2 > 0)
        spec.channels.push_back({1, config.kappa2, 0.0, ChannelKind::loss});
    if (config.kappa3 > 0)
        spec.channels.push_back({2, config.kappa3, 0.0, ChannelKind::loss});
    if (config.gamma2 > 0)
        spec.channels.push_back({1, config.gamma2, 0.0, ChannelKind::gain});
    if (config.gamma3 > 0)
        spec.channels.push_back({2, config.gamma3, 0.0, ChannelKind::gain});
    return spec;
}

std::vector<NoiseInput<double>> bridge_noise_inputs(const BridgeConfig& config) {
    std::vector<NoiseInput<double>> inputs;
    for (const auto& ch : noise_spec(config).channels) {
        NoiseInput<double> in{ComplexVector<double>::Zero(4), ComplexVector<double>::Zero(4), ch.occupation};
        const double amp = std::sqrt(2.0 * ch.rate);
        if (ch.kind == ChannelKind::loss)
            in.annihilation(ch.mode) = amp;
        else
            in.creation(ch.mode) = -amp;
        inputs.push_back(std::move(in));
    }
    return inputs;
}

DriftModel<double> build_drift(const BridgeConfig& config) {
    config.validate();
    const std::complex<double> i(0, 1);
    ComplexMatrix<double> m = ComplexMatrix<double>::Zero(4, 4);
    m(0, 0) = -i * config.omega[0] - config.kappa1;
    m(1, 1) = -i * config.omega[1] - config.kappa2 + config.gamma2;
    m(2, 2) = -i * config.omega[2] - config.kappa3 + config.gamma3;
    m(3, 3) = -i * config.omega[3] - config.kappa4;
    m(0, 1) = m(1, 0) = -i * config.j1;
    m(0, 2) = m(2, 0) = -i * config.j2;
    m(1, 2) = m(2, 1) = -i * config.j0;
    m(1, 3) = m(3, 1) = -i * config.j3;
    m(2, 3) = m(3, 2) = -i * config.jx;
    return make_drift_model(m, bridge_noise_inputs(config));
}

double balance_coupling(double j1, double j2, double j3) {
    if (j1 == 0)
        throw DomainError("balance coupling undefined for J1 = 0");
    return j2 * j3 / j1;
}

J0Requirement required_j0(double omega2, double omega3, double j1, double j2) {
    const double scale = std::max(std::abs(j1), std::abs(j2));
    if (std::abs(j1 - j2) <= kSymmetricTolerance * scale) {
        const double wscale = std::max({std::abs(omega2), std::abs(omega3), 1.0});
        if (std::abs(omega3 - omega2) > kSymmetricTolerance * wscale)
            throw NoBalancePossible("J1 = J2 requires omega2 = omega3 for a dark mode");
        return Unconstrained{};
    }
    return (omega3 - omega2) * j1 * j2 / (j2 * j2 - j1 * j1);
}

double effective_coupling(double g, double beta) { return g * beta; }

double relaxation_time(const BridgeConfig& config) {
    const double rate = 2 * config.j1 * config.j1 / config.kappa1 + 2 * config.j3 * config.j3 / config.kappa4;
    if (!(rate > 0))
        throw DomainError("relaxation time undefined when J1 = J3 = 0");
    return 1.0 / rate;
}

bool is_symmetric(const BridgeConfig& config) {
    const double scale = std::max(std::abs(config.j1), std::abs(config.j2));
    return std::abs(config.j1 - config.j2) <= kSymmetricTolerance * scale;
}

bool is_balanced(const BridgeConfig& config, double tol) {
    if (config.j1 == 0 || config.j2 == 0)
        return false;
    const double jb = balance_coupling(config.j1, config.j2, config.j3);
    if (std::abs(config.jx - jb) > tol * std::max(std::abs(jb), 1e-300))
        return false;
    // omega3 - omega2 = J0 (J2/J1 - J1/J2)
    const double lhs = config.omega[2] - config.omega[1];
    const double rhs = config.j0 * (config.j2 / config.j1 - config.j1 / config.j2);
    const double scale = std::max({std::abs(config.omega[1]), std::abs(config.omega[2]), std::abs(config.j0), 1.0});
    return std::abs(lhs - rhs) <= tol * scale;
}

}  // namespace wheatstone
