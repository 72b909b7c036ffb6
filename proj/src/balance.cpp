#include "wheatstone/balance.hpp"

#include <algorithm>
#include <cmath>

#include "wheatstone/dynamics.hpp"
#include "wheatstone/errors.hpp"
#include "wheatstone/parallel.hpp"

namespace wheatstone {

DarkBrightModes dark_bright_decompose(const BridgeConfig& config) {
    const double j1 = config.j1, j2 = config.j2;
    if (j1 == 0 || j2 == 0)
        throw DomainError("dark/bright decomposition needs non-zero J1 and J2");
    const double w2 = config.omega[1], w3 = config.omega[2];
    const double norm = j1 * j1 + j2 * j2;

    // sum of the two diagonal conditions and the off-diagonal one:
    // (l+ + l-) (J1^2 + J2^2) = w2 + w3,  l+ - l- = J0 / (J1 J2)
    const double sum = (w2 + w3) / norm;
    const double diff = config.j0 / (j1 * j2);
    DarkBrightModes out;
    out.bright = Eigen::Vector2d(j1, j2);
    out.dark = Eigen::Vector2d(j2, -j1);
    out.lambda_plus = 0.5 * (sum + diff);
    out.lambda_minus = 0.5 * (sum - diff);

    const double r2 = out.lambda_plus * j1 * j1 + out.lambda_minus * j2 * j2 - w2;
    const double r3 = out.lambda_plus * j2 * j2 + out.lambda_minus * j1 * j1 - w3;
    const double scale = std::max({std::abs(w2), std::abs(w3), std::abs(config.j0), 1.0});
    if (std::abs(r2) > 1e-10 * scale || std::abs(r3) > 1e-10 * scale)
        throw NoBalancePossible("no dark mode: omega3 - omega2 != J0 (J2/J1 - J1/J2)");
    return out;
}

double check_dark_invariance(const BridgeConfig& config, double horizon, double alpha, int samples) {
    if (!(horizon >= 0) || samples < 2)
        throw DomainError("dark invariance check needs a non-negative horizon and at least two samples");
    const double a0 = std::abs(config.j2 * alpha);
    if (a0 == 0)
        return 0.0;
    const auto model = build_drift(config);
    ComplexVector<double> mean0 = ComplexVector<double>::Zero(4);
    mean0(1) = alpha;
    double worst = 0;
    for (int k = 0; k < samples; ++k) {
        const double t = horizon * k / (samples - 1);
        const auto mean = evolve_mean(model, mean0, t);
        const double dark = std::abs(config.j2 * mean(1) - config.j1 * mean(2));
        worst = std::max(worst, std::abs(dark - a0) / a0);
    }
    return worst;
}

bool detect_balance(std::complex<double> signal, double alpha, double epsilon) {
    if (!(alpha > 0))
        throw DomainError("balance detection needs a positive reference amplitude");
    return std::abs(signal) > epsilon * alpha;
}

double balanced_signal_reference(const BridgeConfig& config, double alpha) {
    const double norm = config.j1 * config.j1 + config.j2 * config.j2;
    if (norm == 0)
        throw DomainError("balanced signal undefined for J1 = J2 = 0");
    return config.j2 * config.j2 * alpha / norm;
}

bool detect_balance(const BridgeConfig& config, std::complex<double> signal, double alpha, double epsilon) {
    return detect_balance(signal, balanced_signal_reference(config, alpha), epsilon);
}

double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature == 0)
        return x1;
    // vertex of y = y1 + b (x - x1) + c (x - x1)^2
    const double b = d01 + curvature * (x1 - x0);
    return x1 - b / (2 * curvature);
}

std::vector<ProfilePoint> tuning_profile(const BridgeConfig& device, std::span<const double> grid, double alpha, double t) {
    if (grid.size() < 3)
        throw DomainError("tuning grid needs at least three points");
    if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw DomainError("tuning grid must be strictly increasing");
    require_finite_time(t);

    const auto magnitudes = parallel_map(grid.size(), [&](std::size_t k) {
        BridgeConfig probe = device;
        probe.j3 = grid[k];
        ComplexVector<double> mean0 = ComplexVector<double>::Zero(4);
        mean0(1) = alpha;
        return std::abs(evolve_mean(build_drift(probe), mean0, t)(1));
    });
    std::vector<ProfilePoint> profile;
    profile.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        profile.push_back({grid[k], magnitudes[k]});
    return profile;
}

JxEstimate locate_balance(const BridgeConfig& device, std::vector<ProfilePoint> profile) {
    if (profile.size() < 3)
        throw DomainError("tuning profile needs at least three points");
    if (device.j1 == 0)
        throw DomainError("J1 must be non-zero to convert the balance point into Jx");
    const auto it = std::max_element(profile.begin(), profile.end(),
                                     [](const ProfilePoint& a, const ProfilePoint& b) { return a.magnitude < b.magnitude; });
    const auto peak = static_cast<std::size_t>(it - profile.begin());
    if (peak == 0 || peak + 1 == profile.size())
        throw InconclusiveSweep("envelope maximum lies on the tuning-grid boundary");

    const auto& l = profile[peak - 1];
    const auto& c = profile[peak];
    const auto& r = profile[peak + 1];
    JxEstimate out;
    out.j3_star = parabolic_vertex(l.j3, l.magnitude, c.j3, c.magnitude, r.j3, r.magnitude);
    out.jx = balance_coupling(device.j1, device.j2, out.j3_star);
    out.profile = std::move(profile);
    return out;
}

JxEstimate estimate_jx(const BridgeConfig& device, std::span<const double> grid, double alpha, double t) {
    return locate_balance(device, tuning_profile(device, grid, alpha, t));
}

}  // namespace wheatstone
