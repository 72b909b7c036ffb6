#include "wheatstone/dynamics.hpp"

#include <cmath>
#include <limits>

#include "wheatstone/errors.hpp"

namespace wheatstone {

Eigen::Matrix4d probe_block(const Eigen::MatrixXd& cov) {
    Eigen::Matrix4d block;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            block(r, c) = cov(kProbeQuadratures[r], kProbeQuadratures[c]);
    return block;
}

OracleSignal oracle_signal(const BridgeConfig& config, double alpha, double t) {
    if (!std::isfinite(t) || t < 0)
        throw DomainError("oracle time must be finite and non-negative");
    if (!std::isfinite(alpha))
        throw DomainError("coherent amplitude must be finite");
    const auto model = build_drift(config);
    ComplexVector<double> amplitudes = ComplexVector<double>::Zero(4);
    amplitudes(1) = alpha;
    const auto state = propagate(model, GaussianMoments<double>::coherent(amplitudes), t);
    return {state.mean(1), state.mean(2), probe_block(state.cov), state.cov};
}

double settling_time(const BridgeConfig& config, double tol) {
    if (!(tol > 0 && tol < 1))
        throw DomainError("settling tolerance must lie in (0, 1)");
    BridgeConfig reference = config;
    if (config.j1 != 0)
        reference.jx = balance_coupling(config.j1, config.j2, config.j3);
    const auto model = build_drift(reference);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(model.m_complex, false);
    const double dark_threshold = 1e-9 * (config.kappa1 + config.kappa4);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& ev : solver.eigenvalues()) {
        const double rate = -ev.real();
        if (std::abs(rate) <= dark_threshold)
            continue;
        if (rate < 0)
            continue;  // amplifying modes never settle
        gap = std::min(gap, rate);
    }
    if (!std::isfinite(gap))
        return 0.0;
    return std::log(1.0 / tol) / gap;
}

double long_time_horizon(const BridgeConfig& config, double multiplier) {
    if (!(multiplier > 0))
        throw DomainError("horizon multiplier must be positive");
    return std::max(multiplier * relaxation_time(config), settling_time(config));
}

}  // namespace wheatstone
