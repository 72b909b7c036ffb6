#include "wheatstone/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "wheatstone/errors.hpp"

namespace wheatstone {

namespace {

const cdouble I(0, 1);

Eigen::Matrix2cd reduced_drift(const BridgeConfig& c) {
    Eigen::Matrix2cd m;
    const cdouble off = -I * c.j0 - c.j1 * c.j2 / c.kappa1 - c.j3 * c.jx / c.kappa4;
    m(0, 0) = -I * c.omega[1] - c.j1 * c.j1 / c.kappa1 - c.j3 * c.j3 / c.kappa4 - c.kappa2 + c.gamma2;
    m(1, 1) = -I * c.omega[2] - c.j2 * c.j2 / c.kappa1 - c.jx * c.jx / c.kappa4 - c.kappa3 + c.gamma3;
    m(0, 1) = off;
    m(1, 0) = off;
    return m;
}

Eigen::Matrix2cd reduced_drift_jx_derivative(const BridgeConfig& c) {
    Eigen::Matrix2cd dm;
    dm << 0.0, -c.j3 / c.kappa4, -c.j3 / c.kappa4, -2.0 * c.jx / c.kappa4;
    return dm;
}

ValidityDiagnostics diagnose(const BridgeConfig& c) {
    const double kmin = std::min(c.kappa1, c.kappa4);
    double detune = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            detune = std::max(detune, std::abs(c.omega[i] - c.omega[j]));
    const double coupling = std::max({std::abs(c.j1), std::abs(c.j2), std::abs(c.j3), std::abs(c.jx)});
    const double inf = std::numeric_limits<double>::infinity();
    ValidityDiagnostics v;
    v.detuning_ratio = detune > 0 ? kmin / detune : inf;
    v.coupling_ratio = coupling > 0 ? kmin / coupling : inf;
    v.adiabatic = v.detuning_ratio >= kAdiabaticRatio && v.coupling_ratio >= kAdiabaticRatio;
    return v;
}

}  // namespace

DriftModel<double> ReducedModel::drift() const {
    std::vector<NoiseInput<double>> inputs;
    inputs.reserve(noise_map.size());
    for (const auto& term : noise_map) {
        NoiseInput<double> in{ComplexVector<double>::Zero(2), ComplexVector<double>::Zero(2), term.occupation};
        if (term.creation)
            in.creation = term.coefficient;
        else
            in.annihilation = term.coefficient;
        inputs.push_back(std::move(in));
    }
    return make_drift_model<double>(m2, inputs);
}

ReducedModel adiabatic_reduce(const BridgeConfig& config) {
    config.validate();
    ReducedModel out;
    out.m2 = reduced_drift(config);

    const double s1 = std::sqrt(2.0 / config.kappa1);
    const double s4 = std::sqrt(2.0 / config.kappa4);
    out.noise_map.push_back({"a1in", Eigen::Vector2cd(-I * s1 * config.j1, -I * s1 * config.j2), false, config.occupation1()});
    out.noise_map.push_back({"a4in", Eigen::Vector2cd(-I * s4 * config.j3, -I * s4 * config.jx), false, config.occupation4()});
    if (config.kappa2 > 0)
        out.noise_map.push_back({"a2in", Eigen::Vector2cd(std::sqrt(2 * config.kappa2), 0.0), false, 0.0});
    if (config.gamma2 > 0)
        out.noise_map.push_back({"d2in", Eigen::Vector2cd(-std::sqrt(2 * config.gamma2), 0.0), true, 0.0});
    if (config.kappa3 > 0)
        out.noise_map.push_back({"a3in", Eigen::Vector2cd(0.0, std::sqrt(2 * config.kappa3)), false, 0.0});
    if (config.gamma3 > 0)
        out.noise_map.push_back({"d3in", Eigen::Vector2cd(0.0, -std::sqrt(2 * config.gamma3)), true, 0.0});

    out.validity = diagnose(config);
    return out;
}

BalancedSpectrum balanced_eigenvalues(const BridgeConfig& config) {
    config.validate();
    const Eigen::Matrix2cd m2 = reduced_drift(config);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m2);
    const auto& ev = solver.eigenvalues();

    // argmin |Re|, ties broken by the larger |Im|
    int dark = 0;
    const double r0 = std::abs(ev(0).real()), r1 = std::abs(ev(1).real());
    if (r1 < r0 || (r1 == r0 && std::abs(ev(1).imag()) > std::abs(ev(0).imag())))
        dark = 1;

    const double scale = std::max(1.0, m2.cwiseAbs().maxCoeff());
    if (std::abs(ev(dark).real()) > 1e-9 * scale)
        throw NotBalanced("M2 has no purely imaginary eigenvalue: the bridge is not balanced");

    BalancedSpectrum out;
    out.dark = ev(dark);
    out.damped = ev(1 - dark);
    out.dark_vector = solver.eigenvectors().col(dark).normalized();

    const double j1s = config.j1 * config.j1, j2s = config.j2 * config.j2, j3s = config.j3 * config.j3;
    const double w2 = config.omega[1], w3 = config.omega[2];
    if (is_symmetric(config)) {
        out.closed_form_dark = I * (config.j0 - w3);
        out.closed_form_damped = out.closed_form_dark - 2 * j1s / config.kappa1 - 2 * j3s / config.kappa4;
    } else {
        out.closed_form_dark = -I * (j1s * w2 - j2s * w3) / (j1s - j2s);
        const double decay = (j1s + j2s) * (j3s * config.kappa1 + j1s * config.kappa4) / (j1s * config.kappa1 * config.kappa4);
        out.closed_form_damped = -decay + out.closed_form_dark;
        out.swapped_dark = -I * (j1s * w3 - j2s * w2) / (j1s - j2s);
    }
    out.closed_form_discrepancy = std::abs(out.closed_form_dark - out.dark) > 1e-9 * std::max(1.0, std::abs(out.dark));
    return out;
}

std::pair<cdouble, cdouble> longtime_mean(const BridgeConfig& config, cdouble mean0_2, cdouble mean0_3, double t) {
    require_finite_time(t);
    const auto spectrum = balanced_eigenvalues(config);
    const double norm = config.j1 * config.j1 + config.j2 * config.j2;
    const cdouble phase = std::exp(spectrum.dark * t);
    const cdouble dark0 = config.j2 * mean0_2 - config.j1 * mean0_3;
    return {phase * config.j2 * dark0 / norm, -phase * config.j1 * dark0 / norm};
}

EnvelopeExpansion envelope_coefficients(const BridgeConfig& c, double y) {
    const cdouble d = c.j3 * c.j3 * c.kappa1 + c.j2 * c.j2 * c.kappa4 + I * c.j0 * c.kappa1 * c.kappa4;
    EnvelopeExpansion e;
    e.gamma_coeff = (c.j2 * c.j2 + I * c.j0 * c.kappa1) / (2.0 * d);
    e.lambda_coeff = c.j3 * c.kappa1 / d;
    e.y = y;
    return e;
}

namespace {

// Checks the symmetric-bridge preconditions and returns the dark eigenvalue
// of the balanced (Jx = J3) configuration.
cdouble symmetric_dark_eigenvalue(const BridgeConfig& config, double y, double t) {
    require_finite_time(t);
    if (!is_symmetric(config))
        throw OutOfRegime("envelope expansion requires J1 = J2");
    const double wscale = std::max({std::abs(config.omega[1]), std::abs(config.omega[2]), 1.0});
    if (std::abs(config.omega[1] - config.omega[2]) > kSymmetricTolerance * wscale)
        throw OutOfRegime("envelope expansion requires omega2 = omega3");
    if (!(std::abs(y) < 1))
        throw OutOfRegime("envelope expansion is only valid for |y| < 1");
    BridgeConfig at_balance = config;
    at_balance.jx = config.j3;
    return balanced_eigenvalues(at_balance).dark;
}

}  // namespace

std::pair<cdouble, cdouble> envelope_expansion(const BridgeConfig& config, double y, double t,
                                               std::pair<cdouble, cdouble> mean0) {
    const cdouble e1 = symmetric_dark_eigenvalue(config, y, t);
    const auto k = envelope_coefficients(config, y);
    const cdouble envelope = 0.5 * std::exp(e1 * t - k.gamma_coeff * y * y * t);
    const auto [a2, a3] = mean0;
    return {envelope * ((1.0 + k.lambda_coeff * y) * a2 - a3), -envelope * (a2 - (1.0 - k.lambda_coeff * y) * a3)};
}

std::pair<cdouble, cdouble> envelope_derivative(const BridgeConfig& config, double y, double t,
                                                std::pair<cdouble, cdouble> mean0) {
    const cdouble e1 = symmetric_dark_eigenvalue(config, y, t);
    const auto k = envelope_coefficients(config, y);
    const cdouble envelope = 0.5 * std::exp(e1 * t - k.gamma_coeff * y * y * t);
    const cdouble decay = 2.0 * k.gamma_coeff * y * t;
    const auto [a2, a3] = mean0;
    const cdouble s2 = (1.0 + k.lambda_coeff * y) * a2 - a3;
    const cdouble s3 = a2 - (1.0 - k.lambda_coeff * y) * a3;
    return {envelope * (k.lambda_coeff * a2 - decay * s2), -envelope * (k.lambda_coeff * a3 - decay * s3)};
}

Eigen::Vector2cd reduced_mean(const BridgeConfig& config, const Eigen::Vector2cd& a0, double t) {
    require_finite_time(t);
    const Eigen::Matrix2cd mt = reduced_drift(config) * cdouble(t);
    return mt.exp() * a0;
}

Eigen::Vector2cd reduced_mean_derivative(const BridgeConfig& config, const Eigen::Vector2cd& a0, double t) {
    require_finite_time(t);
    Eigen::Matrix4cd block = Eigen::Matrix4cd::Zero();
    const Eigen::Matrix2cd m2 = reduced_drift(config);
    block.topLeftCorner<2, 2>() = m2;
    block.bottomRightCorner<2, 2>() = m2;
    block.topRightCorner<2, 2>() = reduced_drift_jx_derivative(config);
    const Eigen::Matrix4cd bt = block * cdouble(t);
    const Eigen::Matrix4cd e = bt.exp();
    return e.topRightCorner<2, 2>() * a0;
}

}  // namespace wheatstone
