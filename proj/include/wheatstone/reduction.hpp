#pragma once

// Adiabatic elimination of the strongly damped end modes 1 and 4.
//
// In the resonant regime kappa1, kappa4 >> |omega_i - omega_j| the probe modes
// obey d(a2, a3)/dt = M2 (a2, a3) + (A2in, A3in) with
//
//   M2 = [[-i w2 - J1^2/k1 - J3^2/k4,   -i J0 - J1 J2/k1 - J3 Jx/k4],
//         [-i J0 - J1 J2/k1 - J3 Jx/k4, -i w3 - J2^2/k1 - Jx^2/k4  ]]
//
// plus -kappa_j + gamma_j on the diagonal when modes 2/3 have loss and gain,
// and A_in = -sqrt(2) i (J a1in / sqrt(k1) + J' a4in / sqrt(k4)) + sqrt(2 k) a_in - sqrt(2 g) d_in^dag.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wheatstone/linear_system.hpp"
#include "wheatstone/network.hpp"

namespace wheatstone {

using cdouble = std::complex<double>;

/// One bath operator feeding (A2in, A3in).
struct NoiseTerm {
    std::string source;  // "a1in", "a4in", "a2in", "a3in", "d2in", "d3in"
    Eigen::Vector2cd coefficient;
    bool creation = false;  // enters as its adjoint (gain channels)
    double occupation = 0;
};

struct ValidityDiagnostics {
    /// min(kappa1, kappa4) / max |omega_i - omega_j|; infinite for degenerate frequencies.
    double detuning_ratio = 0;
    /// min(kappa1, kappa4) / max |J|; infinite when every coupling vanishes.
    double coupling_ratio = 0;
    bool adiabatic = false;
};

struct ReducedModel {
    Eigen::Matrix2cd m2;
    std::vector<NoiseTerm> noise_map;
    ValidityDiagnostics validity;

    /// Two-mode Gaussian model built from m2 and the noise map.
    DriftModel<double> drift() const;
};

/// Ratio at or above which the adiabatic regime is considered valid.
inline constexpr double kAdiabaticRatio = 10.0;

ReducedModel adiabatic_reduce(const BridgeConfig& config);

struct BalancedSpectrum {
    /// Numerical eigenvalues of M2: dark has the smallest |Re|.
    cdouble dark;
    cdouble damped;
    /// Unit eigenvector of the dark eigenvalue.
    Eigen::Vector2cd dark_vector;
    /// Closed forms. J1 != J2: dark -i (J1^2 w2 - J2^2 w3) / (J1^2 - J2^2), damped = dark - decay.
    /// J1 = J2: dark i (J0 - w3), damped = dark - 2 J1^2/k1 - 2 J3^2/k4.
    cdouble closed_form_dark;
    cdouble closed_form_damped;
    /// Dark closed form with omega2 and omega3 exchanged; only for J1 != J2.
    std::optional<cdouble> swapped_dark;
    bool closed_form_discrepancy = false;
};

/// Throws NotBalanced when no eigenvalue of M2 is purely imaginary.
BalancedSpectrum balanced_eigenvalues(const BridgeConfig& config);

/// Dark-mode projection e^{E t} J2 (J2 a2(0) - J1 a3(0)) / (J1^2 + J2^2) and its mode-3 partner.
std::pair<cdouble, cdouble> longtime_mean(const BridgeConfig& config, cdouble mean0_2, cdouble mean0_3, double t);

struct EnvelopeExpansion {
    cdouble gamma_coeff;
    cdouble lambda_coeff;
    double y = 0;
};

/// Gamma = (J2^2 + i J0 k1) / (2 d), Lambda = J3 k1 / d with d = J3^2 k1 + J2^2 k4 + i J0 k1 k4.
EnvelopeExpansion envelope_coefficients(const BridgeConfig& config, double y);

/// Second-order-in-y envelope of (<a2>, <a3>) for the symmetric bridge (J1 = J2, omega2 = omega3)
/// at detuning y = Jx - J3, |y| < 1.
std::pair<cdouble, cdouble> envelope_expansion(const BridgeConfig& config, double y, double t,
                                               std::pair<cdouble, cdouble> mean0);

/// d/dy of envelope_expansion.
std::pair<cdouble, cdouble> envelope_derivative(const BridgeConfig& config, double y, double t,
                                                std::pair<cdouble, cdouble> mean0);

/// e^{M2 t} a0 for the reduced model at the configured Jx.
Eigen::Vector2cd reduced_mean(const BridgeConfig& config, const Eigen::Vector2cd& a0, double t);

/// Exact d/dJx of e^{M2 t} a0, taken from the block exponential exp([[M2, dM2], [0, M2]] t).
Eigen::Vector2cd reduced_mean_derivative(const BridgeConfig& config, const Eigen::Vector2cd& a0, double t);

}  // namespace wheatstone
