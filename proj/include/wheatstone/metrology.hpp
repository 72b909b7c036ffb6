#pragma once

// Precision of the Jx estimate: homodyne error propagation, Gaussian quantum
// Fisher information and the resulting Cramer-Rao bound.
//
// Homodyne quadrature: X_phi = a e^{-i phi} + a^dag e^{i phi}, so
// <X_phi> = 2 Re(e^{-i phi} <a>) and delta Jx = sqrt(Var X_phi) / |d<X_phi>/dJx|.

#include <complex>

#include <Eigen/Dense>

#include "wheatstone/network.hpp"

namespace wheatstone {

struct FluctuationParams {
    /// (J1^2 N1 k4 + J3^2 N4 k1) / (J1^2 k4 + J3^2 k1)
    double f = 0;
    /// 2 f J1^2 / (J1^2 + J2^2): excess noise of the probe-mode covariance at balance.
    double f_c = 0;
    /// f_c + k1 k2 k4 / (2 (J1^2 k4 + J3^2 k1)) for gain-compensated loss on modes 2, 3.
    double f_c_prime = 0;
};

FluctuationParams quantum_fluctuations(const BridgeConfig& config);

/// Excess noise entering the bound: f_c, or f_c' when modes 2 and 3 carry
/// compensated loss (requires kappa_j = gamma_j and kappa2 = kappa3).
double effective_fc(const BridgeConfig& config);

/// g = 2 J2 sqrt((1+fc) J1^2 + fc J2^2) / ((J1^2 + J2^2)(1 + fc)).
double g_coefficient(double j1, double j2, double fc);

/// [(1+fc) J1^2 + (fc-1) J2^2]^2 / ((J1^2+J2^2)^2 (1+fc)^2), which equals 1 - g^2.
double one_minus_g_squared(double j1, double j2, double fc);

/// mu = (J1^2 + J2^2)^2 (J3^2 k1 + J1^2 k4 + i J0 J1 k1 k4 / J2).
std::complex<double> mu_factor(const BridgeConfig& config);

/// sqrt(1+f) sqrt((J3^2 k1 + J2^2 k4)^2 + J0^2 k1^2 k4^2) / (J3 k1 alpha); symmetric bridge.
double symmetric_optimal_precision(const BridgeConfig& config, double alpha);

/// sqrt(1+f_c) |mu| / (4 J1^3 J2 J3 k1 alpha).
double asymmetric_optimal_precision(const BridgeConfig& config, double alpha);

/// Phase-optimised homodyne precision at balance for the applicable branch.
/// Throws NotBalanced off balance.
double optimal_homodyne_precision(const BridgeConfig& config, double alpha);

enum class DerivativeMode {
    /// Closed forms: envelope expansion (J1 = J2, |y| < 1) or the balanced derivative (J1 != J2, y = 0).
    analytic,
    /// Exact derivative of the reduced two-mode propagation.
    reduced,
    /// Central finite differences (h = 1e-4 J3) on the full 4-mode dynamics.
    numeric,
};

/// d<a2(t)>/dJx at Jx = J2 J3 / J1 + y for the initial state |alpha>_2 |0>_3.
std::complex<double> signal_derivative(const BridgeConfig& config, double t, double alpha, double y, DerivativeMode mode);

/// Homodyne delta Jx with the quadrature angle phi2.
/// Returns +infinity when the signal slope along phi2 vanishes.
double homodyne_precision(const BridgeConfig& config, double phi2, double t, double alpha, double y,
                          DerivativeMode mode = DerivativeMode::analytic);

/// Quadrature angle arg(d<a2>/dJx) that maximises the homodyne slope.
double optimal_phase(const BridgeConfig& config, double t, double alpha, double y,
                     DerivativeMode mode = DerivativeMode::analytic);

/// homodyne_precision minimised over phi2. In numeric mode the oracle covariance
/// of (q2, p2) is used, giving 1 / sqrt(g^T C^{-1} g) with g the quadrature slope.
double phase_optimized_precision(const BridgeConfig& config, double t, double alpha, double y,
                                 DerivativeMode mode = DerivativeMode::analytic);

/// Probe covariance in the (q2, q3, p2, p3) ordering: blocks I + (fc/J1^2) (J1, J2)(J1, J2)^T.
Eigen::Matrix4d balanced_covariance(const BridgeConfig& config, double fc);

/// Quadrature-mean slope (q2, q3, p2, p3)' at balance, with phase theta' - i E1 t.
Eigen::Vector4d balanced_mean_slope(const BridgeConfig& config, double alpha, double t = 0);

struct QfiTerms {
    double covariance_term = 0;
    double purity_term = 0;
    double mean_term = 0;
    double total() const { return covariance_term + purity_term + mean_term; }
};

/// Gaussian QFI pieces: Tr[(C^-1 C')^2] / (2(1+P^2)), 2 P'^2 / (1 - P^4) and X'^T C^-1 X',
/// with purity P = 1/sqrt(det C).
QfiTerms gaussian_qfi_terms(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& dcov, const Eigen::VectorXd& dmean);

enum class QfiMode { full, dominant };

/// QFI of the balanced probe state built from balanced_covariance and balanced_mean_slope.
double gaussian_qfi(const BridgeConfig& config, double alpha, QfiMode mode = QfiMode::dominant, double t = 0);

/// (alpha J1^2 J3 k1)^2 / |mu|^2 * 4 (1+fc) J1^2 (J1^2+J2^2)^2 / ((1+fc) J1^2 + fc J2^2).
double closed_form_qfi(const BridgeConfig& config, double alpha);

struct CrbResult {
    double bound = 0;
    double g = 0;
    double fc = 0;
};

/// g sqrt(1 + fc) |mu| / (4 J1^3 J2 J3 k1 alpha) with fc = effective_fc(config).
CrbResult crb_bound(const BridgeConfig& config, double alpha);

/// Inverts crb_bound for the excess noise fc that produces `bound`.
double implied_fluctuation(const BridgeConfig& config, double bound, double alpha);

struct PrecisionReport {
    double delta_homodyne = 0;
    double delta_homodyne_optimal = 0;
    double qfi = 0;
    double crb = 0;
    double g = 0;
    /// Quadrature angle maximising the slope at the evaluation time.
    double optimal_phi2 = 0;
    FluctuationParams fluctuations;
};

/// delta_homodyne is evaluated at (phi2, t, y) in analytic mode when a closed form
/// exists, otherwise from the reduced model.
PrecisionReport precision_report(const BridgeConfig& config, double alpha, double phi2, double t, double y);

}  // namespace wheatstone
