#pragma once

// Brute-force reference: exact Gaussian moments of the full 4-mode bridge.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "wheatstone/linear_system.hpp"
#include "wheatstone/network.hpp"

namespace wheatstone {

/// Quadrature indices of (q2, q3, p2, p3) inside the 8-dimensional (q1..q4, p1..p4) vector.
inline constexpr std::array<Eigen::Index, 4> kProbeQuadratures{1, 2, 5, 6};

struct OracleSignal {
    std::complex<double> a2;
    std::complex<double> a3;
    /// Covariance of (q2, q3, p2, p3).
    Eigen::Matrix4d cov_block;
    /// Full 8x8 covariance.
    Eigen::MatrixXd cov;
};

Eigen::Matrix4d probe_block(const Eigen::MatrixXd& cov);

/// Moments of modes 2 and 3 at time t for the initial state |0>|alpha>|0>|0>.
OracleSignal oracle_signal(const BridgeConfig& config, double alpha, double t);

/// Time after which every non-dark eigenmode of the balanced full drift has decayed by `tol`.
///
/// Jx is moved to its balance value first so the result does not depend on the
/// (possibly unknown) coupling; eigenvalues with |Re| below 1e-9 (kappa1 + kappa4)
/// are treated as dark and ignored.
double settling_time(const BridgeConfig& config, double tol = 1e-6);

/// Default horizon for long-time quantities: max(multiplier * tau, settling_time).
double long_time_horizon(const BridgeConfig& config, double multiplier = 10.0);

}  // namespace wheatstone
