#pragma once

// Balance detection through the dark mode A- = J2 a2 - J1 a3, and the tuning
// protocol that recovers Jx from the balance point Jx = J2 J3 / J1.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wheatstone/network.hpp"

namespace wheatstone {

struct DarkBrightModes {
    /// (J1, J2): A+ = J1 a2 + J2 a3
    Eigen::Vector2d bright;
    /// (J2, -J1): A- = J2 a2 - J1 a3
    Eigen::Vector2d dark;
    /// Coefficients of the unnormalised forms lambda+ A+^dag A+ + lambda- A-^dag A-.
    double lambda_plus = 0;
    double lambda_minus = 0;
};

/// Throws NoBalancePossible when omega3 - omega2 != J0 (J2/J1 - J1/J2).
DarkBrightModes dark_bright_decompose(const BridgeConfig& config);

/// Largest relative change of |<A-(t)>| on a uniform grid over [0, horizon], starting
/// from |0>|alpha>|0>|0> under the full 4-mode dynamics. Zero for a vanishing initial amplitude.
double check_dark_invariance(const BridgeConfig& config, double horizon, double alpha = 1.0, int samples = 101);

/// |signal| > epsilon * alpha.
bool detect_balance(std::complex<double> signal, double alpha, double epsilon);

/// Magnitude J2^2 alpha / (J1^2 + J2^2) of the balanced long-time <a2> for the initial state |alpha>|0>.
double balanced_signal_reference(const BridgeConfig& config, double alpha);

/// detect_balance against epsilon times balanced_signal_reference.
bool detect_balance(const BridgeConfig& config, std::complex<double> signal, double alpha, double epsilon = 0.1);

struct ProfilePoint {
    double j3 = 0;
    double magnitude = 0;
};

struct JxEstimate {
    double jx = 0;
    double j3_star = 0;
    std::vector<ProfilePoint> profile;
};

/// Vertex abscissa of the parabola through three points (x0 < x1 < x2).
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2);

/// |<a2(t)>| of the full model for each J3 in `grid` (J0 held fixed), from |0>|alpha>|0>|0>.
std::vector<ProfilePoint> tuning_profile(const BridgeConfig& device, std::span<const double> grid, double alpha, double t);

/// Peak of a tuning profile refined by a parabola through the three points around the maximum.
/// Throws InconclusiveSweep when the maximum sits on the boundary.
JxEstimate locate_balance(const BridgeConfig& device, std::vector<ProfilePoint> profile);

/// Sweeps J3 over `grid` (J0 fixed), records |<a2(t)>| of the full model for each
/// point and locates the peak with three-point parabolic refinement.
/// Throws InconclusiveSweep when the largest magnitude sits on the grid boundary.
JxEstimate estimate_jx(const BridgeConfig& device, std::span<const double> grid, double alpha, double t);

}  // namespace wheatstone
