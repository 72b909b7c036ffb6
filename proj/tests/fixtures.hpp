#pragma once

// Shared configurations and frozen reference values.
//
// Reference values were computed once with an independent numpy/scipy script
// (ODE integration of the 4-mode means and covariances, scipy expm, direct
// closed-form evaluation) and are frozen here.

#include "wheatstone/network.hpp"

namespace fixtures {

inline wheatstone::BridgeConfig asymmetric() {
    wheatstone::BridgeConfig c;
    c.omega = {100, 100, 101, 101};
    c.j1 = 10;
    c.j2 = 15;
    c.j3 = 10;
    c.jx = 15;
    c.j0 = 1.2;
    c.kappa1 = 10;
    c.kappa4 = 10;
    return c;
}

/// J1 = J2 = J3 = kappa1 = kappa4 = 10, resonant, J0 = 0.
inline wheatstone::BridgeConfig symmetric() {
    wheatstone::BridgeConfig c;
    c.omega = {100, 100, 100, 100};
    c.j1 = c.j2 = c.j3 = c.jx = 10;
    c.kappa1 = c.kappa4 = 10;
    return c;
}

/// Deep adiabatic regime: kappa = 200 against couplings of 10.
inline wheatstone::BridgeConfig adiabatic() {
    wheatstone::BridgeConfig c;
    c.omega = {100, 100, 100, 100};
    c.j1 = 10;
    c.j2 = 10;
    c.j3 = 10;
    c.jx = 10;
    c.kappa1 = c.kappa4 = 200;
    return c;
}

inline constexpr double kAlpha = 1e4;

namespace reference_values {
inline constexpr double abs_mu = 211418932.45402598;
inline constexpr double optimal_precision = 0.0035236488742337664;
inline constexpr double crb = 0.003252598960831169;
inline constexpr double g = 0.9230769230769231;
inline constexpr double settling_time = 2.835758636821259;
inline constexpr double slowest_rate = 4.871892261412896;
// oracle means at the settling time
inline constexpr double a2_abs = 6923.077437196305;
inline constexpr double a3_abs = 4615.383844205727;
// |d<a2>/dJx| at the settling time: finite differences of ODE solutions, closed form
inline constexpr double derivative_abs = 141.89541189603082;
inline constexpr double derivative_closed_abs = 141.89836100191093;
// |<a2>| / alpha at Jx = 12, t = 20 tau
inline constexpr double offbalance_envelope = 0.6186317143643458;
// N1 = N4 = 1 covariance of (q2, q3) at the settling time
inline constexpr double cov_q2q2 = 1.615384615384175;
inline constexpr double cov_q3q3 = 2.38461538461442;
inline constexpr double cov_q2q3 = 0.9230769230762687;
// phase-optimised numeric sweep over [5, 25] x 201 at the settling time
inline constexpr double sweep_min_jx = 11.7;
inline constexpr double sweep_min_delta = 0.00035002852505071146;
// balance protocol: J3 in [5, 15] step 0.5, t = 50
inline constexpr double balance_j3_star = 9.995869187507589;
inline constexpr double balance_jx = 14.993803781261382;
}  // namespace reference_values

}  // namespace fixtures
