#pragma once

// Physical configuration of the four-mode bridge.
//
// Units: hbar = k_B = 1 and every frequency, rate, coupling and temperature is
// expressed in one common (arbitrary) unit.
//
// Mode layout (0-based indices used throughout the library):
//   0: mode 1 (bath-coupled, rate kappa1)
//   1: mode 2 (probe, homodyne read-out)
//   2: mode 3
//   3: mode 4 (bath-coupled, rate kappa4)
//
//   J1: 1-2   J2: 1-3   J3: 4-2   Jx: 4-3 (unknown)   J0: 2-3

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "wheatstone/linear_system.hpp"

namespace wheatstone {

struct BridgeConfig {
    std::array<double, 4> omega{};
    double j1 = 0, j2 = 0, j3 = 0, jx = 0, j0 = 0;
    double kappa1 = 0, kappa4 = 0;
    double t1 = 0, t4 = 0;
    // Explicit thermal occupations take precedence over the temperatures.
    std::optional<double> n1, n4;
    // Intrinsic loss and gain of modes 2 and 3.
    double kappa2 = 0, kappa3 = 0, gamma2 = 0, gamma3 = 0;

    /// Throws DomainError on non-finite values, non-positive bath rates or negative
    /// temperatures, occupations, losses or gains.
    void validate() const;

    double occupation1() const;
    double occupation4() const;

    bool has_intrinsic_loss() const { return kappa2 != 0 || kappa3 != 0 || gamma2 != 0 || gamma3 != 0; }
    bool gain_compensated() const { return kappa2 == gamma2 && kappa3 == gamma3; }
    /// Throws DomainError unless kappa_j == gamma_j for j = 2, 3.
    void require_gain_compensated() const;

    /// Copy with Jx moved to the balance value J2 J3 / J1.
    BridgeConfig balanced() const;

    bool operator==(const BridgeConfig&) const = default;
};

enum class ChannelKind { loss, gain };

struct NoiseChannel {
    int mode = 0;
    double rate = 0;
    double occupation = 0;
    ChannelKind kind = ChannelKind::loss;
};

struct NoiseSpec {
    double n1 = 0;
    double n4 = 0;
    std::vector<NoiseChannel> channels;
};

/// Bose-Einstein occupation 1/(exp(omega/t) - 1); exactly 0 at t = 0.
double thermal_occupation(double omega, double t);

NoiseSpec noise_spec(const BridgeConfig& config);

/// Noise inputs of the 4-mode network: thermal baths on modes 1 and 4,
/// vacuum loss (a_in) and gain (-d_in^dag) channels on modes 2 and 3.
std::vector<NoiseInput<double>> bridge_noise_inputs(const BridgeConfig& config);

/// Full 4-mode drift
///   diag: -i omega_j - kappa_j + gamma_j, off-diagonal: -i J on every coupled pair,
/// with its quadrature representation and diffusion matrix.
DriftModel<double> build_drift(const BridgeConfig& config);

/// Jx at which the bridge balances: J2 J3 / J1.
double balance_coupling(double j1, double j2, double j3);

/// Marker for the symmetric case J1 = J2 where any J0 balances the bridge.
struct Unconstrained {
    bool operator==(const Unconstrained&) const = default;
};

using J0Requirement = std::variant<double, Unconstrained>;

/// J0 needed for a dark mode: (omega3 - omega2) J1 J2 / (J2^2 - J1^2).
/// For J1 = J2 the detuning must vanish and J0 is unconstrained; otherwise
/// NoBalancePossible is thrown.
J0Requirement required_j0(double omega2, double omega3, double j1, double j2);

/// Linearised optomechanical coupling J = G beta.
double effective_coupling(double g, double beta);

/// Relaxation time 1 / (2 J1^2/kappa1 + 2 J3^2/kappa4) of the bright mode.
double relaxation_time(const BridgeConfig& config);

/// Relative tolerance used to decide J1 == J2.
inline constexpr double kSymmetricTolerance = 1e-12;

bool is_symmetric(const BridgeConfig& config);

/// True when Jx = J2 J3 / J1 and the detuning constraint hold (relative tolerance `tol`).
bool is_balanced(const BridgeConfig& config, double tol = 1e-9);

}  // namespace wheatstone
