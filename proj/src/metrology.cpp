#include "wheatstone/metrology.hpp"

#include <cmath>
#include <limits>

#include "wheatstone/dynamics.hpp"
#include "wheatstone/errors.hpp"
#include "wheatstone/reduction.hpp"

namespace wheatstone {

namespace {

using cdouble = std::complex<double>;
const cdouble I(0, 1);

void require_couplings(const BridgeConfig& c) {
    if (c.j1 == 0 || c.j2 == 0 || c.j3 == 0)
        throw DomainError("precision formulas need non-zero J1, J2 and J3");
}

void require_balanced(const BridgeConfig& c) {
    require_couplings(c);
    if (!is_balanced(c))
        throw NotBalanced("precision at balance requested for an unbalanced bridge");
}

void require_alpha(double alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw DomainError("coherent amplitude alpha must be positive");
}

double homodyne_variance_factor(const BridgeConfig& c) {
    const auto fl = quantum_fluctuations(c);
    return is_symmetric(c) ? 1 + fl.f : 1 + fl.f_c;
}

BridgeConfig detuned(const BridgeConfig& c, double y) {
    BridgeConfig out = c;
    out.jx = balance_coupling(c.j1, c.j2, c.j3) + y;
    return out;
}

}  // namespace

FluctuationParams quantum_fluctuations(const BridgeConfig& c) {
    c.validate();
    const double n1 = c.occupation1(), n4 = c.occupation4();
    const double j1s = c.j1 * c.j1, j2s = c.j2 * c.j2, j3s = c.j3 * c.j3;
    const double weight = j1s * c.kappa4 + j3s * c.kappa1;
    FluctuationParams out;
    if (weight > 0)
        out.f = (j1s * n1 * c.kappa4 + j3s * n4 * c.kappa1) / weight;
    if (j1s + j2s > 0)
        out.f_c = 2 * out.f * j1s / (j1s + j2s);
    out.f_c_prime = out.f_c;
    if (c.kappa2 != 0) {
        if (!(weight > 0))
            throw DomainError("loss contribution undefined for J1 = J3 = 0");
        out.f_c_prime += c.kappa1 * c.kappa2 * c.kappa4 / (2 * weight);
    }
    return out;
}

double effective_fc(const BridgeConfig& c) {
    const auto fl = quantum_fluctuations(c);
    if (!c.has_intrinsic_loss())
        return fl.f_c;
    c.require_gain_compensated();
    if (c.kappa2 != c.kappa3)
        throw OutOfRegime("the lossy bound assumes kappa2 = kappa3");
    return fl.f_c_prime;
}

double g_coefficient(double j1, double j2, double fc) {
    const double j1s = j1 * j1, j2s = j2 * j2;
    return 2 * j2 * std::sqrt((1 + fc) * j1s + fc * j2s) / ((j1s + j2s) * (1 + fc));
}

double one_minus_g_squared(double j1, double j2, double fc) {
    const double j1s = j1 * j1, j2s = j2 * j2;
    const double num = (1 + fc) * j1s + (fc - 1) * j2s;
    const double den = (j1s + j2s) * (1 + fc);
    return num * num / (den * den);
}

cdouble mu_factor(const BridgeConfig& c) {
    require_couplings(c);
    const double s = c.j1 * c.j1 + c.j2 * c.j2;
    return s * s * (c.j3 * c.j3 * c.kappa1 + c.j1 * c.j1 * c.kappa4 + I * c.j0 * c.j1 * c.kappa1 * c.kappa4 / c.j2);
}

double symmetric_optimal_precision(const BridgeConfig& c, double alpha) {
    require_couplings(c);
    require_alpha(alpha);
    const double f = quantum_fluctuations(c).f;
    const double a = c.j3 * c.j3 * c.kappa1 + c.j2 * c.j2 * c.kappa4;
    const double b = c.j0 * c.kappa1 * c.kappa4;
    return std::sqrt(1 + f) * std::sqrt(a * a + b * b) / (c.j3 * c.kappa1 * alpha);
}

double asymmetric_optimal_precision(const BridgeConfig& c, double alpha) {
    require_couplings(c);
    require_alpha(alpha);
    const double fc = quantum_fluctuations(c).f_c;
    return std::sqrt(1 + fc) * std::abs(mu_factor(c)) /
           (4 * std::pow(c.j1, 3) * c.j2 * c.j3 * c.kappa1 * alpha);
}

double optimal_homodyne_precision(const BridgeConfig& c, double alpha) {
    require_balanced(c);
    return is_symmetric(c) ? symmetric_optimal_precision(c, alpha) : asymmetric_optimal_precision(c, alpha);
}

cdouble signal_derivative(const BridgeConfig& c, double t, double alpha, double y, DerivativeMode mode) {
    require_couplings(c);
    require_finite_time(t);
    const BridgeConfig probe = detuned(c, y);
    switch (mode) {
    case DerivativeMode::analytic: {
        if (t < relaxation_time(c))
            throw OutOfRegime("closed-form slopes hold only for t > tau");
        if (is_symmetric(c))
            return envelope_derivative(probe, y, t, {alpha, 0.0}).first;
        if (y != 0)
            throw OutOfRegime("no closed form off balance for J1 != J2");
        const cdouble e1 = balanced_eigenvalues(probe).dark;
        return std::exp(e1 * t) * 2.0 * std::pow(c.j1, 3) * c.j2 * c.j3 * c.kappa1 * alpha / mu_factor(c);
    }
    case DerivativeMode::reduced:
        return reduced_mean_derivative(probe, Eigen::Vector2cd(alpha, 0.0), t)(0);
    case DerivativeMode::numeric: {
        const double h = 1e-4 * std::abs(c.j3);
        BridgeConfig lo = probe, hi = probe;
        lo.jx -= h;
        hi.jx += h;
        ComplexVector<double> mean0 = ComplexVector<double>::Zero(4);
        mean0(1) = alpha;
        const cdouble up = evolve_mean(build_drift(hi), mean0, t)(1);
        const cdouble down = evolve_mean(build_drift(lo), mean0, t)(1);
        return (up - down) / (2 * h);
    }
    }
    throw DomainError("unknown derivative mode");
}

double homodyne_precision(const BridgeConfig& c, double phi2, double t, double alpha, double y, DerivativeMode mode) {
    require_alpha(alpha);
    const cdouble d = signal_derivative(c, t, alpha, y, mode);
    const double slope = 2 * (std::exp(-I * phi2) * d).real();
    if (std::abs(d) == 0 || std::abs(slope) <= 1e-12 * 2 * std::abs(d))
        return std::numeric_limits<double>::infinity();

    double variance;
    if (mode == DerivativeMode::numeric) {
        const auto oracle = oracle_signal(detuned(c, y), alpha, t);
        const Eigen::Vector2d n(std::cos(phi2), std::sin(phi2));
        Eigen::Matrix2d mode2;
        mode2 << oracle.cov_block(0, 0), oracle.cov_block(0, 2), oracle.cov_block(2, 0), oracle.cov_block(2, 2);
        variance = n.dot(mode2 * n);
    } else {
        variance = homodyne_variance_factor(c);
    }
    return std::sqrt(variance) / std::abs(slope);
}

double optimal_phase(const BridgeConfig& c, double t, double alpha, double y, DerivativeMode mode) {
    return std::arg(signal_derivative(c, t, alpha, y, mode));
}

double phase_optimized_precision(const BridgeConfig& c, double t, double alpha, double y, DerivativeMode mode) {
    require_alpha(alpha);
    const cdouble d = signal_derivative(c, t, alpha, y, mode);
    if (std::abs(d) == 0)
        return std::numeric_limits<double>::infinity();
    if (mode != DerivativeMode::numeric)
        return std::sqrt(homodyne_variance_factor(c)) / (2 * std::abs(d));

    const auto oracle = oracle_signal(detuned(c, y), alpha, t);
    Eigen::Matrix2d mode2;
    mode2 << oracle.cov_block(0, 0), oracle.cov_block(0, 2), oracle.cov_block(2, 0), oracle.cov_block(2, 2);
    const Eigen::Vector2d g(2 * d.real(), 2 * d.imag());
    return 1.0 / std::sqrt(g.dot(mode2.ldlt().solve(g)));
}

Eigen::Matrix4d balanced_covariance(const BridgeConfig& c, double fc) {
    if (c.j1 == 0)
        throw DomainError("balanced covariance needs J1 != 0");
    const Eigen::Vector2d v(c.j1, c.j2);
    const Eigen::Matrix2d block = Eigen::Matrix2d::Identity() + (fc / (c.j1 * c.j1)) * v * v.transpose();
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    cov.topLeftCorner<2, 2>() = block;
    cov.bottomRightCorner<2, 2>() = block;
    return cov;
}

Eigen::Vector4d balanced_mean_slope(const BridgeConfig& c, double alpha, double t) {
    require_balanced(c);
    const cdouble mu = mu_factor(c);
    const cdouble e1 = balanced_eigenvalues(c).dark;
    // theta' = -arg(mu); -i E1 t = Im(E1) t for a purely imaginary E1
    const double phi = -std::arg(mu) + e1.imag() * t;
    const double scale = alpha * c.j1 * c.j1 * c.j3 * c.kappa1 / std::abs(mu);
    const double u2 = 4 * c.j1 * c.j2, u3 = 2 * (c.j2 * c.j2 - c.j1 * c.j1);
    return scale * Eigen::Vector4d(u2 * std::cos(phi), u3 * std::cos(phi), u2 * std::sin(phi), u3 * std::sin(phi));
}

QfiTerms gaussian_qfi_terms(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& dcov, const Eigen::VectorXd& dmean) {
    if (cov.rows() != cov.cols() || dcov.rows() != cov.rows() || dcov.cols() != cov.cols() || dmean.size() != cov.rows())
        throw DomainError("QFI inputs have inconsistent dimensions");
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    const double det = cov.determinant();
    if (ldlt.info() != Eigen::Success || !(det > 0))
        throw DomainError("covariance matrix is singular");

    QfiTerms out;
    const Eigen::MatrixXd cinv_dc = ldlt.solve(dcov);
    const double purity = 1.0 / std::sqrt(det);
    // d/dθ det^{-1/2} = -P Tr(C^-1 C') / 2
    const double dpurity = -0.5 * purity * cinv_dc.trace();
    out.covariance_term = (cinv_dc * cinv_dc).trace() / (2 * (1 + purity * purity));
    if (dpurity != 0) {
        const double denom = 1 - std::pow(purity, 4);
        out.purity_term = denom > 0 ? 2 * dpurity * dpurity / denom : std::numeric_limits<double>::infinity();
    }
    out.mean_term = dmean.dot(ldlt.solve(dmean));
    return out;
}

double gaussian_qfi(const BridgeConfig& c, double alpha, QfiMode mode, double t) {
    require_alpha(alpha);
    const Eigen::Matrix4d cov = balanced_covariance(c, effective_fc(c));
    const Eigen::Vector4d slope = balanced_mean_slope(c, alpha, t);
    // C depends on Jx only through fc, which does not involve Jx.
    const auto terms = gaussian_qfi_terms(cov, Eigen::Matrix4d::Zero(), slope);
    return mode == QfiMode::dominant ? terms.mean_term : terms.total();
}

double closed_form_qfi(const BridgeConfig& c, double alpha) {
    require_balanced(c);
    require_alpha(alpha);
    const double fc = effective_fc(c);
    const double j1s = c.j1 * c.j1, j2s = c.j2 * c.j2, s = j1s + j2s;
    const double pref = alpha * j1s * c.j3 * c.kappa1 / std::abs(mu_factor(c));
    return pref * pref * 4 * (1 + fc) * j1s * s * s / ((1 + fc) * j1s + fc * j2s);
}

CrbResult crb_bound(const BridgeConfig& c, double alpha) {
    require_balanced(c);
    require_alpha(alpha);
    CrbResult out;
    out.fc = effective_fc(c);
    out.g = g_coefficient(c.j1, c.j2, out.fc);
    out.bound = out.g * std::sqrt(1 + out.fc) * std::abs(mu_factor(c)) /
                (4 * std::pow(c.j1, 3) * c.j2 * c.j3 * c.kappa1 * alpha);
    return out;
}

double implied_fluctuation(const BridgeConfig& c, double bound, double alpha) {
    require_couplings(c);
    require_alpha(alpha);
    // bound / K = g sqrt(1+fc) = 2 J2 sqrt(J1^2 + J2^2 fc/(1+fc)) / S
    const double k = std::abs(mu_factor(c)) / (4 * std::pow(c.j1, 3) * c.j2 * c.j3 * c.kappa1 * alpha);
    const double j1s = c.j1 * c.j1, j2s = c.j2 * c.j2, s = j1s + j2s;
    const double h = std::pow(bound / k * s / (2 * c.j2), 2);
    const double r = (h - j1s) / j2s;  // fc / (1 + fc)
    if (!(r >= 0 && r < 1))
        throw DomainError("bound is outside the range reachable by any fc >= 0");
    return r / (1 - r);
}

PrecisionReport precision_report(const BridgeConfig& c, double alpha, double phi2, double t, double y) {
    PrecisionReport out;
    out.fluctuations = quantum_fluctuations(c);
    const BridgeConfig bal = c.balanced();
    DerivativeMode mode = DerivativeMode::analytic;
    try {
        out.optimal_phi2 = optimal_phase(bal, t, alpha, y, mode);
    } catch (const OutOfRegime&) {
        mode = DerivativeMode::reduced;
        out.optimal_phi2 = optimal_phase(bal, t, alpha, y, mode);
    }
    out.delta_homodyne = homodyne_precision(bal, phi2, t, alpha, y, mode);
    out.delta_homodyne_optimal = optimal_homodyne_precision(bal, alpha);
    out.qfi = gaussian_qfi(bal, alpha, QfiMode::full, t);
    const auto crb = crb_bound(bal, alpha);
    out.crb = crb.bound;
    out.g = crb.g;
    return out;
}

}  // namespace wheatstone
