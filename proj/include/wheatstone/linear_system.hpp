#pragma once

// Gaussian moment dynamics of linear bosonic networks.
//
// A network of n modes obeys da/dt = M a + xi(t) where xi is a linear
// combination of white-noise bath operators. Expectations follow
// d<a>/dt = M <a>; the symmetric covariance of the quadratures
// X = (q_1..q_n, p_1..p_n), q = a + a^dag, p = (a - a^dag)/i, follows
// dC/dt = A C + C A^T + D with A the real representation of M.
//
// With this convention the vacuum covariance is the identity and a mode
// in equilibrium with a bath of occupation N has covariance (2N+1) I.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include "wheatstone/errors.hpp"

namespace wheatstone {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

/// One white-noise input b (thermal, occupation N) entering the modes as
/// xi = annihilation * b + creation * b^dag.
template <typename Scalar>
struct NoiseInput {
    ComplexVector<Scalar> annihilation;
    ComplexVector<Scalar> creation;
    Scalar occupation = 0;
};

template <typename Scalar>
struct DriftModel {
    ComplexMatrix<Scalar> m_complex;
    RealMatrix<Scalar> m_quad;
    RealMatrix<Scalar> diffusion;

    Eigen::Index modes() const { return m_complex.rows(); }
};

template <typename Scalar>
struct GaussianMoments {
    ComplexVector<Scalar> mean;
    RealMatrix<Scalar> cov;

    static GaussianMoments vacuum(Eigen::Index modes) {
        return {ComplexVector<Scalar>::Zero(modes), RealMatrix<Scalar>::Identity(2 * modes, 2 * modes)};
    }

    static GaussianMoments coherent(const ComplexVector<Scalar>& amplitudes) {
        const auto n = amplitudes.size();
        return {amplitudes, RealMatrix<Scalar>::Identity(2 * n, 2 * n)};
    }
};

/// Real representation [[Re M, -Im M], [Im M, Re M]] acting on (q, p).
template <typename Derived>
RealMatrix<typename Derived::RealScalar> quadrature_drift(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::RealScalar;
    const auto n = m.rows();
    RealMatrix<Scalar> a(2 * n, 2 * n);
    a.topLeftCorner(n, n) = m.real();
    a.topRightCorner(n, n) = -m.imag();
    a.bottomLeftCorner(n, n) = m.imag();
    a.bottomRightCorner(n, n) = m.real();
    return a;
}

/// Quadrature vector (2 Re a, 2 Im a) of complex amplitudes.
template <typename Scalar>
RealVector<Scalar> quadrature_mean(const ComplexVector<Scalar>& mean) {
    const auto n = mean.size();
    RealVector<Scalar> x(2 * n);
    x.head(n) = Scalar(2) * mean.real();
    x.tail(n) = Scalar(2) * mean.imag();
    return x;
}

/// Diffusion matrix generated by a set of thermal white-noise inputs.
///
/// Writing b = (x + i y)/2 with symmetrised <x x> = <y y> = 2N+1 turns each
/// input into two real noises with loading vectors g_x, g_y; D = sum (2N+1)(g_x g_x^T + g_y g_y^T).
template <typename Scalar>
RealMatrix<Scalar> diffusion_matrix(Eigen::Index modes, const std::vector<NoiseInput<Scalar>>& inputs) {
    RealMatrix<Scalar> d = RealMatrix<Scalar>::Zero(2 * modes, 2 * modes);
    const Complex<Scalar> i(0, 1);
    for (const auto& in : inputs) {
        if (in.annihilation.size() != modes || in.creation.size() != modes)
            throw DomainError("noise input dimension does not match the number of modes");
        if (!(in.occupation >= 0))
            throw DomainError("noise occupation must be non-negative");
        const ComplexVector<Scalar> cx = in.annihilation + in.creation;
        const ComplexVector<Scalar> cy = i * (in.annihilation - in.creation);
        RealVector<Scalar> gx(2 * modes), gy(2 * modes);
        gx << cx.real(), cx.imag();
        gy << cy.real(), cy.imag();
        d.noalias() += (Scalar(2) * in.occupation + Scalar(1)) * (gx * gx.transpose() + gy * gy.transpose());
    }
    return d;
}

template <typename Scalar>
DriftModel<Scalar> make_drift_model(const ComplexMatrix<Scalar>& m, const std::vector<NoiseInput<Scalar>>& inputs) {
    if (m.rows() != m.cols())
        throw DomainError("drift matrix must be square");
    return {m, quadrature_drift(m), diffusion_matrix(m.rows(), inputs)};
}

/// Symplectic form for the (q..., p...) ordering; [X_i, X_j] = 2i Omega_ij.
template <typename Scalar>
RealMatrix<Scalar> symplectic_form(Eigen::Index modes) {
    RealMatrix<Scalar> omega = RealMatrix<Scalar>::Zero(2 * modes, 2 * modes);
    omega.topRightCorner(modes, modes).setIdentity();
    omega.bottomLeftCorner(modes, modes) = -RealMatrix<Scalar>::Identity(modes, modes);
    return omega;
}

/// Smallest eigenvalue of C + i Omega; non-negative for physical states.
template <typename Derived>
typename Derived::Scalar min_uncertainty_eigenvalue(const Eigen::MatrixBase<Derived>& cov) {
    using Scalar = typename Derived::Scalar;
    const auto modes = cov.rows() / 2;
    const ComplexMatrix<Scalar> h =
        cov.template cast<Complex<Scalar>>() + Complex<Scalar>(0, 1) * symplectic_form<Scalar>(modes).template cast<Complex<Scalar>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

template <typename Scalar>
void require_finite_time(Scalar t) {
    if (!std::isfinite(static_cast<double>(t)))
        throw DomainError("evolution time must be finite");
    if (t < 0)
        throw DomainError("evolution time must be non-negative");
}

/// exp(M t).
template <typename Scalar>
ComplexMatrix<Scalar> propagator(const DriftModel<Scalar>& model, std::type_identity_t<Scalar> t) {
    require_finite_time(t);
    if (!model.m_complex.allFinite())
        throw DomainError("drift matrix contains non-finite entries");
    const ComplexMatrix<Scalar> mt = model.m_complex * Complex<Scalar>(t);
    return mt.exp();
}

template <typename Scalar>
ComplexVector<Scalar> evolve_mean(const DriftModel<Scalar>& model, const std::type_identity_t<ComplexVector<Scalar>>& mean0,
                                  std::type_identity_t<Scalar> t) {
    if (mean0.size() != model.modes())
        throw DomainError("initial mean has the wrong dimension");
    if (!mean0.allFinite())
        throw DomainError("initial mean contains non-finite entries");
    return propagator(model, t) * mean0;
}

/// Exact solution of dC/dt = A C + C A^T + D.
///
/// The inhomogeneous part Q(s) = int_0^s e^{Ar} D e^{A^T r} dr is taken from the
/// Van Loan block exponential on a short step s = t / 2^k with |A| s <= 1/2 and
/// then doubled k times with Q(2s) = F Q F^T + Q, F(2s) = F F. The short step
/// keeps the growing e^{-A^T s} block of the Van Loan matrix well conditioned.
template <typename Scalar>
RealMatrix<Scalar> evolve_covariance(const DriftModel<Scalar>& model, const std::type_identity_t<RealMatrix<Scalar>>& cov0,
                                     std::type_identity_t<Scalar> t) {
    require_finite_time(t);
    const auto n = model.m_quad.rows();
    if (cov0.rows() != n || cov0.cols() != n)
        throw DomainError("initial covariance has the wrong dimension");
    if (!cov0.allFinite() || !model.m_quad.allFinite() || !model.diffusion.allFinite())
        throw DomainError("covariance evolution received non-finite input");
    if (t == 0)
        return cov0;

    const Scalar norm = model.m_quad.cwiseAbs().colwise().sum().maxCoeff();
    int doublings = 0;
    Scalar step = t;
    while (norm * step > Scalar(0.5) && doublings < 200) {
        step /= 2;
        ++doublings;
    }

    RealMatrix<Scalar> z = RealMatrix<Scalar>::Zero(2 * n, 2 * n);
    z.topLeftCorner(n, n) = model.m_quad * step;
    z.topRightCorner(n, n) = model.diffusion * step;
    z.bottomRightCorner(n, n) = -model.m_quad.transpose() * step;
    const RealMatrix<Scalar> e = z.exp();
    RealMatrix<Scalar> f = e.topLeftCorner(n, n);
    RealMatrix<Scalar> q = e.topRightCorner(n, n) * f.transpose();
    q = (q + q.transpose()).eval() / Scalar(2);

    for (int k = 0; k < doublings; ++k) {
        q = (f * q * f.transpose() + q).eval();
        q = (q + q.transpose()).eval() / Scalar(2);
        f = (f * f).eval();
    }
    RealMatrix<Scalar> c = f * cov0 * f.transpose() + q;
    return (c + c.transpose()) / Scalar(2);
}

template <typename Scalar>
GaussianMoments<Scalar> propagate(const DriftModel<Scalar>& model, const GaussianMoments<Scalar>& state,
                                  std::type_identity_t<Scalar> t) {
    return {evolve_mean(model, state.mean, t), evolve_covariance(model, state.cov, t)};
}

}  // namespace wheatstone
