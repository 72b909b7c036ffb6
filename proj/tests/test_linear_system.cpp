#include <doctest.h>

#include <random>

#include "wheatstone/linear_system.hpp"

using namespace wheatstone;
using cd = std::complex<double>;

namespace {

ComplexMatrix<double> random_drift(std::mt19937& rng, int n, double damping) {
    std::normal_distribution<double> gauss;
    ComplexMatrix<double> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = cd(gauss(rng), gauss(rng));
    m -= damping * ComplexMatrix<double>::Identity(n, n);
    return m;
}

}  // namespace

TEST_CASE("quadrature drift is the real representation of the complex drift") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    const auto m = random_drift(rng, 4, 0.0);
    const auto a = quadrature_drift(m);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexVector<double> v(4);
        for (int i = 0; i < 4; ++i)
            v(i) = cd(gauss(rng), gauss(rng));
        const RealVector<double> lhs = a * quadrature_mean<double>(v);
        const RealVector<double> rhs = quadrature_mean<double>(ComplexVector<double>(m * v));
        CHECK((lhs - rhs).norm() < 1e-12 * (1 + rhs.norm()));
    }
}

TEST_CASE("diffusion matrix is symmetric positive semidefinite") {
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<NoiseInput<double>> inputs;
        for (int k = 0; k < 3; ++k) {
            NoiseInput<double> in{ComplexVector<double>(3), ComplexVector<double>(3), std::abs(gauss(rng))};
            for (int i = 0; i < 3; ++i) {
                in.annihilation(i) = cd(gauss(rng), gauss(rng));
                in.creation(i) = k == 2 ? cd(gauss(rng), gauss(rng)) : cd(0);
            }
            inputs.push_back(in);
        }
        const auto d = diffusion_matrix<double>(3, inputs);
        CHECK((d - d.transpose()).norm() == doctest::Approx(0.0));
        Eigen::SelfAdjointEigenSolver<RealMatrix<double>> es(d);
        CHECK(es.eigenvalues().minCoeff() > -1e-12 * d.norm());
    }
}

TEST_CASE("evolve_mean") {
    std::mt19937 rng(3);
    const auto m = random_drift(rng, 4, 3.0);
    const auto model = make_drift_model<double>(m, {});
    ComplexVector<double> a0(4);
    a0 << cd(1, 2), cd(-0.5, 0), cd(0, 3), cd(2, -1);

    SUBCASE("t = 0 is the identity") {
        CHECK((evolve_mean(model, a0, 0.0) - a0).norm() == doctest::Approx(0.0));
    }
    SUBCASE("semigroup property") {
        const auto joint = evolve_mean(model, a0, 0.7);
        const auto split = evolve_mean(model, evolve_mean(model, a0, 0.3), 0.4);
        CHECK((joint - split).norm() < 1e-10 * a0.norm());
    }
    SUBCASE("free evolution of a diagonal drift") {
        ComplexMatrix<double> diag = ComplexMatrix<double>::Zero(2, 2);
        diag(0, 0) = cd(0, -100);
        diag(1, 1) = cd(-1, -3);
        const auto free = make_drift_model<double>(diag, {});
        ComplexVector<double> v(2);
        v << cd(5, 0), cd(1, 1);
        const auto out = evolve_mean(free, v, 2.5);
        CHECK(std::abs(out(0) - 5.0 * std::exp(cd(0, -250))) < 1e-11);
        CHECK(std::abs(out(1) - cd(1, 1) * std::exp(cd(-2.5, -7.5))) < 1e-12);
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(evolve_mean(model, a0, -1.0), DomainError);
        CHECK_THROWS_AS(evolve_mean(model, a0, std::numeric_limits<double>::infinity()), DomainError);
        ComplexVector<double> bad = a0;
        bad(0) = cd(std::nan(""), 0);
        CHECK_THROWS_AS(evolve_mean(model, bad, 1.0), DomainError);
        CHECK_THROWS_AS(evolve_mean(model, ComplexVector<double>::Zero(3), 1.0), DomainError);
    }
}

TEST_CASE("evolve_covariance") {
    SUBCASE("rotation without diffusion keeps the identity") {
        ComplexMatrix<double> m(2, 2);
        m << cd(0, -3), cd(0, -1), cd(0, -1), cd(0, -5);
        const auto model = make_drift_model<double>(m, {});
        const RealMatrix<double> c = evolve_covariance(model, RealMatrix<double>::Identity(4, 4), 17.3);
        CHECK((c - RealMatrix<double>::Identity(4, 4)).norm() < 1e-10);
    }
    SUBCASE("single lossy mode relaxes to (2N+1) I") {
        const double kappa = 2, n = 2;
        ComplexMatrix<double> m(1, 1);
        m(0, 0) = cd(-kappa, -50);
        NoiseInput<double> bath{ComplexVector<double>::Constant(1, std::sqrt(2 * kappa)), ComplexVector<double>::Zero(1), n};
        const auto model = make_drift_model<double>(m, {bath});
        const RealMatrix<double> c = evolve_covariance(model, RealMatrix<double>::Identity(2, 2), 40.0);
        CHECK((c - 5.0 * RealMatrix<double>::Identity(2, 2)).norm() < 1e-9);
    }
    SUBCASE("gain channel driven from vacuum") {
        // da/dt = g a - sqrt(2g) d^dag: <q^2>(t) = 2 e^{2gt} - 1
        const double g = 0.3, t = 2.0;
        ComplexMatrix<double> m(1, 1);
        m(0, 0) = cd(g, 0);
        NoiseInput<double> amp{ComplexVector<double>::Zero(1), ComplexVector<double>::Constant(1, -std::sqrt(2 * g)), 0};
        const auto model = make_drift_model<double>(m, {amp});
        const RealMatrix<double> c = evolve_covariance(model, RealMatrix<double>::Identity(2, 2), t);
        CHECK(c(0, 0) == doctest::Approx(2 * std::exp(2 * g * t) - 1).epsilon(1e-12));
        CHECK(c(0, 1) == doctest::Approx(0.0));
    }
    SUBCASE("stable at long times and symmetric") {
        std::mt19937 rng(5);
        const auto m = random_drift(rng, 3, 4.0);
        NoiseInput<double> in{ComplexVector<double>::Ones(3), ComplexVector<double>::Zero(3), 0.5};
        const auto model = make_drift_model<double>(m, {in});
        const RealMatrix<double> c1 = evolve_covariance(model, RealMatrix<double>::Identity(6, 6), 50.0);
        const RealMatrix<double> c2 = evolve_covariance(model, RealMatrix<double>::Identity(6, 6), 80.0);
        CHECK((c1 - c1.transpose()).norm() < 1e-10 * c1.norm());
        CHECK((c1 - c2).norm() < 1e-9 * c1.norm());
        // steady state solves A C + C A^T + D = 0
        const RealMatrix<double> residual = model.m_quad * c2 + c2 * model.m_quad.transpose() + model.diffusion;
        CHECK(residual.norm() < 1e-8 * model.diffusion.norm());
    }
    SUBCASE("t = 0 returns the initial covariance") {
        ComplexMatrix<double> m(1, 1);
        m(0, 0) = cd(-1, 0);
        const auto model = make_drift_model<double>(m, {});
        RealMatrix<double> c0(2, 2);
        c0 << 3, 1, 1, 2;
        CHECK(evolve_covariance(model, c0, 0.0) == c0);
    }
}

TEST_CASE("uncertainty eigenvalue") {
    CHECK(min_uncertainty_eigenvalue(RealMatrix<double>::Identity(4, 4)) == doctest::Approx(0.0));
    // squeezed vacuum still saturates
    RealMatrix<double> sq = RealMatrix<double>::Zero(2, 2);
    sq(0, 0) = 0.25;
    sq(1, 1) = 4;
    CHECK(min_uncertainty_eigenvalue(sq) == doctest::Approx(0.0).epsilon(1e-12));
    // below vacuum in both quadratures is unphysical
    CHECK(min_uncertainty_eigenvalue(RealMatrix<double>(0.5 * RealMatrix<double>::Identity(2, 2))) < -0.4);
}

TEST_CASE("templated on the scalar type") {
    ComplexMatrix<long double> m(1, 1);
    m(0, 0) = Complex<long double>(-1, -2);
    const auto model = make_drift_model<long double>(m, {});
    ComplexVector<long double> a0(1);
    a0(0) = 1;
    const auto out = evolve_mean(model, a0, 1.0L);
    CHECK(std::abs(out(0) - std::exp(Complex<long double>(-1, -2))) < 1e-15L);
}
