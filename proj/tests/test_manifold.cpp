#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "igeo/fd_geometry.hpp"
#include "igeo/manifold.hpp"
#include "oracles.hpp"

using namespace igeo;
using namespace igeo::manifold;

namespace {

fdgeom::MetricFn block_metric(const Eigen::VectorXd& r) {
    return [r](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * r.size(), 2 * r.size());
        for (Eigen::Index k = 0; k < r.size(); ++k)
            g.block<2, 2>(2 * k, 2 * k) = metric_block(r[k], x[2 * k + 1], true);
        return g;
    };
}

}  // namespace

TEST_CASE("metric block: limits and substitutions") {
    const auto m0 = metric_block(0.0, 1.0, true);
    CHECK(m0(0, 0) == 1.0);
    CHECK(m0(0, 1) == 0.0);
    CHECK(m0(1, 1) == 2.0);

    const auto m = metric_block(0.5, 1.0);
    CHECK(m(0, 1) == 0.5);
    CHECK(m(1, 0) == 0.5);

    const auto m2 = metric_block(0.5, 2.0);
    CHECK(m2(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(m2(0, 1) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(m2(1, 1) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(metric_block(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(metric_block(0.0, 1.0), std::invalid_argument);  // r=0 needs opt-in
    CHECK_THROWS_AS(metric_block(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("metric block inverse and positive definiteness") {
    const auto i0 = metric_block_inverse(0.0, 1.0, true);
    CHECK(i0(0, 0) == doctest::Approx(1.0));
    CHECK(i0(1, 1) == doctest::Approx(0.5));

    const auto i = metric_block_inverse(0.5, 1.0);
    CHECK(i(0, 0) == doctest::Approx(2.0 / 1.75).epsilon(1e-15));
    CHECK(i(0, 1) == doctest::Approx(-0.5 / 1.75).epsilon(1e-15));

    auto rng = oracles::seeded_rng();
    std::uniform_real_distribution<double> rdist(0.01, 0.99), sdist(0.1, 10.0);
    for (int i2 = 0; i2 < 100; ++i2) {
        const double r = rdist(rng), s = sdist(rng);
        const Eigen::Matrix2d prod = metric_block(r, s) * metric_block_inverse(r, s);
        CHECK((prod - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s * s * metric_block(r, s));
        const auto d = diagonalize(r);
        CHECK(es.eigenvalues()[0] == doctest::Approx(d.alpha_minus).epsilon(1e-12));
        CHECK(es.eigenvalues()[1] == doctest::Approx(d.alpha_plus).epsilon(1e-12));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("both determinant conventions and their ratio") {
    ModelParams p1 = ModelParams::uniform(1, 1e-12, 1.0, 1.0);
    // r -> 0 limit read through the formulas directly.
    Point pt{Frame::original, Eigen::Vector2d(0.0, 1.0)};
    CHECK(volume_metric_determinant(p1, pt) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(block_metric_determinant(p1, pt) == doctest::Approx(2.0).epsilon(1e-9));

    ModelParams p = ModelParams::uniform(1, 0.5, 1.0, 1.0);
    CHECK(volume_metric_determinant(p, pt) == doctest::Approx(1.75).epsilon(1e-15));
    Point pt2{Frame::original, Eigen::Vector2d(0.0, 2.0)};
    CHECK(block_metric_determinant(p, pt2) == doctest::Approx(1.75 / 16.0).epsilon(1e-12));

    ModelParams p2 = ModelParams::uniform(2, 0.5, 1.0, 1.0);
    Eigen::VectorXd c(4);
    c << 0.0, 1.0, 0.0, 2.0;
    Point pt4{Frame::original, c};
    CHECK(volume_metric_determinant(p2, pt4) == doctest::Approx(0.765625).epsilon(1e-12));

    // Discrepancy is exactly the product of sigma^2 over pairs.
    const double ratio = volume_metric_determinant(p2, pt4) / block_metric_determinant(p2, pt4);
    CHECK(ratio == doctest::Approx(1.0 * 1.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("scalar curvature: limits, values, additivity") {
    CHECK(scalar_curvature(Eigen::VectorXd::Zero(3)) == -3.0);
    CHECK(std::abs(scalar_curvature(Eigen::VectorXd::Constant(3, 1e-6)) + 3.0) < 1e-5);
    CHECK(scalar_curvature(Eigen::VectorXd::Constant(1, 0.5)) ==
          doctest::Approx(-2.0 / 1.75).epsilon(1e-15));
    CHECK(scalar_curvature(Eigen::VectorXd::Constant(2, 0.5)) ==
          doctest::Approx(-4.0 / 1.75).epsilon(1e-15));
    CHECK_THROWS_AS(scalar_curvature(Eigen::VectorXd::Constant(1, 1.0)), std::invalid_argument);
}

TEST_CASE("scalar curvature agrees with the finite-difference Ricci oracle") {
    for (int l : {1, 2, 3}) {
        for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            Eigen::VectorXd rv = Eigen::VectorXd::Constant(l, r);
            Eigen::VectorXd x(2 * l);
            for (int k = 0; k < l; ++k) {
                x[2 * k] = 0.3 * (k + 1);
                x[2 * k + 1] = 0.8 + 0.4 * k;
            }
            const double fd = fdgeom::ricci_scalar_fd(block_metric(rv), x, 1e-4);
            const double cl = scalar_curvature(rv);
            CHECK(std::abs(fd - cl) / std::abs(cl) < 1e-5);
        }
    }
}

TEST_CASE("diagonalization bundle values and identities") {
    const auto d = diagonalize(0.5);
    CHECK(d.delta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d.alpha_plus == doctest::Approx((3.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-15));
    CHECK(d.alpha_minus == doctest::Approx((3.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-15));
    CHECK(d.a0 == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.a1 == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));

    for (int i = 1; i < 100; ++i) {
        const double r = i / 100.0;
        const auto b = diagonalize(r);
        CHECK(b.a0 < 0.0);
        CHECK(b.a1 > 0.0);
        CHECK(b.alpha_plus + b.alpha_minus == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(b.alpha_plus * b.alpha_minus == doctest::Approx(2.0 - r * r).epsilon(1e-14));
        CHECK((b.E * b.E_inv - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

        // E^-1 (sigma^2 M) E must be diag(alpha_-, alpha_+).
        Eigen::Matrix2d m;
        m << 1.0, r, r, 2.0;
        const Eigen::Matrix2d diag = b.E_inv * m * b.E;
        CHECK(std::abs(diag(0, 0) - b.alpha_minus) < 1e-10);
        CHECK(std::abs(diag(1, 1) - b.alpha_plus) < 1e-10);
        CHECK(std::abs(diag(0, 1)) < 1e-10);
        CHECK(std::abs(diag(1, 0)) < 1e-10);

        // Eigenvector slopes from an independent eigensolver.
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
        const auto vminus = es.eigenvectors().col(0);
        const auto vplus = es.eigenvectors().col(1);
        CHECK(vminus[1] / vminus[0] == doctest::Approx(b.a0).epsilon(1e-10));
        CHECK(vplus[1] / vplus[0] == doctest::Approx(b.a1).epsilon(1e-10));
    }

    const auto tiny = diagonalize(1e-8);
    CHECK(tiny.alpha_minus / tiny.alpha_plus == doctest::Approx(0.5).epsilon(1e-7));
    CHECK_THROWS_AS(diagonalize(0.0), std::invalid_argument);
    CHECK_THROWS_AS(diagonalize(1.0), std::invalid_argument);

    // D block: the diagonalized metric at sigma = a0 mu~ + a1 sigma~.
    const double mt = 0.2, st = 1.1;
    const double sig = d.a0 * mt + d.a1 * st;
    const auto D = d.D(sig);
    CHECK(D(0, 0) == doctest::Approx(d.alpha_minus / (sig * sig)).epsilon(1e-15));
    CHECK(D(1, 1) == doctest::Approx(d.alpha_plus / (sig * sig)).epsilon(1e-15));
    CHECK(D(0, 1) == 0.0);
}

TEST_CASE("frame transforms: substitutions, round trips, composition") {
    ModelParams p = ModelParams::uniform(1, 0.5, 1.0, 1.0);
    const auto d = diagonalize(0.5);

    Point tilde{Frame::tilde, Eigen::Vector2d(0.0, 1.0)};
    const auto orig = frame_transform(tilde, Frame::original, p);
    CHECK(orig.coords[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(orig.coords[1] == doctest::Approx(d.a1).epsilon(1e-15));

    Point primed{Frame::primed, Eigen::Vector2d(0.0, 1.0)};
    const auto t2 = frame_transform(primed, Frame::tilde, p);
    CHECK(t2.coords[0] == 0.0);
    CHECK(t2.coords[1] == 1.0);

    // primed -> original composition equals the combined closed-form map.
    Point pr{Frame::primed, Eigen::Vector2d(1.0, 1.0)};
    const auto comp = frame_transform(pr, Frame::original, p);
    const double f = d.primed_scale();
    CHECK(comp.coords[0] == doctest::Approx(f * 1.0 + 1.0).epsilon(1e-12));
    CHECK(comp.coords[1] == doctest::Approx(d.a0 * f * 1.0 + d.a1 * 1.0).epsilon(1e-12));

    auto rng = oracles::seeded_rng();
    std::uniform_real_distribution<double> mu(-5.0, 5.0), sg(0.05, 10.0), rr(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
        ModelParams q = ModelParams::uniform(2, rr(rng), 1.0, 1.0);
        Eigen::VectorXd c(4);
        c << mu(rng), sg(rng), mu(rng), sg(rng);
        Point a{Frame::original, c};
        const auto back =
            frame_transform(frame_transform(a, Frame::tilde, q), Frame::original, q);
        CHECK((back.coords - c).cwiseAbs().maxCoeff() < 1e-12 * c.cwiseAbs().maxCoeff() + 1e-13);
    }

    Point bad{Frame::tilde, Eigen::Vector2d(10.0, 0.01)};  // maps to sigma < 0
    CHECK_THROWS_AS(frame_transform(bad, Frame::original, p), std::domain_error);
}

TEST_CASE("asymptotic Christoffel symbols against the finite-difference oracle") {
    const auto c = christoffels_asymptotic(0.5, 1.0);
    CHECK(c.g112 == -1.0);
    CHECK(c.g222 == -1.0);
    CHECK(c.g211 ==
          doctest::Approx((3.0 - std::sqrt(2.0)) / (3.0 + std::sqrt(2.0))).epsilon(1e-15));

    const auto c2 = christoffels_asymptotic(0.5, 2.0);
    CHECK(c2.g112 == doctest::Approx(0.5 * c.g112).epsilon(1e-15));
    CHECK(c2.g211 == doctest::Approx(0.5 * c.g211).epsilon(1e-15));

    const auto c0 = christoffels_asymptotic(1e-8, 1.0);
    CHECK(c0.g211 == doctest::Approx(0.5).epsilon(1e-7));

    for (double r : {0.1, 0.5, 0.9}) {
        const auto dd = diagonalize(r);
        const double k1 = dd.alpha_minus / (dd.a1 * dd.a1), k2 = dd.alpha_plus / (dd.a1 * dd.a1);
        const fdgeom::MetricFn metric = [k1, k2](const Eigen::VectorXd& x) {
            Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
            g(0, 0) = k1 / (x[1] * x[1]);
            g(1, 1) = k2 / (x[1] * x[1]);
            return g;
        };
        for (double s : {0.5, 1.0, 3.0}) {
            Eigen::VectorXd x(2);
            x << 0.0, s;
            const auto gam = fdgeom::christoffels_fd(metric, x, 1e-5 * std::max(1.0, s));
            const auto sym = christoffels_asymptotic(r, s);
            CHECK(std::abs(gam[0](0, 1) - sym.g112) / std::abs(sym.g112) < 1e-6);
            CHECK(std::abs(gam[1](0, 0) - sym.g211) / std::abs(sym.g211) < 1e-6);
            CHECK(std::abs(gam[1](1, 1) - sym.g222) / std::abs(sym.g222) < 1e-6);

            const auto R = fdgeom::riemann_covariant_fd(metric, x, 1e-4 * std::max(1.0, s));
            const double fd1212 = R[((0 * 2 + 1) * 2 + 0) * 2 + 1];
            CHECK(std::abs(fd1212 - riemann_1212_covariant(r, s)) /
                      std::abs(riemann_1212_covariant(r, s)) <
                  1e-6);
        }
    }
}

TEST_CASE("riemann component: value, scalings, sign, reference variant") {
    const auto d = diagonalize(0.5);
    const double v1 = riemann_1212_covariant(0.5, 1.0);
    CHECK(v1 == doctest::Approx(-d.alpha_minus / (d.a1 * d.a1)).epsilon(1e-15));
    CHECK(v1 == doctest::Approx(-0.136039).epsilon(1e-4));

    // Covariant component scales as 1/sigma^4; the displayed form as 1/sigma^2.
    CHECK(riemann_1212_covariant(0.5, 2.0) == doctest::Approx(v1 / 16.0).epsilon(1e-12));
    CHECK(riemann_1212_reference(0.5, 2.0) == doctest::Approx(v1 / 4.0).epsilon(1e-12));
    CHECK(riemann_1212_reference(0.5, 1.0) == v1);

    for (double r : {0.05, 0.3, 0.6, 0.95})
        for (double s : {0.2, 1.0, 7.0}) {
            CHECK(riemann_1212_covariant(r, s) < 0.0);
            CHECK(riemann_1212_reference(r, s) < 0.0);
        }
}

TEST_CASE("curvature bundle") {
    ModelParams p = ModelParams::uniform(2, 0.5, 1.0, 1.0);
    Eigen::VectorXd s(2);
    s << 1.0, 2.0;
    const auto b = curvature_bundle(p, s);
    CHECK(b.christoffels.size() == 2);
    CHECK(b.scalar < 0.0);
    CHECK(b.riemann_1212[0] == riemann_1212_covariant(0.5, 1.0));
    CHECK(b.riemann_1212_reference[1] == riemann_1212_reference(0.5, 2.0));
}

TEST_CASE("model params validation") {
    CHECK_THROWS_WITH_AS(ModelParams::uniform(1, 1.5, 1.0, 1.0).validate(),
                         "ModelParams: r out of (0,1)", std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::uniform(1, 0.5, -1.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::uniform(1, 0.5, 1.0, 0.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(ModelParams::uniform(3, 0.5, 1.0, 1.0).validate());
}
