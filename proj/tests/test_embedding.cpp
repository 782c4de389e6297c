#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "igeo/embedding.hpp"
#include "igeo/errors.hpp"

using namespace igeo;
using namespace igeo::embedding;

TEST_CASE("induced coefficients") {
    const auto c0 = induced_coefficients(0.0, 0.0);
    CHECK(c0.A_mumu == 1.0);
    CHECK(c0.A_musigma == 0.0);
    CHECK(c0.A_sigmasigma == 2.0);

    const auto c1 = induced_coefficients(1.0, 2.0);
    CHECK(c1.A_mumu == 2.0);
    CHECK(c1.A_musigma == 2.0);
    CHECK(c1.A_sigmasigma == 4.0);

    const auto c2 = induced_coefficients(1.0, 0.0);
    CHECK(c2.A_mumu == 2.0);
    CHECK(c2.A_musigma == 0.0);
    CHECK(c2.A_sigmasigma == 2.0);

    CHECK_THROWS_AS(induced_coefficients(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("correlation from partials: values and the zero rule") {
    CHECK(correlation_from_partials(1.0, 2.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(correlation_from_partials(5.0, 0.0) == 0.0);
    CHECK(correlation_from_partials(0.0, 5.0) == 0.0);
    // 1/(sqrt(2) sqrt(2.5)) = 1/sqrt(5).
    CHECK(correlation_from_partials(1.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("correlation bound and sign symmetries over a dense grid") {
    // The sharp bound is |r| < sqrt(2): the induced block (1/sigma^2)[[1,r],[r,2]]
    // stays positive definite iff 2 - r^2 > 0, and the normalized cross term
    // approaches sqrt(2) as both partials grow. |r| < 1 holds only for
    // moderate partials; the model itself assumes r in (0,1).
    double sup = 0.0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double p = -50.0 + i * (100.0 / 99.0);
            const double q = -50.0 + j * (100.0 / 99.0);
            const double r = correlation_from_partials(p, q);
            sup = std::max(sup, std::abs(r));
            CHECK(correlation_from_partials(-p, -q) == r);
            CHECK(correlation_from_partials(-p, q) == -r);
        }
    CHECK(sup < std::sqrt(2.0));
    CHECK(sup > 1.0);  // large partials do exceed 1; sqrt(2) is the sharp bound

    double sup_moderate = 0.0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j)
            sup_moderate = std::max(
                sup_moderate,
                std::abs(correlation_from_partials(-1.0 + 0.02 * i, -1.0 + 0.02 * j)));
    CHECK(sup_moderate < 1.0);
}

TEST_CASE("linear route equals the partials route exactly") {
    for (double a1 : {-3.0, -1.0, 0.5, 2.0})
        for (double a2 : {-2.0, 0.0, 1.0, 4.0})
            CHECK(correlation_from_linear(a1, a2) == correlation_from_partials(a1, a2));
}

TEST_CASE("pullback oracle on linear, constant and product constraints") {
    const auto lin = EmbeddingSpec::linear(1.0, 2.0);
    for (double mu1 : {-2.0, 0.3})
        for (double s1 : {0.5, 3.0}) {
            const auto rep = pullback_metric_oracle(lin, mu1, s1, 1e-4);
            CHECK(std::abs(rep.r - 1.0 / std::sqrt(2.0)) < 1e-6);
        }

    EmbeddingSpec constant;
    constant.constraint = [](double, double) { return 4.2; };
    const auto rep0 = pullback_metric_oracle(constant, 1.0, 1.0, 1e-4);
    CHECK(rep0.r == 0.0);
    CHECK(rep0.A_mumu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep0.A_musigma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep0.A_sigmasigma == doctest::Approx(2.0).epsilon(1e-12));

    // The product constraint has partials (sigma1, mu1) = (1, 1) at (1, 1);
    // the induced correlation is evaluated pointwise there.
    EmbeddingSpec prod;
    prod.constraint = [](double mu1, double s1) { return mu1 * s1; };
    const auto repp = pullback_metric_oracle(prod, 1.0, 1.0, 1e-4);
    CHECK(std::abs(repp.r - correlation_from_partials(1.0, 1.0)) < 1e-6);
}

TEST_CASE("pullback oracle converges at O(h^2) on a curved constraint") {
    EmbeddingSpec spec;
    spec.constraint = [](double mu1, double s1) { return std::sin(mu1) * std::cosh(s1); };
    const double p = std::cos(0.8) * std::cosh(1.1);
    const double q = std::sin(0.8) * std::sinh(1.1);
    const double exact = correlation_from_partials(p, q);
    const double e1 = std::abs(pullback_metric_oracle(spec, 0.8, 1.1, 2e-3).r - exact);
    const double e2 = std::abs(pullback_metric_oracle(spec, 0.8, 1.1, 1e-3).r - exact);
    CHECK(e1 / e2 >= 3.0);
    CHECK(e2 < 1e-6);
}

TEST_CASE("pullback oracle error handling") {
    const auto lin = EmbeddingSpec::linear(1.0, 2.0);
    CHECK_THROWS_AS(pullback_metric_oracle(lin, 0.0, 1e-13, 1e-4), SingularityError);
    CHECK_THROWS_AS(pullback_metric_oracle(lin, 0.0, 1.0, 0.0), std::invalid_argument);
    EmbeddingSpec bad;
    bad.constraint = [](double, double) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(pullback_metric_oracle(bad, 0.0, 1.0, 1e-4), NonFiniteError);
}

TEST_CASE("variable rescaling") {
    const auto [m1, s1] = rescale_variables(3.0, 4.0, 1.0, 2.0);
    CHECK(m1 == 3.0);
    CHECK(s1 == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));

    const auto [m2, s2] = rescale_variables(0.0, 2.5, 1.0, 2.0);
    CHECK(m2 == 0.0);
    CHECK(s2 > 0.0);

    const auto c = induced_coefficients(1.0, 2.0);
    const auto [m3, s3] = rescale_variables(1.0, 1.0, c.A_mumu, c.A_sigmasigma);
    CHECK(m3 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s3 == doctest::Approx(2.0).epsilon(1e-15));
}
