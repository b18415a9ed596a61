#include <doctest.h>

#include <random>

#include "gpde/errors.hpp"
#include "gpde/g_function.hpp"
#include "test_helpers.hpp"

using namespace gpde;
using namespace gpde::testing;

TEST_CASE("g_value closed form on intervals") {
    const CovarianceSet band = CovarianceSet::interval(1.0, 4.0);
    CHECK(g_value(SymMatrix::scalar(2.0), band) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(g_value(SymMatrix::scalar(-2.0), band) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g_value(SymMatrix::scalar(0.0), band) == 0.0);
}

TEST_CASE("g_value ignores off-diagonal entries") {
    CovarianceSet band({1.0, 0.5}, {3.0, 2.0});
    SymMatrix a(2);
    a.set(0, 0, 1.5);
    a.set(1, 1, -0.5);
    const double base = g_value(a, band);
    a.set(0, 1, 7.3);
    CHECK(g_value(a, band) == base);
}

TEST_CASE("g_value dimension mismatch throws") {
    CHECK_THROWS_AS(g_value(SymMatrix(2), CovarianceSet::interval(1.0, 2.0)), DimensionError);
}

TEST_CASE("check_nondegenerate verdicts") {
    auto rep = check_nondegenerate(CovarianceSet::interval(1.0, 4.0));
    CHECK(rep.pass);
    CHECK(rep.min_lower == 1.0);
    CHECK(rep.max_upper == 4.0);

    rep = check_nondegenerate(CovarianceSet::interval(0.0, 4.0));
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.axes[0].pass);

    rep = check_nondegenerate(CovarianceSet::interval(2.0, 2.0));
    CHECK(rep.pass);  // singleton band: the generator degenerates to linear
}

TEST_CASE("sublinear generator properties on random samples") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> ulam(0.0, 3.0);
    std::uniform_real_distribution<double> uband(0.05, 3.0);

    for (int trial = 0; trial < 2000; ++trial) {
        const int dim = 1 + static_cast<int>(rng() % 3);
        std::vector<double> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            const double a = uband(rng), b = uband(rng);
            lo[static_cast<size_t>(i)] = std::min(a, b);
            hi[static_cast<size_t>(i)] = std::max(a, b);
        }
        const CovarianceSet band(lo, hi);
        const SymMatrix a = random_sym(rng, dim);
        const SymMatrix b = random_sym(rng, dim);

        // positive homogeneity
        const double lambda = ulam(rng);
        CHECK(g_value(a * lambda, band) ==
              doctest::Approx(lambda * g_value(a, band)).epsilon(1e-12));

        // sub-additivity
        CHECK(g_value(a + b, band) <= g_value(a, band) + g_value(b, band) + 1e-12);

        // monotonicity and the ellipticity sandwich on a dominating pair
        const SymMatrix big = random_psd_dominating(rng, b);
        const double gap = g_value(big, band) - g_value(b, band);
        CHECK(gap >= -1e-12);
        const double tr = (big + b * -1.0).trace();
        CHECK(gap >= 0.5 * band.min_lower() * tr - 1e-12);
        CHECK(gap <= 0.5 * band.max_upper() * tr + 1e-12);
    }
}

TEST_CASE("g_value equals the dense grid supremum") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + static_cast<int>(rng() % 3);
        std::vector<double> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
        std::uniform_real_distribution<double> uband(0.1, 2.0);
        for (int i = 0; i < dim; ++i) {
            const double a = uband(rng), b = uband(rng);
            lo[static_cast<size_t>(i)] = std::min(a, b);
            hi[static_cast<size_t>(i)] = std::max(a, b) + 0.05;
        }
        const CovarianceSet band(lo, hi);
        const SymMatrix a = random_sym(rng, dim);

        const int points = 41;
        const double oracle = g_value_grid_oracle(a, band, points);
        const double exact = g_value(a, band);
        CHECK(exact >= oracle - 1e-12);  // grid maximum can never exceed the sup
        double resolution = 0.0;
        for (int i = 0; i < dim; ++i)
            resolution += 0.5 * std::fabs(a(i, i)) *
                          (hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)]) /
                          (points - 1);
        CHECK(exact <= oracle + resolution + 1e-12);
    }
}
