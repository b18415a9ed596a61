#include <doctest.h>

#include <random>

#include "gpde/driver.hpp"
#include "gpde/errors.hpp"
#include "test_helpers.hpp"

using namespace gpde;
using namespace gpde::testing;

namespace {

const CovarianceSet kBand = CovarianceSet::interval(1.0, 4.0);

}  // namespace

TEST_CASE("assembly reduces to the generator when only sigma is present") {
    const ProblemSpec spec = canonical_spec();
    const auto out = assemble_driver(spec, kBand, 0.0, 0.0, 0.0, {0.0}, SymMatrix::scalar(2.0));
    CHECK(out.H(0, 0) == 2.0);
    CHECK(out.F == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("pure drift term survives alone") {
    ProblemSpec spec = canonical_spec();
    spec.sigma = {expr({TB(0.0)})};
    spec.b = {expr({TB(1.0)})};
    const auto out = assemble_driver(spec, kBand, 0.0, 0.0, 0.0, {2.0}, SymMatrix::scalar(0.0));
    CHECK(out.F == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("variation driver g feeds the generator argument") {
    // g = y, v = 1, A = 0, p = 0: H = 2g = 2, F = G(2) = 4 (band [1,4])
    ProblemSpec spec = canonical_spec();
    spec.g = {expr({TB(1.0).y()})};
    const auto out = assemble_driver(spec, kBand, 0.0, 0.0, 1.0, {0.0}, SymMatrix::scalar(0.0));
    CHECK(out.H(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(out.F == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("assembly is deterministic and matches the scalar fast path") {
    ProblemSpec spec = canonical_spec();
    spec.b = {expr({TB(0.5).sin_t().tanh_x()})};
    spec.h = {expr({TB(0.2).cos_x(2.0)})};
    spec.g = {expr({TB(0.3).tanh_z()})};
    spec.f = expr({TB(1.0).cos2_t().y(), TB(0.4).tanh_z()});

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double t = std::fabs(u(rng)) * 10.0, x = u(rng), v = u(rng), p = u(rng),
                     a = u(rng);
        const auto once = assemble_driver(spec, kBand, t, x, v, {p}, SymMatrix::scalar(a));
        const auto twice = assemble_driver(spec, kBand, t, x, v, {p}, SymMatrix::scalar(a));
        CHECK(once.F == twice.F);  // bit-identical
        CHECK(once.H(0, 0) == twice.H(0, 0));
        CHECK(driver_value_1d(spec, kBand, t, x, v, p, a) ==
              doctest::Approx(once.F).epsilon(1e-14));
    }
}

TEST_CASE("driver is monotone in the Hessian argument") {
    ProblemSpec spec = canonical_spec();
    spec.sigma = {expr({TB(1.0), TB(0.25).tanh_x()})};
    spec.g = {expr({TB(0.3).tanh_y()})};
    spec.f = expr({TB(0.5).y()});

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double t = std::fabs(u(rng)), x = u(rng), v = u(rng), p = u(rng);
        const double lo = u(rng);
        const double hi = lo + std::fabs(u(rng));
        const double f_lo = driver_value_1d(spec, kBand, t, x, v, p, lo);
        const double f_hi = driver_value_1d(spec, kBand, t, x, v, p, hi);
        CHECK(f_hi >= f_lo - 1e-12);
    }
}

TEST_CASE("assembly rejects bad shapes and overflow") {
    ProblemSpec spec = canonical_spec();
    CHECK_THROWS_AS(
        assemble_driver(spec, CovarianceSet({1.0, 1.0}, {2.0, 2.0}), 0.0, 0.0, 0.0, {0.0},
                        SymMatrix::scalar(0.0)),
        DimensionError);
    CHECK_THROWS_AS(
        assemble_driver(spec, kBand, 0.0, 0.0, 0.0, {0.0, 1.0}, SymMatrix::scalar(0.0)),
        DimensionError);

    spec.f = expr({TB(1e308).mono(2)});
    try {
        assemble_driver(spec, kBand, 0.0, 1e60, 0.0, {0.0}, SymMatrix::scalar(0.0));
        FAIL("expected NumericRangeError");
    } catch (const NumericRangeError& e) {
        CHECK(e.coefficient() == std::string("f"));
        CHECK(e.term_index() == 0);
    }
}
