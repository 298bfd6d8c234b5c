#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "crdme/rates.hpp"

using namespace crdme;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("rates") {

TEST_CASE("well-mixed rate is lambda times the reactive volume")
{
    CHECK(well_mixed_rate(1e9, 1e-3, 2) == doctest::Approx(1000.0 * kPi).epsilon(1e-14));
    CHECK(well_mixed_rate(2.0, 0.5, 2) == doctest::Approx(2.0 * kPi * 0.25).epsilon(1e-14));
    CHECK(well_mixed_rate(3.0, 0.5, 3) ==
          doctest::Approx(3.0 * (4.0 / 3.0) * kPi * 0.125).epsilon(1e-14));
    CHECK(well_mixed_rate(0.0, 1.0, 2) == 0.0);
    CHECK_THROWS_AS(well_mixed_rate(1.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(well_mixed_rate(1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("k_doi frozen reference values")
{
    CHECK(k_doi(10.0, 1e-3, 1e9) == doctest::Approx(0.113097335581035).epsilon(1e-12));
    CHECK(k_doi(1.0, 1.0, 1.0) == doctest::Approx(2.995896192888972).epsilon(1e-12));
    CHECK(k_doi(10.0, 1e-3, 1e7) == doctest::Approx(0.02995896192888972).epsilon(1e-12));
    CHECK(k_doi(2.5, 0.01, 1e5) == doctest::Approx(0.1627301671877727).epsilon(1e-12));
}

TEST_CASE("k_doi saturates at the diffusion limit for large lambda")
{
    const double limit = 4.0 * kPi * 10.0 * 1e-3;
    CHECK(k_doi(10.0, 1e-3, 1e30) == doctest::Approx(limit).epsilon(1e-10));
    CHECK(k_doi(10.0, 1e-3, 1e30) < limit);
}

TEST_CASE("k_doi matches the well-mixed 3-d rate for small lambda")
{
    // 1 - tanh(z)/z ~ z^2/3 as z -> 0, so k -> lambda (4/3) pi rb^3.
    const double lambda = 1e-2;
    CHECK(k_doi(10.0, 1e-3, lambda) ==
          doctest::Approx(well_mixed_rate(lambda, 1e-3, 3)).epsilon(1e-6));
}

TEST_CASE("k_doi is continuous across the series switch and monotone in lambda")
{
    // z = rb sqrt(lambda / D) crosses 1e-4 at lambda = 0.1 for these values.
    const double below = k_doi(10.0, 1e-3, 0.1 * (1.0 - 1e-3));
    const double above = k_doi(10.0, 1e-3, 0.1 * (1.0 + 1e-3));
    CHECK(below < above);
    CHECK(below == doctest::Approx(above).epsilon(1e-5));

    double prev = 0.0;
    for (const double lam : {1e-6, 1e-2, 1e2, 1e6, 1e10, 1e14}) {
        const double k = k_doi(10.0, 1e-3, lam);
        CHECK(k > prev);
        prev = k;
    }
}

}
