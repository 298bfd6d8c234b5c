#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "crdme/rng.hpp"
#include "crdme/statistics.hpp"

using namespace crdme;

namespace {

ReactionTimeSamples make_samples(const std::vector<double>& times,
                                 const std::vector<bool>& censored)
{
    std::vector<Sample> raw(times.size());
    for (size_t i = 0; i < times.size(); ++i)
        raw[i] = {times[i], censored.empty() ? false : censored[i]};
    return ReactionTimeSamples::from(raw, "test", 1);
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("samples are sorted with censor flags kept in step")
{
    const ReactionTimeSamples s =
        make_samples({3.0, 1.0, 2.0, 1.5}, {true, false, false, true});
    CHECK(s.times == std::vector<double>{1.0, 1.5, 2.0, 3.0});
    CHECK(s.censored == std::vector<bool>{false, true, false, true});
    CHECK(s.censored_count() == 2);
    CHECK(s.replicates == 4);
    CHECK(s.config_digest == "test");
}

TEST_CASE("ecdf on a tiny known sample")
{
    const ReactionTimeSamples s = make_samples({1.0, 2.0, 2.0, 4.0}, {});
    const EcdfCurve c = ecdf(s);
    REQUIRE(c.t.size() == 3);
    CHECK(c.t == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(c.f[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.f[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.f[2] == doctest::Approx(1.0).epsilon(1e-15));

    const double z = 1.959963984540054;
    for (size_t i = 0; i < c.t.size(); ++i) {
        const double half = z * std::sqrt(c.f[i] * (1.0 - c.f[i]) / 4.0);
        CHECK(c.lo95[i] == doctest::Approx(std::max(0.0, c.f[i] - half)).epsilon(1e-12));
        CHECK(c.hi95[i] == doctest::Approx(std::min(1.0, c.f[i] + half)).epsilon(1e-12));
    }
}

TEST_CASE("censored samples depress the plateau instead of vanishing")
{
    // One reaction at t = 1, one run censored at t = 5: F stays at 1/2 and
    // the censor time contributes no curve point.
    const ReactionTimeSamples s = make_samples({1.0, 5.0}, {false, true});
    const EcdfCurve c = ecdf(s);
    REQUIRE(c.t.size() == 1);
    CHECK(c.t[0] == 1.0);
    CHECK(c.f[0] == 0.5);
    CHECK(ecdf(make_samples({}, {})).t.empty());
}

TEST_CASE("the area above the ecdf equals the sample mean")
{
    RngStream rng(1411, 0);
    std::vector<double> times(500);
    for (double& t : times)
        t = rng.exponential(2.5);
    const ReactionTimeSamples s = make_samples(times, {});
    const EcdfCurve c = ecdf(s);

    double integral = c.t[0];
    for (size_t i = 1; i < c.t.size(); ++i)
        integral += (c.t[i] - c.t[i - 1]) * (1.0 - c.f[i - 1]);
    const MeanCi m = mean_ci(s);
    CHECK(integral == doctest::Approx(m.mean).epsilon(1e-12));
}

TEST_CASE("ecdf tracks the true cdf within the DKW band")
{
    RngStream rng(2022, 0);
    const int n = 5000;
    std::vector<double> times(n);
    for (double& t : times)
        t = rng.exponential(1.0);
    const EcdfCurve c = ecdf(make_samples(times, {}));
    double worst = 0.0;
    for (size_t i = 0; i < c.t.size(); ++i)
        worst = std::max(worst, std::fabs(c.f[i] - (-std::expm1(-c.t[i]))));
    // DKW: P(sup > eps) <= 2 exp(-2 n eps^2); eps = 0.04 puts that at ~2e-7.
    CHECK(worst < 0.04);
}

TEST_CASE("mean_ci matches a hand-computed interval and rejects bad input")
{
    const ReactionTimeSamples s = make_samples({1.0, 2.0, 3.0}, {});
    const MeanCi m = mean_ci(s);
    CHECK(m.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.half_width ==
          doctest::Approx(1.959963984540054 / std::sqrt(3.0)).epsilon(1e-9));

    const MeanCi wide = mean_ci(s, 0.99);
    CHECK(wide.half_width > m.half_width);

    CHECK_THROWS_AS(mean_ci(make_samples({}, {})), std::invalid_argument);
    CHECK_THROWS_AS(mean_ci(make_samples({1.0, 2.0}, {false, true})),
                    std::invalid_argument);
    CHECK_THROWS_AS(mean_ci(s, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mean_ci(s, 0.0), std::invalid_argument);
}

TEST_CASE("ci overlap is symmetric and uses the half-width sum")
{
    CHECK(ci_overlap({1.0, 0.3}, {1.5, 0.3}));
    CHECK(ci_overlap({1.5, 0.3}, {1.0, 0.3}));
    CHECK(!ci_overlap({1.0, 0.2}, {1.5, 0.2}));
    CHECK(ci_overlap({2.0, 0.0}, {2.0, 0.0}));
}

TEST_CASE("successive diffs")
{
    CHECK(successive_diffs({5.0, 3.0, 4.0}) == std::vector<double>{2.0, 1.0});
    CHECK(successive_diffs({1.0}).empty());
    CHECK(successive_diffs({}).empty());
}

TEST_CASE("log divergence fit recovers an exact line")
{
    // y = 2 ln(1/h) + 3.
    const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> y;
    for (const double hh : h)
        y.push_back(2.0 * std::log(1.0 / hh) + 3.0);
    const LineFit fit = log_divergence_fit(h, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(log_divergence_fit({0.1}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_divergence_fit({0.1, 0.2}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_divergence_fit({0.1, -0.2}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_divergence_fit({0.1, 0.1}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("ks statistic on exactly known configurations")
{
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(ks_two_sample(x, x).statistic == 0.0);
    CHECK(ks_two_sample(x, x).p_value == 1.0);

    const std::vector<double> lo{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> hi{10.0, 11.0, 12.0, 13.0};
    const KsResult split = ks_two_sample(lo, hi);
    CHECK(split.statistic == 1.0);
    CHECK(ks_two_sample(hi, lo).statistic == 1.0);

    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), std::invalid_argument);
}

TEST_CASE("ks accepts equal laws and rejects separated ones")
{
    RngStream rng(64, 0);
    const int n = 2000;
    std::vector<double> x(n), y(n), shifted(n);
    for (int i = 0; i < n; ++i) {
        double z0, z1;
        rng.normal_pair(&z0, &z1);
        x[i] = z0;
        y[i] = z1;
        shifted[i] = z1 + 0.2;
    }
    const KsResult same = ks_two_sample(x, y);
    CHECK(same.p_value > 1e-3);
    const KsResult apart = ks_two_sample(x, shifted);
    CHECK(apart.p_value < 1e-3);
    // Symmetry of the two-sample statistic.
    CHECK(ks_two_sample(x, y).statistic == ks_two_sample(y, x).statistic);
}

TEST_CASE("inverse normal cdf round-trips against erfc")
{
    CHECK(std::fabs(inverse_normal_cdf(0.5)) < 1e-12);
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-9));
    for (const double p : {1e-10, 1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-6}) {
        const double z = inverse_normal_cdf(p);
        const double back = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(std::fabs(back - p) < 1e-12 * std::max(1.0, std::fabs(p)) + 1e-15);
    }
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::invalid_argument);
    CHECK_THROWS_AS(inverse_normal_cdf(-0.5), std::invalid_argument);
}

}
