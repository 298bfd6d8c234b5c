#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "crdme/bd_engine.hpp"

using namespace crdme;

TEST_SUITE("bd_engine") {

TEST_CASE("frozen molecules stay put")
{
    BdConfig cfg;
    cfg.L = 1.0;
    cfg.D_A = 0.0;
    cfg.D_B = 0.0;
    cfg.dt = 1e-3;
    RngStream rng(1, 0);
    BdState s;
    s.a = {0.25, 0.75};
    s.b = {0.5, 0.5};
    for (int i = 0; i < 100; ++i)
        bd_step(s, cfg, rng);
    CHECK(s.a.x == 0.25);
    CHECK(s.a.y == 0.75);
    CHECK(s.b.x == 0.5);
    CHECK(s.b.y == 0.5);
    CHECK(s.steps == 100);
    CHECK(s.t(cfg.dt) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("free increments have variance 2 D dt per axis")
{
    BdConfig cfg;
    cfg.L = 1e6;  // walls out of reach
    cfg.D_A = 2.0;
    cfg.D_B = 7.0;
    cfg.dt = 1e-4;
    RngStream rng(88, 0);

    const int n = 200000;
    double qa = 0.0, qb = 0.0, ma = 0.0;
    for (int i = 0; i < n; ++i) {
        BdState s;
        s.a = {5e5, 5e5};
        s.b = {5e5, 5e5};
        bd_step(s, cfg, rng);
        const double dax = s.a.x - 5e5;
        const double dbx = s.b.x - 5e5;
        ma += dax;
        qa += dax * dax;
        qb += dbx * dbx;
    }
    const double va = 2.0 * cfg.D_A * cfg.dt;
    const double vb = 2.0 * cfg.D_B * cfg.dt;
    CHECK(std::fabs(ma / n) < 4.0 * std::sqrt(va / n));
    CHECK(std::fabs(qa / n - va) < 4.0 * va * std::sqrt(2.0 / n));
    CHECK(std::fabs(qb / n - vb) < 4.0 * vb * std::sqrt(2.0 / n));
}

TEST_CASE("variance grows linearly over many free steps")
{
    BdConfig cfg;
    cfg.L = 1e6;
    cfg.D_A = 10.0;
    cfg.D_B = 10.0;
    cfg.dt = 1e-7;
    RngStream rng(99, 0);

    const int paths = 4000;
    const int steps = 100;
    double q = 0.0;
    for (int p = 0; p < paths; ++p) {
        BdState s;
        s.a = {5e5, 5e5};
        s.b = {5e5, 5e5};
        for (int i = 0; i < steps; ++i)
            bd_step(s, cfg, rng);
        const double d = s.a.x - 5e5;
        q += d * d;
    }
    const double expect = 2.0 * cfg.D_A * cfg.dt * steps;
    CHECK(std::fabs(q / paths - expect) < 4.0 * expect * std::sqrt(2.0 / paths));
}

TEST_CASE("reflection keeps every coordinate inside the box")
{
    BdConfig cfg;
    cfg.L = 0.01;
    cfg.D_A = 10.0;
    cfg.D_B = 10.0;
    cfg.dt = 1e-6;  // step sigma ~ 0.45 L, reflections constantly
    RngStream rng(31337, 0);
    BdState s;
    s.a = {0.005, 0.005};
    s.b = {0.002, 0.009};
    for (int i = 0; i < 20000; ++i) {
        bd_step(s, cfg, rng);
        REQUIRE(s.a.x >= 0.0);
        REQUIRE(s.a.x <= cfg.L);
        REQUIRE(s.a.y >= 0.0);
        REQUIRE(s.a.y <= cfg.L);
        REQUIRE(s.b.x >= 0.0);
        REQUIRE(s.b.x <= cfg.L);
        REQUIRE(s.b.y >= 0.0);
        REQUIRE(s.b.y <= cfg.L);
    }
}

TEST_CASE("the reflected walk mixes to the uniform law")
{
    // Start both walkers at the center, run long past the mixing time, and
    // bin the end positions on a 10 x 10 grid: chi-square, 99 dof, 99th
    // percentile.
    BdConfig cfg;
    cfg.L = 1.0;
    cfg.D_A = 0.5;
    cfg.D_B = 0.5;
    cfg.dt = 0.01;  // sigma = 0.1 L per step
    const int reps = 2500;
    const int steps = 200;

    std::vector<int> counts(100, 0);
    for (int r = 0; r < reps; ++r) {
        RngStream rng(4242, r);
        BdState s;
        s.a = {0.5, 0.5};
        s.b = {0.5, 0.5};
        for (int i = 0; i < steps; ++i)
            bd_step(s, cfg, rng);
        for (const Vec2 p : {s.a, s.b}) {
            const int ix = std::min(9, static_cast<int>(p.x * 10.0));
            const int iy = std::min(9, static_cast<int>(p.y * 10.0));
            ++counts[ix + 10 * iy];
        }
    }
    const double expect = 2.0 * reps / 100.0;
    double chi2 = 0.0;
    for (const int c : counts)
        chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 134.64161685578915);
}

TEST_CASE("contact reactions follow the geometric law in the step count")
{
    // Domain much smaller than rb and D = 0: the pair is always in contact,
    // so the step count to reaction is geometric with p = 1 - exp(-lambda dt).
    BdConfig cfg;
    cfg.L = 1e-3;
    cfg.D_A = 0.0;
    cfg.D_B = 0.0;
    cfg.rb = 0.1;
    cfg.dt = 1e-6;
    cfg.lambda = 1e3;  // lambda dt = 1e-3
    const double p = -std::expm1(-cfg.lambda * cfg.dt);

    const uint64_t n = 20000;
    const std::vector<Sample> samples = run_bd_replicates(cfg, n, 555, 1);
    double sum_steps = 0.0;
    for (const Sample& s : samples) {
        CHECK(!s.censored);
        CHECK(s.time >= cfg.dt);
        sum_steps += s.time / cfg.dt;
    }
    const double mean = sum_steps / n;
    const double mu = 1.0 / p;
    const double sd = std::sqrt(1.0 - p) / p;
    CHECK(std::fabs(mean - mu) < 4.0 * sd / std::sqrt(1.0 * n));
}

TEST_CASE("zero lambda censors at exactly t_max")
{
    BdConfig cfg;
    cfg.L = 0.2;
    cfg.dt = 1e-5;
    cfg.lambda = 0.0;
    cfg.t_max = 1e-3;
    const std::vector<Sample> samples = run_bd_replicates(cfg, 16, 9, 1);
    for (const Sample& s : samples) {
        CHECK(s.censored);
        CHECK(s.time == 1e-3);
    }
}

TEST_CASE("config validation and worker invariance")
{
    BdConfig cfg;
    cfg.dt = 0.0;
    RngStream rng(1, 0);
    CHECK_THROWS_AS(simulate_bd(cfg, rng), std::invalid_argument);
    cfg.dt = 1e-5;
    cfg.L = 0.0;
    CHECK_THROWS_AS(simulate_bd(cfg, rng), std::invalid_argument);

    cfg.L = 0.01;
    cfg.lambda = 1e7;
    cfg.rb = 1e-3;
    cfg.t_max = 1e-2;
    const std::vector<Sample> one = run_bd_replicates(cfg, 48, 2024, 1);
    const std::vector<Sample> four = run_bd_replicates(cfg, 48, 2024, 4);
    REQUIRE(one.size() == four.size());
    for (size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].time == four[i].time);
        CHECK(one[i].censored == four[i].censored);
    }
}

}
