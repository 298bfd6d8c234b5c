#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crdme/pair_engine.hpp"
#include "crdme/statistics.hpp"

#include "table_fixtures.hpp"

using namespace crdme;
using crdme_test::phi_fixture;
using crdme_test::gamma_fixture;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = 1e300;

// First-reaction variant of the pair process: a clock per channel instead of
// one clock plus a channel draw. Same law as simulate_pair, different
// algorithm and different RNG consumption, so agreement is a real check of
// the race logic rather than of shared code.
Sample simulate_pair_first_reaction(const PairConfig& cfg, const PhiTable& table,
                                    RngStream& rng)
{
    const LatticeSpec& lat = cfg.lattice;
    const double rate_a = hop_rate(cfg.D_A, lat);
    const double rate_b = hop_rate(cfg.D_B, lat);

    PairState s;
    s.a = {static_cast<int>(rng.uniform_below(lat.N)),
           static_cast<int>(rng.uniform_below(lat.N))};
    s.b = {static_cast<int>(rng.uniform_below(lat.N)),
           static_cast<int>(rng.uniform_below(lat.N))};

    for (;;) {
        const MoveList moves_a = allowed_moves(s.a, lat);
        const MoveList moves_b = allowed_moves(s.b, lat);
        const double react = pair_reaction_propensity(cfg, table, s);

        const double ta = moves_a.count > 0 ? rng.exponential(moves_a.count * rate_a) : kInf;
        const double tb = moves_b.count > 0 ? rng.exponential(moves_b.count * rate_b) : kInf;
        const double tr = react > 0.0 ? rng.exponential(react) : kInf;

        const double dt = std::min({ta, tb, tr});
        if (cfg.t_max && s.t + dt > *cfg.t_max)
            return {*cfg.t_max, true};
        s.t += dt;
        if (tr <= ta && tr <= tb)
            return {s.t, false};
        if (ta <= tb)
            s.a = moves_a.target[rng.uniform_below(moves_a.count)];
        else
            s.b = moves_b.target[rng.uniform_below(moves_b.count)];
    }
}

}  // namespace

TEST_SUITE("pair_engine") {

TEST_CASE("rdme propensity defaults to the well-mixed rate over h^2")
{
    PairConfig cfg;
    cfg.lattice = {0.2, 25};
    cfg.lambda = 1e9;
    cfg.rb = 1e-3;
    const double h2 = cfg.lattice.h() * cfg.lattice.h();
    CHECK(cfg.rdme_propensity() ==
          doctest::Approx(1e9 * kPi * 1e-6 / h2).epsilon(1e-13));
    cfg.k = 0.05;
    CHECK(cfg.rdme_propensity() == doctest::Approx(0.05 / h2).epsilon(1e-13));
}

TEST_CASE("reaction propensity reads phi for crdme and same-voxel k for rdme")
{
    const PhiTable& t = phi_fixture(1.25);
    PairConfig cfg;
    cfg.lattice = {8.0, 8};
    cfg.lambda = 2.0;
    cfg.rb = 1.25;

    PairState s;
    s.a = {3, 3};
    s.b = {4, 4};
    CHECK(pair_reaction_propensity(cfg, t, s) == 2.0 * t.at(1, 1));
    s.b = {3, 3};
    CHECK(pair_reaction_propensity(cfg, t, s) == 2.0 * t.at(0, 0));
    s.b = {7, 0};
    CHECK(pair_reaction_propensity(cfg, t, s) == 0.0);

    cfg.kind = PairEngineKind::Rdme;
    cfg.k = 0.5;
    s.b = {3, 3};
    CHECK(pair_reaction_propensity(cfg, t, s) == doctest::Approx(0.5).epsilon(1e-13));
    s.b = {3, 4};
    CHECK(pair_reaction_propensity(cfg, t, s) == 0.0);
}

TEST_CASE("single-voxel crdme is exactly exponential")
{
    // N = 1 with rb spanning the whole voxel: no hop channel, phi00 = 1, so
    // the reaction time is exponential with rate lambda.
    PairConfig cfg;
    cfg.lattice = {1.0, 1};
    cfg.rb = 2.0;  // rho = 2 >= sqrt(2)
    cfg.lambda = 3.0;
    const PhiTable& t = phi_fixture(2.0);
    REQUIRE(t.at(0, 0) == 1.0);

    const uint64_t n = 20000;
    const std::vector<Sample> samples = run_pair_replicates(cfg, t, n, 11, 1);
    double sum = 0.0, sumsq = 0.0;
    for (const Sample& s : samples) {
        CHECK(!s.censored);
        CHECK(s.time > 0.0);
        sum += s.time;
        sumsq += s.time * s.time;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    const double mu = 1.0 / cfg.lambda;
    CHECK(std::fabs(mean - mu) < 4.0 * mu / std::sqrt(1.0 * n));
    // Var(s^2) for an exponential is ~ 8 mu^4 / n.
    CHECK(std::fabs(var - mu * mu) < 4.0 * std::sqrt(8.0 / n) * mu * mu);
}

TEST_CASE("single-voxel rdme is exponential at k over h^2")
{
    PairConfig cfg;
    cfg.lattice = {1.0, 1};
    cfg.rb = 0.01;
    cfg.lambda = 1e4;  // k defaults to lambda pi rb^2 = pi * 1e0
    cfg.kind = PairEngineKind::Rdme;
    const PhiTable dummy(cfg.rho(), 0, {0.0});

    const uint64_t n = 20000;
    const std::vector<Sample> samples = run_pair_replicates(cfg, dummy, n, 12, 1);
    double sum = 0.0;
    for (const Sample& s : samples)
        sum += s.time;
    const double mean = sum / n;
    const double mu = 1.0 / kPi;
    CHECK(std::fabs(mean - mu) < 4.0 * mu / std::sqrt(1.0 * n));
}

TEST_CASE("zero total propensity censors at the cap or refuses to run")
{
    PairConfig cfg;
    cfg.lattice = {1.0, 1};
    cfg.rb = 0.5;
    cfg.lambda = 0.0;
    const PhiTable& t = phi_fixture(0.5);

    RngStream rng(5, 0);
    CHECK_THROWS_AS(simulate_pair(cfg, t, rng), std::runtime_error);

    cfg.t_max = 0.01;
    for (int r = 0; r < 32; ++r) {
        RngStream rr(5, r);
        const Sample s = simulate_pair(cfg, t, rr);
        CHECK(s.censored);
        CHECK(s.time == 0.01);
    }

    // Hops alone cannot make the pair react when lambda = 0.
    cfg.lattice = {1.0, 4};
    for (int r = 0; r < 8; ++r) {
        RngStream rr(6, r);
        const Sample s = simulate_pair(cfg, t, rr);
        CHECK(s.censored);
        CHECK(s.time == 0.01);
    }
}

TEST_CASE("replicate ensembles are worker-count invariant")
{
    PairConfig cfg;
    cfg.lattice = {0.05, 8};
    cfg.lambda = 1e6;
    cfg.rb = 1e-3;
    const PhiTable& t = phi_fixture(cfg.rho());

    const std::vector<Sample> one = run_pair_replicates(cfg, t, 64, 42, 1);
    const std::vector<Sample> four = run_pair_replicates(cfg, t, 64, 42, 4);
    REQUIRE(one.size() == four.size());
    for (size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].time == four[i].time);
        CHECK(one[i].censored == four[i].censored);
    }

    const std::vector<Sample> other = run_pair_replicates(cfg, t, 64, 43, 1);
    int same = 0;
    for (size_t i = 0; i < one.size(); ++i)
        same += (one[i].time == other[i].time) ? 1 : 0;
    CHECK(same < 8);
}

TEST_CASE("crdme and rdme runs coincide bitwise when their rates do")
{
    // On a unit-h lattice with a single-offset table, lambda * phi00 and
    // k / h^2 are the same double, both engines see identical propensities
    // in every state, and both consume one exponential and one uniform per
    // event, so whole trajectories must match bitwise.
    const double lambda = 2.5;
    const double phi00 = 0.37;
    const PhiTable t(0.6, 0, {phi00});

    PairConfig crdme;
    crdme.lattice = {8.0, 8};
    crdme.D_A = 1.0;
    crdme.D_B = 1.0;
    crdme.lambda = lambda;
    crdme.rb = 0.6;
    crdme.t_max = 50.0;

    PairConfig rdme = crdme;
    rdme.kind = PairEngineKind::Rdme;
    rdme.k = lambda * phi00;  // h = 1

    REQUIRE(rdme.rdme_propensity() == lambda * t.at(0, 0));

    for (uint64_t r = 0; r < 200; ++r) {
        RngStream rng_c(77, r);
        RngStream rng_r(77, r);
        const Sample sc = simulate_pair(crdme, t, rng_c);
        const Sample sr = simulate_pair(rdme, t, rng_r);
        CHECK(sc.time == sr.time);
        CHECK(sc.censored == sr.censored);
    }
}

TEST_CASE("direct and first-reaction implementations agree in law")
{
    PairConfig cfg;
    cfg.lattice = {4.0, 4};
    cfg.D_A = 1.0;
    cfg.D_B = 1.0;
    cfg.lambda = 1.0;
    cfg.rb = 1.25;
    const PhiTable& t = phi_fixture(cfg.rho());

    const uint64_t n = 10000;
    const std::vector<Sample> direct = run_pair_replicates(cfg, t, n, 101, 1);
    std::vector<double> x, y;
    for (const Sample& s : direct) {
        REQUIRE(!s.censored);
        x.push_back(s.time);
    }
    for (uint64_t r = 0; r < n; ++r) {
        RngStream rng(202, r);
        const Sample s = simulate_pair_first_reaction(cfg, t, rng);
        REQUIRE(!s.censored);
        y.push_back(s.time);
    }
    const KsResult ks = ks_two_sample(x, y);
    CHECK(ks.p_value > 1e-3);
}

TEST_CASE("reaction times respond to lambda")
{
    PairConfig slow;
    slow.lattice = {0.05, 8};
    slow.lambda = 3e5;
    slow.rb = 1e-3;
    const PhiTable& t = phi_fixture(slow.rho());
    PairConfig fast = slow;
    fast.lambda = 3e6;

    const uint64_t n = 1000;
    const std::vector<Sample> a = run_pair_replicates(slow, t, n, 7, 1);
    const std::vector<Sample> b = run_pair_replicates(fast, t, n, 7, 1);
    const ReactionTimeSamples ra = ReactionTimeSamples::from(a, "", 7);
    const ReactionTimeSamples rb2 = ReactionTimeSamples::from(b, "", 7);
    const MeanCi ca = mean_ci(ra);
    const MeanCi cb = mean_ci(rb2);
    CHECK(ca.mean - ca.half_width > cb.mean + cb.half_width);
}

}
