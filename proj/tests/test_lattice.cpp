#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crdme/lattice.hpp"
#include "crdme/rng.hpp"

#include "table_fixtures.hpp"

using namespace crdme;
using crdme_test::phi_fixture;
using crdme_test::gamma_fixture;

TEST_SUITE("lattice") {

TEST_CASE("mesh arithmetic")
{
    const LatticeSpec lat{0.2, 25};
    CHECK(lat.h() == doctest::Approx(0.008).epsilon(1e-15));
    CHECK(lat.voxel_count() == 625);
    CHECK(lat.contains(0, 0));
    CHECK(lat.contains(24, 24));
    CHECK(!lat.contains(-1, 3));
    CHECK(!lat.contains(3, 25));
    CHECK(voxel_index({3, 2}, LatticeSpec{1.0, 5}) == 13);
}

TEST_CASE("hop rate is D over h squared")
{
    const LatticeSpec lat{0.2, 25};
    CHECK(hop_rate(10.0, lat) == doctest::Approx(156250.0).epsilon(1e-13));
    CHECK(hop_rate(0.0, lat) == 0.0);
    CHECK_THROWS_AS(hop_rate(-1.0, lat), std::invalid_argument);
}

TEST_CASE("allowed moves respect the walls and the fixed order")
{
    const LatticeSpec lat{1.0, 4};

    const MoveList corner = allowed_moves({0, 0}, lat);
    REQUIRE(corner.count == 2);
    CHECK(corner.target[0] == Voxel{1, 0});  // +x (no -x at the wall)
    CHECK(corner.target[1] == Voxel{0, 1});  // +y

    const MoveList edge = allowed_moves({1, 0}, lat);
    REQUIRE(edge.count == 3);
    CHECK(edge.target[0] == Voxel{0, 0});
    CHECK(edge.target[1] == Voxel{2, 0});
    CHECK(edge.target[2] == Voxel{1, 1});

    const MoveList inner = allowed_moves({1, 1}, lat);
    REQUIRE(inner.count == 4);
    CHECK(inner.target[0] == Voxel{0, 1});
    CHECK(inner.target[1] == Voxel{2, 1});
    CHECK(inner.target[2] == Voxel{1, 0});
    CHECK(inner.target[3] == Voxel{1, 2});

    const MoveList lone = allowed_moves({0, 0}, LatticeSpec{1.0, 1});
    CHECK(lone.count == 0);
}

TEST_CASE("reactive partners clip at the walls without renormalizing")
{
    const PhiTable& t = phi_fixture(0.5);
    const LatticeSpec lat{8.0, 8};  // h = 1, rho = rb/h handled by caller

    const auto inner = reactive_partners({4, 4}, t, lat);
    CHECK(inner.size() == 9);
    double sum = 0.0;
    for (const auto& [v, p] : inner) {
        CHECK(p == t.at(v.ix - 4, v.iy - 4));
        sum += p;
    }
    CHECK(sum == doctest::Approx(t.support_sum()).epsilon(1e-12));

    const auto corner = reactive_partners({0, 0}, t, lat);
    CHECK(corner.size() == 4);
    for (const auto& [v, p] : corner) {
        CHECK(lat.contains(v.ix, v.iy));
        CHECK(p == t.at(v.ix, v.iy));
    }
}

TEST_CASE("a single walker has the uniform stationary law")
{
    // Continuous-time walk assembled from allowed_moves and hop_rate; with
    // symmetric per-direction rates and reflecting walls the stationary
    // distribution is uniform over the 64 voxels. Chi-square at the 99th
    // percentile, 63 degrees of freedom.
    const LatticeSpec lat{0.2, 8};
    const double q = hop_rate(10.0, lat);
    RngStream rng(6021, 0);

    // Slowest relaxation rate of the reflecting walk is
    // 2 q (1 - cos(pi / N)); sample five times slower than that.
    const double relax = 2.0 * q * (1.0 - std::cos(3.14159265358979323846 / lat.N));
    const double sample_dt = 5.0 / relax;
    const int n_samples = 20000;

    Voxel v{3, 4};
    double t = 0.0;
    double next_sample = sample_dt;
    std::vector<int> counts(lat.voxel_count(), 0);
    int recorded = 0;
    while (recorded < n_samples) {
        const MoveList moves = allowed_moves(v, lat);
        const double dt = rng.exponential(moves.count * q);
        while (recorded < n_samples && next_sample <= t + dt) {
            ++counts[voxel_index(v, lat)];
            ++recorded;
            next_sample += sample_dt;
        }
        t += dt;
        v = moves.target[rng.uniform_below(moves.count)];
    }

    const double expect = static_cast<double>(n_samples) / lat.voxel_count();
    double chi2 = 0.0;
    for (const int c : counts)
        chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 92.01002361413214);
}

}
