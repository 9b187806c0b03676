#include <doctest.h>

#include <cmath>
#include <random>

#include "betaexp/counting.hpp"
#include "betaexp/enumeration.hpp"
#include "betaexp/errors.hpp"
#include "oracles.hpp"
#include "regression_values.hpp"

using namespace betaexp;

TEST_CASE("pair counts at beta 1.5, level 2")
{
    const auto st = count_close_pairs(BaseValue(1.5), 0.5, 2);
    CHECK(st.p_count == 2);
    CHECK(st.t_count == 2);
    CHECK(st.density == doctest::Approx(0.5));
    CHECK(count_crowded_points(BaseValue(1.5), 0.5, 2).t_count == 2);
}

TEST_CASE("zero window counts nothing")
{
    for (double beta : {1.3, oracle::kGolden, 1.9}) {
        const auto st = count_close_pairs(BaseValue(beta), 0.0, 8);
        CHECK(st.p_count == 0);
        CHECK(st.t_count == 0);
    }
}

TEST_CASE("window wider than the diameter counts all ordered pairs")
{
    const auto st = count_close_pairs(BaseValue(1.9), 16.0, 2);
    CHECK(st.p_count == 12);
    CHECK(st.t_count == 4);
    const auto phi = count_close_pairs(BaseValue(oracle::kGolden), 1e6, 6);
    const auto d = distinct_count(BaseValue(oracle::kGolden), 6);
    CHECK(phi.t_count == d);
    CHECK(phi.p_count == d * (d - 1));
}

TEST_CASE("two-pointer counts equal the double-loop counts")
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> base(1.05, 1.99);
    std::uniform_real_distribution<double> window(0.0, 2.0);
    const ToleranceConfig tol;
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = base(rng);
        const double s = window(rng);
        for (int n = 0; n <= 10; ++n) {
            const auto sums = enumerate_sums(BaseValue(beta), n, true, tol);
            const auto st = pair_stats(sums, s, tol);
            const auto brute = oracle::distinct_sums(beta, n, true, tol.dedup_tol);
            const double w = pair_window(s, n, tol);
            CHECK(st.p_count == oracle::pair_count(brute, w));
            CHECK(st.t_count == oracle::crowded_count(brute, w));
        }
    }
}

TEST_CASE("counts are monotone in s, p_count is even and t_count <= p_count")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> base(1.3, 1.99);
    for (int trial = 0; trial < 30; ++trial) {
        const double beta = base(rng);
        const auto sums = enumerate_sums(BaseValue(beta), 12, true);
        PairStats prev{};
        for (double s : {0.0, 0.01, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
            const auto st = pair_stats(sums, s);
            CHECK(st.p_count % 2 == 0);
            CHECK(st.t_count <= st.p_count);
            CHECK(st.p_count >= prev.p_count);
            CHECK(st.t_count >= prev.t_count);
            prev = st;
        }
    }
}

TEST_CASE("close_pair_count on hand-made lists")
{
    const std::vector<double> v{0.0, 0.1, 0.15, 1.0};
    CHECK(close_pair_count(v, 0.1) == 4);
    CHECK(crowded_point_count(v, 0.1) == 3);
    CHECK(close_pair_count(v, 0.05) == 2);
    CHECK(crowded_point_count(v, 0.04) == 0);
}

TEST_CASE("midpoint grid")
{
    const auto g = midpoint_grid(1.5, 2.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == doctest::Approx(1.5625));
    CHECK(g[3] == doctest::Approx(1.9375));
    CHECK_THROWS_AS(grid_scan(1.497, 2.0, 1, 0.1, 10), DomainError);
}

TEST_CASE("grid scan regression")
{
    const auto r = grid_scan(kTransversalityEndpoint, 2.0, 64, 0.1, 10);
    REQUIRE(r.per_beta.size() == 64);
    CHECK(r.mean_density <= r.fitted_c * 0.1 + 1e-15);
    CHECK(r.mean_density == doctest::Approx(regression::kGridScanMeanDensity).epsilon(1e-12));
    for (const auto& st : r.per_beta) CHECK(st.t_count <= st.p_count);
}

TEST_CASE("grid scan is independent of the worker count")
{
    const std::vector<double> s{0.05, 0.1, 0.2};
    const auto one = grid_scan(1.497, 2.0, 32, s, 10, {}, 1);
    const auto four = grid_scan(1.497, 2.0, 32, s, 10, {}, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].mean_density == four[i].mean_density);
        for (std::size_t j = 0; j < one[i].per_beta.size(); ++j) {
            CHECK(one[i].per_beta[j].p_count == four[i].per_beta[j].p_count);
        }
    }
}

TEST_CASE("doubling s raises mean density")
{
    const std::vector<double> s{0.05, 0.1, 0.2, 0.4};
    const auto r = grid_scan(1.497, 2.0, 64, s, 12);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double ratio = r[i + 1].mean_density / r[i].mean_density;
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 4.0);
    }
}
