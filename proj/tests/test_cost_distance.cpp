#include <cmath>
#include <vector>

#include "doctest.h"
#include "slc/cost_distance.hpp"
#include "slc/exact.hpp"
#include "slc/io.hpp"
#include "test_support.hpp"

using namespace slc;

TEST_CASE("distance cost: single weight level short-circuits") {
    const WeightedGraph g = WeightedGraph::build(
        {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
    AccessSession s(g);
    Rng rng(1);
    const CostEstimate est = app_cost(s, RunConfig{}, rng);
    CHECK(est.value == doctest::Approx(10.0)); // n(n-1)/2
    CHECK_FALSE(est.exact_fallback);
    CHECK(est.entries_scanned == 0);
    CHECK(est.num_cj_estimated == 0);
    CHECK(est.value == doctest::Approx(cost_to_double(exact_cost_distance(g))));
}

TEST_CASE("distance cost: trivial graphs") {
    const WeightedGraph g = WeightedGraph::build({}, 1);
    AccessSession s(g);
    Rng rng(1);
    const CostEstimate est = app_cost(s, RunConfig{}, rng);
    CHECK(est.value == 0.0);
}

TEST_CASE("distance cost: tiny n falls back to the exact formula") {
    // n = 3 < sqrt(25): full scan plus the closed form.
    const WeightedGraph g = WeightedGraph::build({{0, 1, 1}, {1, 2, 9}, {0, 2, 25}});
    AccessSession s(g);
    Rng rng(7);
    const CostEstimate est = app_cost(s, RunConfig{}, rng);
    CHECK(est.exact_fallback);
    CHECK(est.value == doctest::Approx(11.0)); // MST {1, 9}: 2·1 + 1·9
    CHECK(est.entries_scanned == 2 * g.m());
    CHECK(s.entries_scanned() == 6);
}

TEST_CASE("distance cost: theory mode refuses to out-spend a full scan") {
    Rng gen(19);
    const WeightedGraph g = test_support::random_connected_graph(gen, 60, 80, 50);
    AccessSession s(g);
    RunConfig config;
    config.params = ParamMode::Theory;
    config.eps = 0.25;
    Rng rng(3);
    const CostEstimate est = app_cost(s, config, rng);
    CHECK(est.exact_fallback); // sampling would cost more than reading the graph
    CHECK(est.value ==
          doctest::Approx(cost_to_double(exact_cost_distance(g))));
}

TEST_CASE("distance cost: practical estimate tracks the exact cost") {
    Rng gen(2001);
    const WeightedGraph g = test_support::random_connected_graph(gen, 600, 900, 64);
    AccessSession s(g);
    RunConfig config;
    config.params = ParamMode::Practical;
    config.eps = 0.12;
    config.r = 4000;
    Rng rng(42);
    const CostEstimate est = app_cost(s, config, rng);

    CHECK_FALSE(est.exact_fallback);
    CHECK(est.num_cj_estimated >= 1);
    CHECK(est.entries_scanned > 0);
    CHECK(est.entries_scanned == s.entries_scanned());
    CHECK(est.scheme.t() >= 2);
    CHECK(est.j_hat.t() == est.scheme.t());
    CHECK(est.j_hat.j(est.j_hat.t()) == static_cast<uint32_t>(g.max_weight()) + 1);
    for (uint32_t i = 2; i <= est.j_hat.t(); ++i) {
        CHECK(est.j_hat.j(i) >= est.j_hat.j(i - 1));
    }

    const double exact = cost_to_double(exact_cost_distance(g));
    const double base = 0.5 * 600.0 * 599.0;
    CHECK(est.value >= base);
    CHECK(std::abs(est.value - exact) / exact < 0.45);
}

TEST_CASE("distance cost: fixed seed reproduces the run exactly") {
    Rng gen(88);
    const WeightedGraph g = test_support::random_connected_graph(gen, 300, 400, 30);
    RunConfig config;
    config.eps = 0.2;
    config.r = 500;

    AccessSession s1(g);
    Rng r1(1234);
    const CostEstimate a = app_cost(s1, config, r1);
    AccessSession s2(g);
    Rng r2(1234);
    const CostEstimate b = app_cost(s2, config, r2);
    CHECK(a.value == b.value);
    CHECK(a.entries_scanned == b.entries_scanned);
    CHECK(a.num_cj_estimated == b.num_cj_estimated);
}

TEST_CASE("distance cost: prefix access model charges at least as much") {
    Rng gen(55);
    const WeightedGraph g = test_support::random_connected_graph(gen, 200, 300, 20);
    RunConfig config;
    config.eps = 0.25;
    config.r = 300;

    AccessSession unit(g, AccessModel::UnitCost);
    Rng r1(9);
    const CostEstimate a = app_cost(unit, config, r1);
    AccessSession prefix(g, AccessModel::PrefixCost);
    Rng r2(9);
    const CostEstimate b = app_cost(prefix, config, r2);
    CHECK(b.entries_scanned >= a.entries_scanned);
}

TEST_CASE("distance cost: config validation") {
    const WeightedGraph g = test_support::triangle();
    AccessSession s(g);
    Rng rng(1);
    RunConfig bad_eps;
    bad_eps.eps = 0.0;
    CHECK_THROWS((void)app_cost(s, bad_eps, rng));
    RunConfig bad_r;
    bad_r.r = 0;
    CHECK_THROWS((void)app_cost(s, bad_r, rng));
}

TEST_CASE("distance profile: single weight level is the merge count") {
    const WeightedGraph g = WeightedGraph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    AccessSession s(g);
    Rng rng(1);
    const SuccinctProfile p = app_profile(s, RunConfig{}, rng);
    REQUIRE(p.breakpoints.size() == 3);
    CHECK(profile_oracle(p, 1) == doctest::Approx(2.0));
    CHECK(profile_oracle(p, 2) == doctest::Approx(1.0));
    CHECK(profile_oracle(p, 3) == doctest::Approx(0.0));
}

TEST_CASE("distance profile: exact fallback is the dense profile") {
    const WeightedGraph g = WeightedGraph::build({{0, 1, 1}, {1, 2, 9}, {0, 2, 25}});
    AccessSession s(g);
    Rng rng(2);
    const SuccinctProfile p = app_profile(s, RunConfig{}, rng);
    CHECK(p.exact_fallback);
    REQUIRE(p.breakpoints.size() == 3);
    const std::vector<cost128> exact = exact_profile(g, CostMode::Distance);
    for (uint32_t k = 1; k <= 3; ++k) {
        CHECK(profile_oracle(p, k) == doctest::Approx(cost_to_double(exact[k - 1])));
    }
    // Between breakpoints the profile is right-continuous from below.
    CHECK(p.lookup(2.9) == doctest::Approx(cost_to_double(exact[1])));
}

TEST_CASE("distance profile: estimated profile structure") {
    Rng gen(1301);
    const WeightedGraph g = test_support::random_connected_graph(gen, 600, 900, 64);
    AccessSession s(g);
    RunConfig config;
    config.eps = 0.12;
    config.r = 4000;
    Rng rng(47);
    const SuccinctProfile p = app_profile(s, config, rng);

    CHECK_FALSE(p.exact_fallback);
    REQUIRE(p.breakpoints.size() >= 2);
    CHECK(p.breakpoints.front() == doctest::Approx(1.0)); // B_t = 1
    CHECK(p.breakpoints.back() == doctest::Approx(600.0)); // B_1 = n
    CHECK(p.values.back() == doctest::Approx(0.0)); // n clusters cost nothing
    for (size_t i = 1; i < p.breakpoints.size(); ++i) {
        CHECK(p.breakpoints[i] > p.breakpoints[i - 1]);
        CHECK(p.values[i] <= p.values[i - 1]); // cheaper with more clusters
    }
    for (const double v : p.values) {
        CHECK(v >= 0.0);
    }
    CHECK(profile_oracle(p, 600) == doctest::Approx(0.0));

    // Loose tracking of the exact profile at a few interior cluster counts;
    // tolerance follows the per-query guarantee shape.
    const std::vector<cost128> exact = exact_profile(g, CostMode::Distance);
    const double w = static_cast<double>(g.max_weight());
    for (const uint32_t k : {2u, 10u, 60u, 300u}) {
        const double truth = cost_to_double(exact[k - 1]);
        const double slack = 4.0 * config.eps * truth +
                             48.0 * config.eps * w *
                                 std::max<double>(k, 600.0 / std::sqrt(w));
        CHECK(std::abs(profile_oracle(p, k) - truth) <= slack);
    }
}

TEST_CASE("distance profile: oracle rejects bad queries") {
    const WeightedGraph g = test_support::triangle();
    AccessSession s(g);
    Rng rng(1);
    const SuccinctProfile p = app_profile(s, RunConfig{}, rng);
    CHECK_THROWS((void)profile_oracle(p, 0.5));
    CHECK_THROWS((void)profile_oracle(p, 4.0));

    SuccinctProfile sim = p;
    sim.mode = CostMode::Similarity;
    CHECK_THROWS((void)profile_oracle(sim, 1.0));
}

TEST_CASE("distance profile: succinct_from_exact round trip") {
    Rng gen(3);
    const WeightedGraph g = test_support::random_connected_graph(gen, 30, 40, 8);
    const std::vector<cost128> exact = exact_profile(g, CostMode::Distance);
    const SuccinctProfile p = succinct_from_exact(exact, CostMode::Distance);
    REQUIRE(p.breakpoints.size() == 30);
    for (uint32_t k = 1; k <= 30; ++k) {
        CHECK(p.lookup(k) == doctest::Approx(cost_to_double(exact[k - 1])));
        CHECK(p.lookup(k + 0.4) == doctest::Approx(cost_to_double(exact[k - 1])));
    }
}
