#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dyson/probe.hpp"

using namespace dyson;

namespace {
ChainConfig quick_chain(long long sweeps, uint64_t seed) {
    ChainConfig c;
    c.sweeps = sweeps;
    c.burn_in = sweeps / 10;
    c.seed = seed;
    c.algorithm = Algorithm::cluster;
    return c;
}
}  // namespace

TEST_CASE("tiny geometry probe is exact and shows a strict gap", "[probe]") {
    ModelParams p(1.5, 3.0, 0.0);
    ProbeGeometry g{1, 3, +1, 0};  // 13 free sites: cap-sized
    const auto result = discontinuity_probe(p, g, quick_chain(100, 1));

    CHECK(result.exact_path);
    CHECK(result.gap.mean == result.m_plus.mean - result.m_minus.mean);
    CHECK(result.m_plus.mean > 0.0);
    CHECK(result.m_minus.mean < 0.0);
    CHECK(result.gap.mean > 0.5);

    // robustness: every tail override moves the estimates by less than the
    // influence bound (plus nothing here: exact, zero error)
    REQUIRE(result.tail_variants.size() == 2);
    for (const auto& variant : result.tail_variants) {
        CHECK(std::fabs(variant.m_plus.mean - result.m_plus.mean) <
              result.boundary_bound_value);
        CHECK(std::fabs(variant.m_minus.mean - result.m_minus.mean) <
              result.boundary_bound_value);
        // FKG ordering survives every tail rule
        CHECK(variant.m_plus.mean >= variant.m_minus.mean);
    }

    // the extremal tails bracket the default alternating tail
    const auto& plus_tail = result.tail_variants[0];
    const auto& minus_tail = result.tail_variants[1];
    CHECK(plus_tail.tail == TailRule::all_plus);
    CHECK(minus_tail.tail == TailRule::all_minus);
    CHECK(result.m_plus.mean <= plus_tail.m_plus.mean + 1e-12);
    CHECK(result.m_plus.mean >= minus_tail.m_plus.mean - 1e-12);
}

TEST_CASE("infinite temperature probe gap vanishes", "[probe]") {
    ModelParams p(1.5, 0.0, 0.0);
    ProbeGeometry g{4, 16, +1, 0};  // 65 free sites: sampled path
    const auto result = discontinuity_probe(p, g, quick_chain(4000, 3));
    CHECK_FALSE(result.exact_path);
    CHECK(std::fabs(result.gap.mean) <= 3.0 * result.gap.std_error + 1e-9);
}

TEST_CASE("sampled probe is deterministic given the seed", "[probe]") {
    ModelParams p(1.5, 0.5, 0.0);
    ProbeGeometry g{2, 6, +1, 4};
    const auto a = discontinuity_probe(p, g, quick_chain(2000, 11));
    const auto b = discontinuity_probe(p, g, quick_chain(2000, 11));
    CHECK(a.m_plus.mean == b.m_plus.mean);
    CHECK(a.m_minus.mean == b.m_minus.mean);
    CHECK(a.gap.std_error == b.gap.std_error);
}

TEST_CASE("sampled probe matches the exact path on cap-sized geometry", "[probe]") {
    ModelParams p(1.5, 0.6, 0.0);
    ProbeGeometry g{1, 3, +1, 0};
    ProbeSettings exact_settings;
    const auto exact = discontinuity_probe(p, g, quick_chain(100, 5), exact_settings);
    REQUIRE(exact.exact_path);

    ProbeSettings sampled_settings;
    sampled_settings.exact_cap = 4;  // force the sampling path on the same window
    for (Algorithm algo : {Algorithm::cluster, Algorithm::metropolis}) {
        ChainConfig chain = quick_chain(60000, 5);
        chain.algorithm = algo;
        const auto sampled = discontinuity_probe(p, g, chain, sampled_settings);
        REQUIRE_FALSE(sampled.exact_path);
        INFO("algorithm " << to_string(algo));
        CHECK(std::fabs(sampled.m_plus.mean - exact.m_plus.mean) <=
              3.0 * sampled.m_plus.std_error + 1e-9);
        CHECK(std::fabs(sampled.m_minus.mean - exact.m_minus.mean) <=
              3.0 * sampled.m_minus.std_error + 1e-9);
    }
}

TEST_CASE("hidden transition scan: cold gap persists, hot gap decays in L", "[probe]") {
    ModelParams base(1.5, 1.0, 0.0);
    const auto scan =
        hidden_transition_scan(base, {0.3, 4.0}, {2, 4}, quick_chain(4000, 21));
    REQUIRE(scan.points.size() == 4);
    CHECK(scan.axis == ScanResult::Axis::beta);
    for (const auto& point : scan.points) CHECK(point.exact_path);  // <= 16 odd sites

    const double hot_small = scan.points[0].gap.mean;   // beta=0.3, L=2
    const double hot_large = scan.points[1].gap.mean;   // beta=0.3, L=4
    const double cold_small = scan.points[2].gap.mean;  // beta=4.0, L=2
    const double cold_large = scan.points[3].gap.mean;  // beta=4.0, L=4

    // high temperature: the ring influence dies out as the window grows
    CHECK(hot_large < 0.8 * hot_small);
    // low temperature: the gap stays macroscopic across the L range
    CHECK(cold_small > 1.5);
    CHECK(cold_large > 1.5);
    CHECK(cold_large >= 0.999 * cold_small);
    CHECK(cold_large > 5.0 * hot_large);
}

TEST_CASE("hidden transition scan matches the rescaled free model", "[probe]") {
    // Conditioning on alternating evens = zero-field chain at couplings
    // 2^-alpha J: compare the scan's constrained kernel against the plain
    // rescaled model with the ring constraint mapped through 2k+1 -> k.
    const double alpha = 1.5, beta = 1.2;
    ModelParams p(alpha, beta, 0.0);
    const Site W = 8, R = 24;

    auto constrained = build_alternating_scan_constraint(W, R, +1);
    std::vector<Site> central;
    for (Site j = (-W / 2) | 1LL; j <= W / 2; j += 2) central.push_back(j);
    CouplingTable table(alpha, 100000);
    const double constrained_value =
        gibbs_exact(p, table, {{-W, W}, constrained, Observable::mean_spin_over(central), 100000})
            .expectation;

    // rescaled twin: sites k in [-W/2, W/2), ring spins at the mapped
    // positions, couplings 2^-alpha k^-alpha
    CouplingTable scaled(alpha, 100000, std::pow(2.0, -alpha));
    FrozenConstraint twin;
    twin.set_tail(TailRule::none, Interval{0, -1});
    for (Site j = (W + 1) | 1LL; j <= R; j += 2) {
        twin.freeze(image_index_of_odd_site(j), +1);
        twin.freeze(image_index_of_odd_site(-j), +1);
    }
    std::vector<Site> twin_central;
    for (Site j = -W | 1LL; j <= W; j += 2) twin.add_free(image_index_of_odd_site(j));
    for (Site j : central) twin_central.push_back(image_index_of_odd_site(j));
    const double twin_value =
        gibbs_exact(p, scaled,
                    {{image_index_of_odd_site(-W | 1LL), image_index_of_odd_site(W - 1 + (W % 2))},
                     twin, Observable::mean_spin_over(twin_central), 90000})
            .expectation;

    CHECK_THAT(constrained_value, Catch::Matchers::WithinAbs(twin_value, 1e-10));
}

TEST_CASE("uniqueness control: boundary gap shrinks in a field", "[probe]") {
    ModelParams p(1.5, 0.6, 1.0);
    ChainConfig chain = quick_chain(30000, 17);
    chain.algorithm = Algorithm::metropolis;
    const auto scan = field_uniqueness_scan(p, {2, 4, 8}, chain);
    REQUIRE(scan.points.size() == 3);
    for (const auto& point : scan.points) CHECK(point.exact_path);
    CHECK(scan.points[0].gap.mean > scan.points[1].gap.mean);
    CHECK(scan.points[1].gap.mean > scan.points[2].gap.mean);
    CHECK(scan.points[2].gap.mean >= 0.0);

    // a strong field pushes both boundary runs to +1
    ModelParams strong(1.5, 2.0, 8.0);
    const auto saturated = field_uniqueness_scan(strong, {4}, chain);
    CHECK(saturated.points[0].plus_run.mean > 0.99);
    CHECK(saturated.points[0].minus_run.mean > 0.99);

    // sign flip of h negates the magnetizations
    ModelParams pm(1.5, 0.6, -1.0);
    const auto mirror = field_uniqueness_scan(pm, {4}, chain);
    const auto straight = field_uniqueness_scan(p, {4}, chain);
    CHECK_THAT(mirror.points[0].plus_run.mean,
               Catch::Matchers::WithinAbs(-straight.points[0].minus_run.mean, 1e-12));

    CHECK_THROWS_AS(field_uniqueness_scan(ModelParams(1.5, 2.0, 0.0), {2}, chain),
                    std::invalid_argument);
}

TEST_CASE("fast-decay control: smaller gap than the slow-decay regime", "[probe]") {
    ProbeGeometry g{1, 3, +1, 0};
    const ChainConfig chain = quick_chain(100, 9);
    ModelParams slow(1.5, 3.0, 0.0);
    ModelParams fast(3.0, 3.0, 0.0);
    const auto slow_probe = discontinuity_probe(slow, g, chain);
    const auto fast_probe = discontinuity_probe(fast, g, chain);
    REQUIRE(slow_probe.exact_path);
    REQUIRE(fast_probe.exact_path);
    CHECK(fast_probe.gap.mean < slow_probe.gap.mean);
    CHECK(fast_probe.gap.mean >= 0.0);
    // enumeration value frozen at first computation
    CHECK_THAT(fast_probe.gap.mean,
               Catch::Matchers::WithinAbs(3.2457153676945794e-05, 1e-13));

    // trend data: the fast-decay gap shrinks (weakly) as L grows
    ChainConfig sampler = quick_chain(20000, 13);
    const auto controls = fast_decay_control_probe(fast, {2, 4}, 4, sampler);
    REQUIRE(controls.size() == 2);
    const double slack = 3.0 * std::hypot(controls[0].gap.std_error,
                                          controls[1].gap.std_error);
    CHECK(controls[1].gap.mean <= controls[0].gap.mean + slack);
    CHECK_THROWS_AS(fast_decay_control_probe(slow, {1}, 4, chain), std::invalid_argument);
}
