#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "dyson/fields.hpp"
#include "dyson/geometry.hpp"
#include "dyson/spin_window.hpp"

using namespace dyson;

namespace {
const double kPi2 = std::numbers::pi * std::numbers::pi;

FrozenConstraint pure_alternating(const std::vector<Site>& free_sites, int phase = +1) {
    FrozenConstraint c;
    c.set_tail(TailRule::alternating_even, Interval{0, -1}, phase);
    for (Site s : free_sites) c.add_free(s);
    return c;
}
}  // namespace

TEST_CASE("free Hamiltonian on tiny windows", "[lattice]") {
    ModelParams p(2.0, 1.0, 0.0);
    CHECK(hamiltonian_free(p, SpinWindow(0, {+1, +1})) == -1.0);
    CHECK(hamiltonian_free(p, SpinWindow(0, {+1, -1})) == +1.0);
    // three sites all +: -(1 + 1 + 1/4)
    CHECK_THAT(hamiltonian_free(p, SpinWindow(0, {+1, +1, +1})),
               Catch::Matchers::WithinAbs(-2.25, 1e-15));
    CHECK_THROWS_AS(hamiltonian_free(p, SpinWindow()), std::invalid_argument);
}

TEST_CASE("spin-flip symmetry at zero field", "[lattice]") {
    ModelParams p(1.5, 1.0, 0.0);
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Spin> spins(12);
        for (auto& s : spins) s = (gen() & 1) ? 1 : -1;
        SpinWindow w(-3, spins);
        std::vector<Spin> flipped;
        for (Spin s : spins) flipped.push_back(-s);
        SpinWindow wf(-3, flipped);
        CHECK(hamiltonian_free(p, w) == hamiltonian_free(p, wf));
    }
}

TEST_CASE("single site against an all-plus world", "[lattice]") {
    ModelParams p(2.0, 1.0, 0.0);
    FrozenConstraint c;
    c.set_tail(TailRule::all_plus, Interval{0, 0});
    c.add_free(0);

    const Site cutoff = 1'000'000;
    const auto [energy, tail] = hamiltonian_bc(p, SpinWindow(0, {+1}), c, cutoff);
    // energy -> -2 pi^2/6, with the truncation within the reported bound
    CHECK(std::fabs(energy - (-kPi2 / 3.0)) <= tail);
    CHECK_THAT(energy, Catch::Matchers::WithinAbs(-kPi2 / 3.0, 1e-5));

    // doubling the cutoff strictly shrinks the bound
    CouplingTable table(p.alpha, cutoff);
    const auto half = hamiltonian_bc(p, table, SpinWindow(0, {+1}), c, cutoff / 2);
    CHECK(half.tail_bound > tail);
    CHECK(std::fabs(half.energy - energy) <= half.tail_bound);
}

TEST_CASE("tail bound sound between any two cutoffs", "[lattice]") {
    ModelParams p(1.5, 1.0, 0.0);
    FrozenConstraint c;
    c.set_tail(TailRule::all_plus, Interval{-2, 3});
    c.add_free_interval({-2, 3});
    SpinWindow w(-2, {+1, -1, +1, +1, -1, +1});
    CouplingTable table(p.alpha, 100000);
    for (Site r1 : {50LL, 200LL, 1000LL}) {
        const auto e1 = hamiltonian_bc(p, table, w, c, r1);
        for (Site r2 : {r1 * 2, r1 * 8, 100000LL}) {
            const auto e2 = hamiltonian_bc(p, table, w, c, r2);
            CHECK(std::fabs(e1.energy - e2.energy) <= e1.tail_bound);
        }
    }
}

TEST_CASE("cutoff below the explicit frozen extent is rejected", "[lattice]") {
    ModelParams p(1.5, 1.0);
    FrozenConstraint c;
    c.set_tail(TailRule::none, Interval{0, -1});
    c.freeze(40, +1);
    c.add_free_interval({0, 2});
    SpinWindow w(0, {+1, +1, +1});
    CHECK_THROWS_AS(hamiltonian_bc(p, w, c, 10), std::invalid_argument);
    CHECK_NOTHROW(hamiltonian_bc(p, w, c, 40));
}

TEST_CASE("alternating cancellation is exact at odd sites", "[lattice]") {
    CouplingTable table13(1.3, 100000), table15(1.5, 100000), table2(2.0, 100000);
    std::vector<Site> odd_sites;
    for (Site x = -99; x <= 99; x += 2) odd_sites.push_back(x);
    auto c = pure_alternating(odd_sites);
    for (const auto* table : {&table13, &table15, &table2}) {
        ModelParams p(table->alpha(), 1.0, 0.0);
        for (Site x : odd_sites) {
            const double f = effective_field(p, *table, c, x, 100000);
            REQUIRE(f == 0.0);  // bit-exact, not a tolerance check
        }
    }
}

TEST_CASE("effective field examples from even-sublattice constraints", "[lattice]") {
    const Site cutoff = 100000;
    CouplingTable table(2.0, cutoff);
    ModelParams p(2.0, 1.0, 0.0);

    SECTION("all-plus evens except the origin") {
        FrozenConstraint c;
        c.set_tail(TailRule::none, Interval{0, -1});
        for (Site j = -cutoff; j <= cutoff; j += 2)
            if (j != 0) c.freeze(j, +1);
        c.add_free(0);
        const double f = effective_field(p, table, c, 0, cutoff);
        // 2 sum_k (2k)^-2 = pi^2/12, truncated at the cutoff
        const double truncated = 2.0 * (kPi2 / 24.0 - power_tail_sum(2.0, 2.0, 0.0, cutoff / 2 + 1));
        CHECK_THAT(f, Catch::Matchers::WithinAbs(truncated, 1e-12));
        CHECK_THAT(f, Catch::Matchers::WithinAbs(kPi2 / 12.0, 1e-4));
    }

    SECTION("homogeneous plus field at an odd site") {
        // evens at distance >= 3 from site 1 all plus: h+ = 2 sum_{k>=1} (2k+1)^-2
        FrozenConstraint c;
        c.set_tail(TailRule::none, Interval{0, -1});
        for (Site j = -cutoff; j <= cutoff; j += 2)
            if (j != 0 && j != 2) c.freeze(j, +1);
        c.add_free(1);
        const double f = effective_field(p, table, c, 1, cutoff - 1);
        CHECK_THAT(f, Catch::Matchers::WithinAbs(2.0 * (kPi2 / 8.0 - 1.0), 1e-4));
    }
}

TEST_CASE("freed origin keeps the alternating-series field", "[lattice]") {
    // The cancellation lives on the odd sublattice: an even site faces
    // mirror-equal partners at even distances, so the alternating pattern
    // leaves the convergent series 2 sum_k (-1)^k (2k)^-alpha at the origin.
    const Site cutoff = 100000;
    for (double alpha : {1.5, 2.0}) {
        ModelParams p(alpha, 1.0, 0.0);
        CouplingTable table(alpha, cutoff);
        FrozenConstraint c;
        c.set_tail(TailRule::alternating_even, Interval{0, -1});
        c.add_free(0);
        const double field = effective_field(p, table, c, 0, cutoff);
        long double series = 0.0L;
        for (Site k = cutoff / 2; k >= 1; --k)
            series += (k & 1 ? -1.0 : 1.0) * 2.0 * std::pow(2.0 * k, -alpha);
        CHECK(field != 0.0);
        CHECK_THAT(field, Catch::Matchers::WithinAbs(static_cast<double>(series), 1e-10));
    }
}

TEST_CASE("effective field negates under a global frozen flip", "[lattice]") {
    ModelParams p(1.5, 1.0, 0.0);
    CouplingTable table(1.5, 10000);
    FrozenConstraint c;
    c.set_tail(TailRule::all_plus, Interval{-20, 20});
    for (Site j = -20; j <= 20; j += 2)
        if (j != 0) c.freeze(j, (j % 4 == 0) ? +1 : -1);
    c.add_free(0);
    c.add_free(1);
    auto flipped = c.flipped();
    for (Site s : {0LL, 1LL}) {
        const double f = effective_field(p, table, c, s, 10000);
        const double g = effective_field(p, table, flipped, s, 10000);
        CHECK(f == -g);
    }
}

TEST_CASE("translation covariance", "[lattice]") {
    ModelParams p(1.7, 1.0, 0.3);
    CouplingTable table(1.7, 10000);
    FrozenConstraint c;
    c.set_tail(TailRule::alternating_even, Interval{-16, 16});
    for (Site j = -16; j <= 16; j += 2)
        if (j != 0) c.freeze(j, ((j / 2) & 1LL) ? -1 : +1);
    c.add_free(0);
    for (Site j = -15; j <= 15; j += 2) c.add_free(j);

    for (Site shift : {2LL, 10LL, -6LL}) {
        auto cs = c.shifted(shift);
        for (Site s : {0LL, 3LL, -5LL}) {
            const double f = effective_field(p, table, c, s, 5000);
            const double g = effective_field(p, table, cs, s + shift, 5000);
            CHECK(f == g);
        }
    }

    // same covariance for boundary-condition Hamiltonians on a full interval
    FrozenConstraint bc;
    bc.set_tail(TailRule::all_plus, Interval{-6, 6});
    bc.freeze(-5, -1);
    bc.freeze(5, +1);
    bc.add_free_interval({-3, 3});
    SpinWindow w(-3, {+1, -1, +1, +1, -1, +1, -1});
    for (Site shift : {1LL, -4LL, 9LL}) {
        auto bcs = bc.shifted(shift);
        SpinWindow ws(-3 + shift, w.spins);
        const auto e = hamiltonian_bc(p, table, w, bc, 5000);
        const auto es = hamiltonian_bc(p, table, ws, bcs, 5000);
        CHECK(e.energy == es.energy);
        CHECK(e.tail_bound == es.tail_bound);
    }
}

TEST_CASE("window and site-family energies agree on shared geometry", "[lattice]") {
    // two independent code paths: hamiltonian_free + per-site cross terms vs
    // the pair-table family energy
    std::mt19937_64 gen(2718);
    for (int rep = 0; rep < 30; ++rep) {
        const double alpha = 1.2 + 0.2 * static_cast<double>(gen() % 8);
        const double h = std::uniform_real_distribution<>(-1, 1)(gen);
        ModelParams p(alpha, 1.0, h);
        CouplingTable table(alpha, 20000);

        FrozenConstraint c;
        c.set_tail((rep % 2) ? TailRule::all_plus : TailRule::alternating_even,
                   Interval{-12, 12});
        for (Site j = -12; j <= -9; ++j) c.freeze(j, (gen() & 1) ? +1 : -1);
        for (Site j = 9; j <= 12; ++j) c.freeze(j, (gen() & 1) ? +1 : -1);
        c.add_free_interval({-8, 8});

        std::vector<Site> sites;
        std::vector<Spin> spins;
        for (Site j = -8; j <= 8; ++j) {
            sites.push_back(j);
            spins.push_back((gen() & 1) ? +1 : -1);
        }
        SpinWindow window(-8, spins);
        const auto bc = hamiltonian_bc(p, table, window, c, 15000);
        const double family = site_family_energy(p, table, sites, spins, c, 15000);
        REQUIRE_THAT(bc.energy, Catch::Matchers::WithinAbs(family, 1e-11));
    }
}

TEST_CASE("decimation of windows", "[lattice]") {
    // alternating input becomes all plus on the image
    std::vector<Spin> alt;
    for (Site i = -4; i <= 4; ++i) alt.push_back((i % 2 == 0) ? +1 : -1);
    auto out = decimate(SpinWindow(-4, alt));
    REQUIRE(out.first_site() == -2);
    REQUIRE(out.last_site() == 2);
    for (Spin s : out.spins) CHECK(s == +1);

    // all minus stays all minus
    auto minus = decimate(SpinWindow(-3, {-1, -1, -1, -1, -1, -1, -1}));
    for (Spin s : minus.spins) CHECK(s == -1);

    // period-4 pattern decimates to the alternating one
    std::vector<Spin> period4;
    for (Site i = 0; i < 12; ++i) period4.push_back((i % 4 < 2) ? +1 : -1);
    auto dec = decimate(SpinWindow(0, period4));
    REQUIRE(dec.first_site() == 0);
    for (Site i = dec.first_site(); i <= dec.last_site(); ++i)
        CHECK(dec.at(i) == ((i % 2 == 0) ? +1 : -1));

    // no even site covered -> empty image
    CHECK(decimate(SpinWindow(3, {+1})).empty());
    CHECK(decimate(SpinWindow(0, {})).empty());
}

TEST_CASE("probe field report signs", "[lattice]") {
    // Built by hand here; the geometry module has its own builder tests.
    // All central evens frozen alternating (origin included): the positivity
    // claim concerns the odd hidden-model sites.
    const Site L = 4, N = 16;
    ModelParams p(1.5, 1.0, 0.0);
    CouplingTable table(1.5, 200000);
    FrozenConstraint c;
    c.set_tail(TailRule::alternating_even, Interval{-2 * N, 2 * N});
    for (Site i = -N; i <= N; ++i) {
        const Spin alt = (i & 1LL) ? -1 : +1;
        c.freeze(2 * i, (std::llabs(i) <= L) ? alt : +1);
    }
    for (Site j = -2 * N - 1; j <= 2 * N + 1; j += 2) c.add_free(j);

    auto report = probe_field_report(p, table, c, L, N, 100000);
    CHECK(report.central_min > 0.0);
    CHECK(report.annulus_min > 0.0);
    CHECK(report.annulus_min > report.central_min);

    // the annulus minimum stays above an N-independent constant once N >= 2L
    for (Site bigger : {2 * N, 4 * N}) {
        ProbeGeometry wide{L, bigger, +1, 0};
        auto cw = build_odd_model_constraint(wide);
        auto wide_report = probe_field_report(p, table, cw, L, bigger, 100000);
        CHECK(wide_report.annulus_min > 2.0);
        CHECK(wide_report.central_min > 0.0);
    }
    CHECK(report.annulus_min > 2.0);

    // minus-annulus mirror: global flip negates every field
    auto mirrored = probe_field_report(p, table, c.flipped(), L, N, 100000);
    CHECK(mirrored.central_max == -report.central_min);
    CHECK(mirrored.central_max < 0.0);

    // no annulus at all: every field is exactly zero at odd sites
    FrozenConstraint alt_only;
    alt_only.set_tail(TailRule::alternating_even, Interval{0, -1});
    for (Site j = -2 * N - 1; j <= 2 * N + 1; j += 2) alt_only.add_free(j);
    for (Site j : alt_only.free_sites())
        CHECK(effective_field(p, table, alt_only, j, 100000) == 0.0);
}
