#pragma once

#include <random>
#include <string>
#include <vector>

#include "dyson/exact.hpp"
#include "dyson/geometry.hpp"

namespace dyson {

struct SuiteResult {
    std::string name;
    long long checks = 0;
    long long failures = 0;
    double worst = 0.0;  // suite-specific residual / margin

    bool passed() const { return failures == 0; }
};

namespace checks {

inline FrozenConstraint random_boundary(std::mt19937_64& gen, Interval volume, Site pad = 4) {
    const TailRule rules[] = {TailRule::none, TailRule::all_plus, TailRule::all_minus,
                              TailRule::alternating_even};
    Interval window{volume.lo - pad, volume.hi + pad};
    FrozenConstraint c;
    c.set_tail(rules[gen() % 4], window);
    for (Site j = window.lo; j < volume.lo; ++j) c.freeze(j, (gen() & 1) ? +1 : -1);
    for (Site j = volume.hi + 1; j <= window.hi; ++j) c.freeze(j, (gen() & 1) ? +1 : -1);
    c.add_free_interval(volume);
    return c;
}

/// Kernel-consistency residuals over a randomized corpus of small volumes.
inline SuiteResult dlr_suite(int instances = 50, double tolerance = 1e-10,
                             uint64_t seed = 20260810, Site max_outer_sites = 10) {
    SuiteResult result{"dlr-consistency"};
    std::mt19937_64 gen(seed);
    const double alphas[] = {1.3, 1.5, 2.0, 3.0};
    const double betas[] = {0.2, 1.0, 5.0};
    const Site cutoff = 100000;
    for (int rep = 0; rep < instances; ++rep) {
        const double alpha = alphas[gen() % 4];
        ModelParams p(alpha, betas[gen() % 3],
                      (rep % 3 == 0) ? 0.0 : std::uniform_real_distribution<>(-1, 1)(gen));
        CouplingTable table(alpha, cutoff);
        const Site max_half = (max_outer_sites - 1) / 2;
        const Site half = 2 + static_cast<Site>(gen() % std::max<Site>(1, max_half - 1));
        Interval outer{-half, half};
        Interval inner{-half + 1 + static_cast<Site>(gen() % 2),
                       half - 1 - static_cast<Site>(gen() % 2)};
        if (inner.lo > inner.hi) inner = {0, 0};
        auto c = random_boundary(gen, outer);
        const double residual =
            dlr_residual(p, table, inner, outer, c, Observable::spin_at(inner.lo), cutoff);
        ++result.checks;
        result.worst = std::max(result.worst, residual);
        if (!(residual < tolerance)) ++result.failures;
    }
    return result;
}

/// Exhaustive FKG audit over every comparable boundary pair.
inline SuiteResult monotonicity_suite(Site boundary_spins = 8, double tolerance = 1e-12) {
    SuiteResult result{"fkg-monotonicity"};
    std::vector<Site> boundary;
    for (Site k = 1; k <= boundary_spins / 2; ++k) {
        boundary.push_back(k);
        boundary.push_back(-k);
    }
    for (double alpha : {1.5, 2.0})
        for (double beta : {0.0, 1.0}) {
            ModelParams p(alpha, beta, 0.0);
            CouplingTable table(alpha, 100000);
            const long long violations = count_monotonicity_violations(
                p, table, {0, 0}, Observable::spin_at(0), boundary, TailRule::none, 100000,
                tolerance);
            ++result.checks;
            result.failures += violations;
            result.worst = std::max(result.worst, static_cast<double>(violations));
        }
    return result;
}

/// Bit-exact zero fields at odd sites under the pure alternating constraint.
inline SuiteResult cancellation_suite(Site max_site = 100, Site cutoff = 100000) {
    SuiteResult result{"alternating-cancellation"};
    for (double alpha : {1.3, 1.5, 2.0}) {
        ModelParams p(alpha, 1.0, 0.0);
        CouplingTable table(alpha, cutoff);
        FrozenConstraint c;
        c.set_tail(TailRule::alternating_even, Interval{0, -1});
        for (Site x = -max_site + (max_site % 2 == 0 ? 1 : 0); x <= max_site; x += 2)
            c.add_free(x);
        for (Site x : c.free_sites()) {
            const double field = effective_field(p, table, c, x, cutoff);
            ++result.checks;
            if (field != 0.0) {
                ++result.failures;
                result.worst = std::max(result.worst, std::fabs(field));
            }
        }
    }
    return result;
}

/// Soundness and the constancy law of the direct-influence bound.
inline SuiteResult bound_suite(double constancy_tolerance = 1e-9) {
    SuiteResult result{"influence-bound"};
    for (double alpha : {1.3, 1.5, 2.0})
        for (Site L : {5, 10, 20}) {
            const Site N = std::max(choose_annulus_halfwidth(alpha, L), L + 1);
            const double exact = cross_annulus_energy_sum(alpha, L, N);
            const double bound = direct_influence_bound(alpha, L, static_cast<double>(N));
            ++result.checks;
            if (!(exact <= bound)) ++result.failures;
            result.worst = std::max(result.worst, exact / bound);

            const double n_real = std::pow(static_cast<double>(L), 1.0 / (alpha - 1.0));
            const double constant = direct_influence_bound(alpha, L, n_real);
            const double target = 2.0 / (alpha - 1.0);
            ++result.checks;
            if (std::fabs(constant - target) > constancy_tolerance * target) ++result.failures;
        }
    return result;
}

/// Constrained Hamiltonian vs the 2^-alpha rescaled model on random odd
/// configurations.
inline SuiteResult rescaling_suite(int configs = 100, Site window_sites = 1000,
                                   double tolerance = 1e-8, uint64_t seed = 4242) {
    SuiteResult result{"rescaling-identity"};
    std::mt19937_64 gen(seed);
    for (double alpha : {1.5, 2.0}) {
        ModelParams p(alpha, 1.0, 0.0);
        FrozenConstraint c;
        c.set_tail(TailRule::alternating_even, Interval{0, -1});
        std::vector<Site> odds;
        for (Site k = 0; k < window_sites; ++k) odds.push_back(2 * (k - window_sites / 2) + 1);
        for (Site s : odds) c.add_free(s);
        const auto model = alternating_rescaled_model(p, c);
        CouplingTable table(alpha, 2 * window_sites + 100000);
        for (int rep = 0; rep < configs / 2; ++rep) {
            std::vector<Spin> spins;
            spins.reserve(odds.size());
            for (size_t k = 0; k < odds.size(); ++k) spins.push_back((gen() & 1) ? +1 : -1);
            const double constrained = site_family_energy(p, table, odds, spins, c, 100000);
            const double rescaled = rescaled_family_energy(model, odds, spins);
            const double mismatch = std::fabs(constrained - rescaled);
            ++result.checks;
            result.worst = std::max(result.worst, mismatch);
            if (!(mismatch <= tolerance)) ++result.failures;
        }
    }
    return result;
}

inline std::vector<SuiteResult> run_all() {
    return {dlr_suite(), monotonicity_suite(), cancellation_suite(), bound_suite(),
            rescaling_suite()};
}

}  // namespace checks
}  // namespace dyson
