#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dyson/constraint.hpp"
#include "dyson/coupling.hpp"
#include "dyson/params.hpp"
#include "dyson/series.hpp"
#include "dyson/spin_window.hpp"

namespace dyson {

/**
 * Field induced at `site` by the frozen spins within per-site distance
 * `cutoff`:  sum_{j frozen, |j-site| <= cutoff} w_j J(|site-j|).
 *
 * Terms are accumulated in symmetric pairs outward from the site, so an
 * alternating even-sublattice constraint cancels exactly (each pair sums to
 * integer zero before the coupling is applied).  Past the distance where
 * both partners are governed purely by the tail rule the remainder collapses
 * to a prefix-sum query (homogeneous tails) or a single alternating-parity
 * loop (even sites under an alternating tail).
 */
inline double cross_field(const CouplingTable& table, const FrozenConstraint& c,
                          Site site, Site cutoff) {
    require(cutoff >= 1, "cross_field: cutoff must be positive");
    require(table.max_distance() >= cutoff, "cross_field: coupling table too short");

    const TailRule tail = c.tail_rule();
    Site d_loop = (tail == TailRule::none) ? c.frozen_reach_from(site)
                                           : c.pure_tail_distance_from(site);
    d_loop = std::min(d_loop, cutoff);

    double acc = 0.0;
    for (Site d = 1; d <= d_loop; ++d) {
        const auto left = c.frozen_spin(site - d);
        const auto right = c.frozen_spin(site + d);
        const int pair = left.value_or(0) + right.value_or(0);
        if (pair != 0) acc += static_cast<double>(pair) * table.j(d);
    }

    if (d_loop >= cutoff || tail == TailRule::none) return acc;

    switch (tail) {
        case TailRule::all_plus:
            acc += 2.0 * table.range_sum(d_loop, cutoff);
            break;
        case TailRule::all_minus:
            acc -= 2.0 * table.range_sum(d_loop, cutoff);
            break;
        case TailRule::alternating_even: {
            if (site % 2 != 0) break;  // odd site: remaining pairs cancel exactly
            Site d = d_loop + 1;
            if (d % 2 != 0) ++d;  // partners are even sites only at even distances
            for (; d <= cutoff; d += 2) {
                const int sign = (((site + d) / 2) & 1LL) ? -1 : 1;
                acc += 2.0 * c.tail_phase() * sign * table.j(d);
            }
            break;
        }
        default:
            break;
    }
    return acc;
}

/// Effective field at a free site: frozen-spin contribution plus the
/// homogeneous external field.
inline double effective_field(const ModelParams& params, const CouplingTable& table,
                              const FrozenConstraint& c, Site site, Site cutoff) {
    require(c.is_free(site), "effective_field: site must be free");
    return cross_field(table, c, site, cutoff) + params.h;
}

/// Convenience overload that builds its own coupling table.
inline double effective_field(const ModelParams& params, const FrozenConstraint& c,
                              Site site, Site cutoff) {
    CouplingTable table(params.alpha, cutoff);
    return effective_field(params, table, c, site, cutoff);
}

/// H with free boundary conditions: -sum_{i<j} J(|i-j|) s_i s_j - h sum_i s_i.
/// Exact double sum, no truncation.
inline double hamiltonian_free(const ModelParams& params, const SpinWindow& window) {
    require(!window.empty(), "hamiltonian_free: window must be nonempty");
    const Site n = window.size();
    double pair_acc = 0.0;
    for (Site a = 0; a < n; ++a)
        for (Site b = a + 1; b < n; ++b)
            pair_acc += std::pow(static_cast<double>(b - a), -params.alpha) *
                        window.spins[static_cast<size_t>(a)] *
                        window.spins[static_cast<size_t>(b)];
    double field_acc = 0.0;
    for (Spin s : window.spins) field_acc += s;
    return -pair_acc - params.h * field_acc;
}

struct BoundaryEnergy {
    double energy;
    double tail_bound;
};

/**
 * Hamiltonian of the window spins given the frozen constraint, truncating
 * every cross term at per-site distance `cutoff`.  tail_bound dominates the
 * absolute truncation error: each site may miss at most
 * 2 sum_{r > cutoff} r^{-alpha} <= 2 cutoff^{1-alpha}/(alpha-1) of frozen
 * weight.  cutoff must cover every explicitly frozen spin so only tail-rule
 * spins are ever dropped.
 */
inline BoundaryEnergy hamiltonian_bc(const ModelParams& params, const CouplingTable& table,
                                     const SpinWindow& window, const FrozenConstraint& c,
                                     Site cutoff) {
    require(!window.empty(), "hamiltonian_bc: window must be nonempty");
    for (Site i = window.first_site(); i <= window.last_site(); ++i)
        require(c.is_free(i), "hamiltonian_bc: window must consist of free sites");
    if (c.has_frozen_map()) {
        const Site reach = std::max(c.frozen_reach_from(window.first_site()),
                                    c.frozen_reach_from(window.last_site()));
        require(cutoff >= reach,
                "hamiltonian_bc: cutoff smaller than the explicit frozen extent");
    }

    double energy = hamiltonian_free(params, window);
    for (Site i = window.first_site(); i <= window.last_site(); ++i)
        energy -= window.at(i) * cross_field(table, c, i, cutoff);

    const double per_site = 2.0 * power_tail_upper_bound(params.alpha, cutoff);
    return {energy, per_site * static_cast<double>(window.size())};
}

inline BoundaryEnergy hamiltonian_bc(const ModelParams& params, const SpinWindow& window,
                                     const FrozenConstraint& c, Site cutoff) {
    CouplingTable table(params.alpha, cutoff);
    return hamiltonian_bc(params, table, window, c, cutoff);
}

/**
 * Energy of an arbitrary finite family of free sites (not necessarily
 * contiguous): internal pair terms, cross terms against the frozen
 * constraint, and the homogeneous field.  The coupling table must cover both
 * `cutoff` and the largest in-family distance.
 */
inline double site_family_energy(const ModelParams& params, const CouplingTable& table,
                                 std::span<const Site> sites, std::span<const Spin> spins,
                                 const FrozenConstraint& c, Site cutoff) {
    require(sites.size() == spins.size(), "site_family_energy: size mismatch");
    const size_t n = sites.size();
    if (n > 1) {
        const auto [mn, mx] = std::minmax_element(sites.begin(), sites.end());
        require(*mx - *mn <= table.max_distance(),
                "site_family_energy: coupling table shorter than the family span");
    }
    double pair_acc = 0.0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            pair_acc += table.j(std::llabs(sites[b] - sites[a])) * spins[a] * spins[b];
    double cross_acc = 0.0;
    double field_acc = 0.0;
    for (size_t a = 0; a < n; ++a) {
        cross_acc += spins[a] * cross_field(table, c, sites[a], cutoff);
        field_acc += spins[a];
    }
    return -pair_acc - cross_acc - params.h * field_acc;
}

struct FieldProfile {
    Interval window;
    std::vector<double> values;
};

struct ProbeFieldReport {
    double central_min = 0.0, central_max = 0.0;
    double annulus_min = 0.0, annulus_max = 0.0;
    FieldProfile central, annulus;
};

/**
 * Effective fields over the free sites of a probe constraint, split into the
 * central region |site| <= 2L and the annulus region 2L < |site| <= 2N.
 * Under a plus annulus the minimum central field must stay positive and the
 * minimum annulus field must stay above an N-independent positive constant.
 */
inline ProbeFieldReport probe_field_report(const ModelParams& params,
                                           const CouplingTable& table,
                                           const FrozenConstraint& c, Site L, Site N,
                                           Site cutoff) {
    require(N > L && L >= 1, "probe_field_report: need N > L >= 1");
    ProbeFieldReport report;
    report.central.window = {-2 * L, 2 * L};
    report.annulus.window = {-2 * N, 2 * N};
    bool first_central = true, first_annulus = true;
    for (Site s : c.free_sites()) {
        const Site a = std::llabs(s);
        if (a > 2 * N) continue;
        const double f = effective_field(params, table, c, s, cutoff);
        if (a <= 2 * L) {
            if (first_central || f < report.central_min) report.central_min = f;
            if (first_central || f > report.central_max) report.central_max = f;
            first_central = false;
            report.central.values.push_back(f);
        } else {
            if (first_annulus || f < report.annulus_min) report.annulus_min = f;
            if (first_annulus || f > report.annulus_max) report.annulus_max = f;
            first_annulus = false;
            report.annulus.values.push_back(f);
        }
    }
    return report;
}

}  // namespace dyson
