#pragma once

#include <algorithm>
#include <vector>

#include "dyson/exact.hpp"
#include "dyson/geometry.hpp"
#include "dyson/mcmc.hpp"

namespace dyson {

struct ProbeSettings {
    Site cutoff = 100000;
    Site exact_cap = kDefaultEnumerationCap;
    Site max_free_sites = 4096;
};

struct TailVariantResult {
    TailRule tail;
    Estimate m_plus, m_minus;
};

/// The quantities of the essential-discontinuity probe: sigma_0 expectations
/// under plus- and minus-annulus constraints, their gap, the closed-form
/// influence bound for the geometry, and the far-tail robustness sweep.
struct ProbeResult {
    ProbeGeometry geometry;
    bool exact_path = false;
    bool n_below_recommended = false;
    bool n_capped = false;  // budget reduced N below the size law
    double boundary_bound_value = 0.0;
    Estimate m_plus, m_minus, gap;
    std::vector<TailVariantResult> tail_variants;
};

namespace detail {

inline Estimate probe_measure(const ModelParams& params, const CouplingTable& table,
                              const FrozenConstraint& c, const ChainConfig& chain,
                              const ProbeSettings& settings, bool exact_path) {
    const Observable obs = Observable::spin_at(0);
    if (exact_path) {
        Interval hull{c.free_sites().front(), c.free_sites().back()};
        KernelQuery q{hull, c, obs, settings.cutoff};
        const auto res = gibbs_exact(params, table, q, settings.exact_cap);
        return Estimate{res.expectation, 0.0, 1, 0.0};
    }
    return sample_run(params, table, c, obs, chain, settings.cutoff);
}

}  // namespace detail

/**
 * Measures sigma_0 under the plus- and minus-annulus constraints of the
 * given geometry, for the default alternating tail and for the two extremal
 * tail overrides.  Enumerates exactly whenever the free window fits the cap;
 * otherwise runs seeded chains (independent child streams per constraint).
 */
inline ProbeResult discontinuity_probe(const ModelParams& params, const ProbeGeometry& geometry,
                                       const ChainConfig& chain,
                                       const ProbeSettings& settings = {}) {
    geometry.validate();
    ProbeResult result;
    result.geometry = geometry;
    result.boundary_bound_value =
        direct_influence_bound(params.alpha, geometry.L, static_cast<double>(geometry.N));
    if (params.alpha <= 2.0)
        result.n_below_recommended =
            geometry.N < choose_annulus_halfwidth(params.alpha, geometry.L);

    const Site n_free = geometry.free_site_count();
    result.exact_path = n_free <= settings.exact_cap;
    require(result.exact_path || n_free <= settings.max_free_sites,
            "discontinuity_probe: free window exceeds the sampling budget");

    ProbeGeometry plus = geometry, minus = geometry;
    plus.annulus_sign = +1;
    minus.annulus_sign = -1;

    const Site table_span = std::max<Site>(settings.cutoff, 2 * (geometry.window().hi + 1));
    CouplingTable table(params.alpha, table_span);

    const TailRule tails[] = {TailRule::alternating_even, TailRule::all_plus,
                              TailRule::all_minus};
    int stream = 0;
    for (TailRule tail : tails) {
        ChainConfig cp = chain, cm = chain;
        cp.seed = child_seed(chain.seed, static_cast<uint64_t>(stream++));
        cm.seed = child_seed(chain.seed, static_cast<uint64_t>(stream++));
        const Estimate mp = detail::probe_measure(params, table, build_probe_constraint(plus, tail),
                                                  cp, settings, result.exact_path);
        const Estimate mm = detail::probe_measure(params, table, build_probe_constraint(minus, tail),
                                                  cm, settings, result.exact_path);
        if (tail == TailRule::alternating_even) {
            result.m_plus = mp;
            result.m_minus = mm;
            result.gap = difference(mp, mm);
        } else {
            result.tail_variants.push_back({tail, mp, mm});
        }
    }
    return result;
}

struct ScanPoint {
    double axis_value = 0.0;
    Site size = 0;  // L for hidden-transition points, half-width for volumes
    bool exact_path = false;
    Estimate plus_run, minus_run, gap;
};

struct ScanResult {
    enum class Axis { beta, L, alpha, volume };
    Axis axis;
    std::vector<ScanPoint> points;
};

inline std::string to_string(ScanResult::Axis a) {
    switch (a) {
        case ScanResult::Axis::beta: return "beta";
        case ScanResult::Axis::L: return "L";
        case ScanResult::Axis::alpha: return "alpha";
        case ScanResult::Axis::volume: return "volume";
    }
    return "?";
}

/**
 * Hidden-transition scan: under the pure alternating constraint the odd
 * spins form a rescaled zero-field chain; a ring of fixed odd spins at
 * distance W..3W plays the role of the plus/minus far tails.  The residual
 * plus/minus magnetization gap of the central odd sites as beta grows
 * signals the hidden low-temperature transition at desk scale.
 */
inline ScanResult hidden_transition_scan(const ModelParams& base,
                                         const std::vector<double>& betas,
                                         const std::vector<Site>& L_list,
                                         const ChainConfig& chain,
                                         const ProbeSettings& settings = {}) {
    require(base.h == 0.0, "hidden_transition_scan: the constrained model is zero-field");
    ScanResult result{ScanResult::Axis::beta, {}};
    std::vector<double> sorted_betas(betas);
    std::sort(sorted_betas.begin(), sorted_betas.end());
    std::vector<Site> sorted_L(L_list);
    std::sort(sorted_L.begin(), sorted_L.end());
    int stream = 0;
    for (double beta : sorted_betas) {
        ModelParams params(base.alpha, beta, 0.0);
        for (Site L : sorted_L) {
            const Site W = 4 * L, R = 3 * W;
            auto plus = build_alternating_scan_constraint(W, R, +1);
            auto minus = build_alternating_scan_constraint(W, R, -1);

            std::vector<Site> central;
            for (Site j = (-2 * L) | 1LL; j <= 2 * L; j += 2) central.push_back(j);
            const Observable obs = Observable::mean_spin_over(central);

            const Site table_span = std::max<Site>(settings.cutoff, 2 * R + 2);
            CouplingTable table(params.alpha, table_span);

            ScanPoint point;
            point.axis_value = beta;
            point.size = L;
            point.exact_path =
                static_cast<Site>(plus.free_sites().size()) <= settings.exact_cap;
            if (point.exact_path) {
                Interval hull{-W, W};
                point.plus_run = Estimate{
                    gibbs_exact(params, table, {hull, plus, obs, settings.cutoff},
                                settings.exact_cap).expectation, 0.0, 1, 0.0};
                point.minus_run = Estimate{
                    gibbs_exact(params, table, {hull, minus, obs, settings.cutoff},
                                settings.exact_cap).expectation, 0.0, 1, 0.0};
            } else {
                ChainConfig pc = chain;
                pc.seed = child_seed(chain.seed, static_cast<uint64_t>(stream));
                const auto run = paired_gap_run(params, table, plus, minus, obs, pc,
                                                settings.cutoff);
                point.plus_run = run.a;
                point.minus_run = run.b;
            }
            point.gap = difference(point.plus_run, point.minus_run);
            result.points.push_back(point);
            ++stream;
        }
    }
    return result;
}

/**
 * Uniqueness control at h != 0: all-plus and all-minus boundary
 * magnetizations must merge as the volume grows (Lee-Yang uniqueness).
 * The probe is the center spin -- a window mean keeps a boundary skin of
 * order V^{1-alpha} at every volume and would never converge.
 */
inline ScanResult field_uniqueness_scan(const ModelParams& params,
                                        const std::vector<Site>& volume_halfwidths,
                                        const ChainConfig& chain,
                                        const ProbeSettings& settings = {}) {
    require(params.h != 0.0, "field_uniqueness_scan: needs a nonzero field");
    ScanResult result{ScanResult::Axis::volume, {}};
    std::vector<Site> sorted_volumes(volume_halfwidths);
    std::sort(sorted_volumes.begin(), sorted_volumes.end());
    int stream = 0;
    for (Site V : sorted_volumes) {
        require(V >= 1, "field_uniqueness_scan: volume half-width must be positive");
        const Interval volume{-V, V};
        auto plus = boundary_condition(TailRule::all_plus, volume);
        auto minus = boundary_condition(TailRule::all_minus, volume);
        const Observable obs = Observable::spin_at(0);

        const Site table_span = std::max<Site>(settings.cutoff, 2 * V + 2);
        CouplingTable table(params.alpha, table_span);

        ScanPoint point;
        point.axis_value = static_cast<double>(V);
        point.size = V;
        point.exact_path = 2 * V + 1 <= settings.exact_cap;
        if (point.exact_path) {
            point.plus_run = Estimate{
                gibbs_exact(params, table, {volume, plus, obs, settings.cutoff},
                            settings.exact_cap).expectation, 0.0, 1, 0.0};
            point.minus_run = Estimate{
                gibbs_exact(params, table, {volume, minus, obs, settings.cutoff},
                            settings.exact_cap).expectation, 0.0, 1, 0.0};
        } else {
            ChainConfig pc = chain;
            pc.seed = child_seed(chain.seed, static_cast<uint64_t>(stream));
            const auto run = paired_gap_run(params, table, plus, minus, obs, pc, settings.cutoff);
            point.plus_run = run.a;
            point.minus_run = run.b;
        }
        point.gap = difference(point.plus_run, point.minus_run);
        result.points.push_back(point);
        ++stream;
    }
    return result;
}

/// Negative control in the fast-decay regime alpha > 2: same probe, N given
/// explicitly (the size law does not apply), gap expected to shrink with L.
inline std::vector<ProbeResult> fast_decay_control_probe(const ModelParams& params,
                                                         const std::vector<Site>& L_list,
                                                         Site N_over_L,
                                                         const ChainConfig& chain,
                                                         const ProbeSettings& settings = {}) {
    require(params.alpha > 2.0, "fast_decay_control_probe: meant for alpha > 2");
    std::vector<ProbeResult> results;
    int stream = 0;
    for (Site L : L_list) {
        ProbeGeometry g{L, N_over_L * L, +1, 0};
        ChainConfig pc = chain;
        pc.seed = child_seed(chain.seed, 1000 + static_cast<uint64_t>(stream++));
        results.push_back(discontinuity_probe(params, g, pc, settings));
    }
    return results;
}

}  // namespace dyson
