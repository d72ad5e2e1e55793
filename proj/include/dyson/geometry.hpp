#pragma once

#include <cmath>

#include "dyson/constraint.hpp"
#include "dyson/fields.hpp"
#include "dyson/series.hpp"

namespace dyson {

/**
 * Geometry of the discontinuity probe, kept in image-lattice units: the
 * central interval [-L, L] carries the alternating pattern, the annulus
 * L < |i| <= N carries the selected sign, and everything is mapped to the
 * original lattice through i -> 2i.  Free sites are the origin plus every
 * odd site of the simulation window [-2N - margin, 2N + margin].
 */
struct ProbeGeometry {
    Site L = 4;
    Site N = 16;
    int annulus_sign = +1;
    Site window_margin = 0;  // 0 means the default of 2N

    void validate() const {
        require(L >= 1, "ProbeGeometry: L must be positive");
        require(N > L, "ProbeGeometry: need N > L");
        require(annulus_sign == 1 || annulus_sign == -1,
                "ProbeGeometry: annulus_sign must be +-1");
        require(window_margin >= 0, "ProbeGeometry: margin must be nonnegative");
    }

    Site margin() const { return window_margin > 0 ? window_margin : 2 * N; }
    Interval window() const { return {-2 * N - margin(), 2 * N + margin()}; }
    Interval frozen_core() const { return {-2 * N, 2 * N}; }

    /// Number of free sites the probe simulates (odd sites plus the origin).
    Site free_site_count() const {
        const Interval w = window();
        Site count = 1;  // origin
        for (Site j = w.lo | 1LL; j <= w.hi; j += 2) ++count;
        return count;
    }
};

namespace detail {
inline Spin alternating_image_spin(Site i) { return (i & 1LL) ? -1 : +1; }  // (-1)^i
}

/**
 * The probe constraint: image spins omega'_i frozen on even sites 2i for
 * i in [-N, N] \ {0} (alternating inside |i| <= L, annulus sign outside),
 * the origin and all window odd sites free, and the given tail rule past
 * the frozen core.  The default alternating tail continues the central
 * pattern; all-plus / all-minus realize the extremal far boundaries of the
 * robustness sweep.
 */
inline FrozenConstraint build_probe_constraint(const ProbeGeometry& g,
                                               TailRule tail = TailRule::alternating_even) {
    g.validate();
    FrozenConstraint c;
    c.set_tail(tail, g.frozen_core());
    for (Site i = -g.N; i <= g.N; ++i) {
        if (i == 0) continue;
        const Spin s = (std::llabs(i) <= g.L) ? detail::alternating_image_spin(i)
                                              : static_cast<Spin>(g.annulus_sign);
        c.freeze(2 * i, s);
    }
    c.add_free(0);
    const Interval w = g.window();
    for (Site j = w.lo | 1LL; j <= w.hi; j += 2) c.add_free(j);
    return c;
}

/// Same frozen pattern but with every central even site frozen (origin
/// included) and only odd sites free: the hidden odd-spin model whose
/// effective fields the bound analysis talks about.
inline FrozenConstraint build_odd_model_constraint(const ProbeGeometry& g,
                                                   TailRule tail = TailRule::alternating_even) {
    g.validate();
    FrozenConstraint c;
    c.set_tail(tail, g.frozen_core());
    for (Site i = -g.N; i <= g.N; ++i) {
        const Spin s = (std::llabs(i) <= g.L) ? detail::alternating_image_spin(i)
                                              : static_cast<Spin>(g.annulus_sign);
        c.freeze(2 * i, s);
    }
    const Interval w = g.window();
    for (Site j = w.lo | 1LL; j <= w.hi; j += 2) c.add_free(j);
    return c;
}

/**
 * Alternating evens everywhere plus a ring of fixed odd spins selecting the
 * phase of the hidden model: free odd sites fill [-W, W], explicit spins
 * cover [-R, R], and the alternating tail continues past R.  Used by the
 * hidden-transition scan with ring_sign = +-1.
 */
inline FrozenConstraint build_alternating_scan_constraint(Site W, Site R, int ring_sign) {
    require(W >= 1 && R > W, "scan constraint: need R > W >= 1");
    require(ring_sign == 1 || ring_sign == -1, "scan constraint: ring sign must be +-1");
    FrozenConstraint c;
    c.set_tail(TailRule::alternating_even, Interval{-R, R});
    for (Site j = -R + (R % 2 == 0 ? 0 : 1); j <= R; j += 2)
        c.freeze(j, ((j / 2) & 1LL) ? -1 : +1);
    for (Site j = (W + 1) | 1LL; j <= R; j += 2) {
        c.freeze(j, ring_sign);
        c.freeze(-j, ring_sign);
    }
    for (Site j = -W | 1LL; j <= W; j += 2) c.add_free(j);
    return c;
}

/**
 * Annulus size law N(L) = ceil(L^{1/(alpha-1)}), specific to the slow-decay
 * regime 1 < alpha <= 2.  Monotone increasing in L and decreasing in alpha.
 */
inline Site choose_annulus_halfwidth(double alpha, Site L) {
    require(L >= 1, "choose_annulus_halfwidth: L must be positive");
    require(alpha > 1.0 && alpha <= 2.0,
            "choose_annulus_halfwidth: the size law N = L^(1/(alpha-1)) applies only for "
            "1 < alpha <= 2; pass N explicitly for faster decay");
    const double value = std::pow(static_cast<double>(L), 1.0 / (alpha - 1.0));
    const double rounded = std::llround(value);
    if (std::fabs(value - rounded) <= 1e-9 * std::max(1.0, value))
        return static_cast<Site>(rounded);
    return static_cast<Site>(std::ceil(value));
}

/**
 * Closed-form bound 2 L N^{1-alpha} / (alpha - 1) on the energy a boundary
 * change beyond the annulus can exert on the central interval.  N is real
 * here: evaluating at the exact size law L^{1/(alpha-1)} gives the constant
 * 2/(alpha-1) independent of L.
 */
inline double direct_influence_bound(double alpha, Site L, double N) {
    require(alpha > 1.0, "direct_influence_bound: alpha must exceed 1");
    // N >= L rather than N > L: the size law at alpha = 2 returns N = L and
    // the constancy check has to be evaluable there.
    require(L >= 1 && N >= static_cast<double>(L), "direct_influence_bound: need N >= L >= 1");
    return 2.0 * static_cast<double>(L) * std::pow(N, 1.0 - alpha) / (alpha - 1.0);
}

/**
 * The double sum the closed form dominates: 2 sum_{x=1..L} sum_{k>N} k^{-alpha},
 * evaluated by conservative direct summation (the Euler-Maclaurin error is
 * added on top).  Per tail term the integral comparison gives
 * sum_{k>N} k^{-alpha} <= N^{1-alpha}/(alpha-1), hence sum <= bound.
 */
inline double cross_annulus_energy_sum(double alpha, Site L, Site N) {
    require(alpha > 1.0 && L >= 1 && N > L, "cross_annulus_energy_sum: need N > L >= 1");
    const double tail = power_tail_sum(alpha, 1.0, 0.0, N + 1) +
                        power_tail_sum_error(alpha, 1.0, 0.0, N + 1);
    return 2.0 * static_cast<double>(L) * tail;
}

/**
 * Homogeneous field felt at an odd site when every image spin beyond image
 * distance L is plus: h+ = 2 sum_{k>=L} (2k+1)^{-alpha}.  Accurate to well
 * below 1e-10.
 */
inline double homogeneous_plus_field(double alpha, Site L) {
    require(alpha > 1.0, "homogeneous_plus_field: alpha must exceed 1");
    require(L >= 0, "homogeneous_plus_field: L must be nonnegative");
    return 2.0 * power_tail_sum(alpha, 2.0, 1.0, L);
}

/**
 * The model seen by the odd sublattice when every even site is frozen to the
 * alternating configuration: a zero-constraint chain whose couplings carry
 * the factor 2^{-alpha} (only even original distances occur), renumbered by
 * site 2k+1 -> k.
 */
struct RescaledModel {
    ModelParams params;
    double coupling_scale;  // 2^{-alpha}
};

inline RescaledModel alternating_rescaled_model(const ModelParams& params,
                                                const FrozenConstraint& c) {
    require(c.tail_rule() == TailRule::alternating_even,
            "alternating_rescaled_model: constraint must continue alternating");
    for (const auto& [site, spin] : c.frozen_map()) {
        require(site % 2 == 0,
                "alternating_rescaled_model: only even sites may be frozen");
        const Spin expected = (((site / 2) & 1LL) ? -1 : +1) * c.tail_phase();
        require(spin == expected,
                "alternating_rescaled_model: constraint deviates from the alternating "
                "pattern (an annulus is present); the rescaling is invalid");
    }
    return {params, std::pow(2.0, -params.alpha)};
}

/// Renumber odd sites 2k+1 -> k.
inline Site image_index_of_odd_site(Site s) {
    require(s % 2 != 0, "image_index_of_odd_site: site must be odd");
    return (s - 1) / 2;
}

/// Energy of an odd-site configuration in the rescaled model; matches
/// site_family_energy under the alternating constraint exactly (the frozen
/// evens contribute zero field there).
inline double rescaled_family_energy(const RescaledModel& model,
                                     std::span<const Site> odd_sites,
                                     std::span<const Spin> spins) {
    require(odd_sites.size() == spins.size(), "rescaled_family_energy: size mismatch");
    const size_t n = odd_sites.size();
    double pair_acc = 0.0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            const Site d = std::llabs(image_index_of_odd_site(odd_sites[b]) -
                                      image_index_of_odd_site(odd_sites[a]));
            pair_acc += model.coupling_scale * std::pow(static_cast<double>(d), -model.params.alpha) *
                        spins[a] * spins[b];
        }
    double field_acc = 0.0;
    for (size_t a = 0; a < n; ++a) field_acc += spins[a];
    return -pair_acc - model.params.h * field_acc;
}

}  // namespace dyson
