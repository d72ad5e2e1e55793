#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dyson/constraint.hpp"
#include "dyson/fields.hpp"
#include "dyson/observable.hpp"

namespace dyson {

inline constexpr Site kDefaultEnumerationCap = 20;

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KernelQuery {
    Interval volume;
    FrozenConstraint constraint;
    Observable observable;
    Site cutoff = 100000;
};

struct ExactResult {
    double expectation;
    double log_partition;  // log of the (1/2)^n-weighted partition sum
    double tail_bound;     // energy truncation bound inherited from the cutoff
};

/**
 * Finite family of free spins with precomputed static fields and internal
 * pair couplings; enumerates all 2^n states in Gray-code order with O(n)
 * incremental energy updates and a streaming log-sum-exp reduction.  The
 * state order and the reduction order are fixed, so results are bit-stable
 * for a given build.
 */
class EnumeratedVolume {
public:
    EnumeratedVolume(const ModelParams& params, const CouplingTable& table,
                     const FrozenConstraint& c, Site cutoff) {
        sites_ = c.free_sites();
        const size_t n = sites_.size();
        field_.resize(n);
        for (size_t k = 0; k < n; ++k)
            field_[k] = cross_field(table, c, sites_[k], cutoff) + params.h;
        pair_.assign(n, std::vector<double>(n, 0.0));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                pair_[a][b] = pair_[b][a] = table.j(std::llabs(sites_[b] - sites_[a]));
    }

    EnumeratedVolume(std::vector<Site> sites, std::vector<double> field,
                     std::vector<std::vector<double>> pair)
        : sites_(std::move(sites)), field_(std::move(field)), pair_(std::move(pair)) {}

    size_t size() const { return sites_.size(); }
    const std::vector<Site>& sites() const { return sites_; }
    double field(size_t k) const { return field_[k]; }
    double pair_coupling(size_t a, size_t b) const { return pair_[a][b]; }

    int site_index(Site s) const {
        for (size_t k = 0; k < sites_.size(); ++k)
            if (sites_[k] == s) return static_cast<int>(k);
        return -1;
    }

    struct Moments {
        double expectation;
        double log_mean_weight;  // log( 2^-n sum_sigma e^{-beta H} )
    };

    template <class PerState>
    void for_each_state(PerState&& visit) const {
        const size_t n = sites_.size();
        std::vector<int> sigma(n, -1);
        double energy = 0.0;
        for (size_t a = 0; a < n; ++a) {
            energy += field_[a];  // -f_a * (-1)
            for (size_t b = a + 1; b < n; ++b) energy -= pair_[a][b];  // sigma_a sigma_b = +1
        }
        visit(static_cast<const std::vector<int>&>(sigma), energy);
        const uint64_t states = 1ull << n;
        for (uint64_t idx = 1; idx < states; ++idx) {
            const size_t b = static_cast<size_t>(std::countr_zero(idx));
            double local = field_[b];
            for (size_t l = 0; l < n; ++l)
                if (l != b) local += pair_[b][l] * sigma[l];
            energy += 2.0 * sigma[b] * local;
            sigma[b] = -sigma[b];
            visit(static_cast<const std::vector<int>&>(sigma), energy);
        }
    }

    Moments expectation(double beta, const Observable& obs) const {
        std::vector<int> obs_idx;
        obs_idx.reserve(obs.sites.size());
        for (Site s : obs.sites) {
            const int k = site_index(s);
            require(k >= 0, "EnumeratedVolume: observable site is not a free site");
            obs_idx.push_back(k);
        }
        double running_max = -std::numeric_limits<double>::infinity();
        double weight_sum = 0.0, value_sum = 0.0;
        for_each_state([&](const std::vector<int>& sigma, double energy) {
            const double x = -beta * energy;
            size_t pos = 0;
            const double value = obs.eval([&](Site) { return sigma[static_cast<size_t>(obs_idx[pos++])]; });
            if (x > running_max) {
                const double scale = std::exp(running_max - x);
                weight_sum = weight_sum * scale + 1.0;
                value_sum = value_sum * scale + value;
                running_max = x;
            } else {
                const double w = std::exp(x - running_max);
                weight_sum += w;
                value_sum += value * w;
            }
        });
        const double n_log2 = static_cast<double>(sites_.size()) * std::log(2.0);
        return {value_sum / weight_sum, running_max + std::log(weight_sum) - n_log2};
    }

private:
    std::vector<Site> sites_;
    std::vector<double> field_;
    std::vector<std::vector<double>> pair_;
};

/**
 * Exact finite-volume Gibbs expectation by enumeration of all 2^n free
 * states.  Refuses volumes above the cap; there is no silent sampling
 * fallback.
 */
inline ExactResult gibbs_exact(const ModelParams& params, const CouplingTable& table,
                               const KernelQuery& query,
                               Site cap = kDefaultEnumerationCap) {
    const auto& free = query.constraint.free_sites();
    if (static_cast<Site>(free.size()) > cap)
        throw EnumerationCapExceeded(
            "gibbs_exact: " + std::to_string(free.size()) +
            " free spins exceed the enumeration cap of " + std::to_string(cap));
    for (Site s : free)
        require(query.volume.contains(s), "gibbs_exact: free sites must lie inside the volume");
    for (Site s : query.observable.sites)
        require(query.volume.contains(s), "gibbs_exact: observable support must lie inside the volume");

    EnumeratedVolume ev(params, table, query.constraint, query.cutoff);
    const auto m = ev.expectation(params.beta, query.observable);
    const double per_site = 2.0 * power_tail_upper_bound(params.alpha, query.cutoff);
    return {m.expectation, m.log_mean_weight, per_site * static_cast<double>(free.size())};
}

inline ExactResult gibbs_exact(const ModelParams& params, const KernelQuery& query,
                               Site cap = kDefaultEnumerationCap) {
    Site span = query.cutoff;
    const auto& free = query.constraint.free_sites();
    if (!free.empty()) span = std::max(span, free.back() - free.front());
    CouplingTable table(params.alpha, span);
    return gibbs_exact(params, table, query, cap);
}

/**
 * Residual of the kernel consistency identity gamma_outer gamma_inner f =
 * gamma_outer f, evaluated by exact enumeration of both sides.  The free
 * sites of `outer_bc` are the outer volume; `inner` selects the sites
 * re-integrated by the inner kernel.
 */
inline double dlr_residual(const ModelParams& params, const CouplingTable& table,
                           Interval inner, Interval outer, const FrozenConstraint& outer_bc,
                           const Observable& obs, Site cutoff,
                           Site cap = kDefaultEnumerationCap) {
    require(outer.contains(inner) && !inner.empty(), "dlr_residual: need inner inside outer");
    const auto& free = outer_bc.free_sites();
    if (static_cast<Site>(free.size()) > cap)
        throw EnumerationCapExceeded("dlr_residual: outer volume exceeds the enumeration cap");
    for (Site s : free)
        require(outer.contains(s), "dlr_residual: outer free sites must lie inside outer");
    for (Site s : obs.sites)
        require(inner.contains(s), "dlr_residual: observable support must lie inside inner");

    EnumeratedVolume ev(params, table, outer_bc, cutoff);
    const size_t n = ev.size();

    std::vector<size_t> in_idx, out_idx;
    for (size_t k = 0; k < n; ++k)
        (inner.contains(ev.sites()[k]) ? in_idx : out_idx).push_back(k);
    require(!in_idx.empty(), "dlr_residual: inner volume holds no free site");

    std::vector<Site> in_sites;
    std::vector<std::vector<double>> in_pair(in_idx.size(),
                                             std::vector<double>(in_idx.size(), 0.0));
    for (size_t a = 0; a < in_idx.size(); ++a) {
        in_sites.push_back(ev.sites()[in_idx[a]]);
        for (size_t b = 0; b < in_idx.size(); ++b)
            if (a != b) in_pair[a][b] = ev.pair_coupling(in_idx[a], in_idx[b]);
    }

    // gamma_outer acting on both f and gamma_inner f, in one sweep.
    double running_max = -std::numeric_limits<double>::infinity();
    double weight_sum = 0.0, f_sum = 0.0, gf_sum = 0.0;
    ev.for_each_state([&](const std::vector<int>& sigma, double energy) {
        const double x = -params.beta * energy;
        const double f_direct = obs.eval([&](Site s) { return sigma[static_cast<size_t>(ev.site_index(s))]; });

        std::vector<double> in_field(in_idx.size());
        for (size_t a = 0; a < in_idx.size(); ++a) {
            double f = ev.field(in_idx[a]);
            for (size_t o : out_idx) f += ev.pair_coupling(in_idx[a], o) * sigma[o];
            in_field[a] = f;
        }
        EnumeratedVolume inner_ev(in_sites, std::move(in_field), in_pair);
        const double f_inner = inner_ev.expectation(params.beta, obs).expectation;

        if (x > running_max) {
            const double scale = std::exp(running_max - x);
            weight_sum = weight_sum * scale + 1.0;
            f_sum = f_sum * scale + f_direct;
            gf_sum = gf_sum * scale + f_inner;
            running_max = x;
        } else {
            const double w = std::exp(x - running_max);
            weight_sum += w;
            f_sum += f_direct * w;
            gf_sum += f_inner * w;
        }
    });
    return std::fabs(gf_sum / weight_sum - f_sum / weight_sum);
}

/**
 * Exhaustive FKG monotonicity audit: for every coordinatewise-comparable
 * pair of boundary patterns on `boundary_sites`, the kernel expectation of
 * an increasing observable must not decrease.  Returns the number of
 * violating pairs at tolerance `tol`.
 */
inline long long count_monotonicity_violations(const ModelParams& params,
                                               const CouplingTable& table, Interval volume,
                                               const Observable& obs,
                                               const std::vector<Site>& boundary_sites,
                                               TailRule tail, Site cutoff,
                                               double tol = 1e-12) {
    require(boundary_sites.size() <= 12, "monotonicity: at most 12 boundary spins");
    require(obs.increasing(), "monotonicity: observable must be increasing");
    for (Site b : boundary_sites)
        require(!volume.contains(b), "monotonicity: boundary sites must lie outside the volume");

    Interval hull = volume;
    for (Site b : boundary_sites) {
        hull.lo = std::min(hull.lo, b);
        hull.hi = std::max(hull.hi, b);
    }
    FrozenConstraint base;
    base.set_tail(tail, hull);
    base.add_free_interval(volume);

    EnumeratedVolume ev(params, table, base, cutoff);
    const size_t n = ev.size();
    const size_t nb = boundary_sites.size();

    std::vector<std::vector<double>> bond(nb, std::vector<double>(n));
    for (size_t p = 0; p < nb; ++p)
        for (size_t k = 0; k < n; ++k)
            bond[p][k] = table.j(std::llabs(boundary_sites[p] - ev.sites()[k]));

    std::vector<std::vector<double>> pair(n, std::vector<double>(n, 0.0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (a != b) pair[a][b] = ev.pair_coupling(a, b);

    const uint64_t patterns = 1ull << nb;
    std::vector<double> value(patterns);
    for (uint64_t mask = 0; mask < patterns; ++mask) {
        std::vector<double> field(n);
        for (size_t k = 0; k < n; ++k) {
            double f = ev.field(k);
            for (size_t p = 0; p < nb; ++p)
                f += ((mask >> p) & 1ull ? 1.0 : -1.0) * bond[p][k];
            field[k] = f;
        }
        EnumeratedVolume patterned(ev.sites(), std::move(field), pair);
        value[mask] = patterned.expectation(params.beta, obs).expectation;
    }

    // Comparable pairs correspond to per-site choices (-,-), (-,+), (+,+).
    long long violations = 0;
    std::vector<int> digit(nb, 0);
    while (true) {
        uint64_t lo = 0, hi = 0;
        for (size_t p = 0; p < nb; ++p) {
            if (digit[p] == 2) lo |= 1ull << p;
            if (digit[p] >= 1) hi |= 1ull << p;
        }
        if (value[lo] > value[hi] + tol) ++violations;
        size_t p = 0;
        while (p < nb && digit[p] == 2) digit[p++] = 0;
        if (p == nb) break;
        ++digit[p];
    }
    return violations;
}

/// Exact kernel expectation with an all-plus (resp. all-minus) boundary
/// condition outside the volume; these bracket every Gibbs expectation of an
/// increasing observable.
inline ExactResult mu_plus_expectation(const ModelParams& params, Interval volume,
                                       const Observable& obs, Site cutoff,
                                       Site cap = kDefaultEnumerationCap) {
    KernelQuery q{volume, boundary_condition(TailRule::all_plus, volume), obs, cutoff};
    return gibbs_exact(params, q, cap);
}

inline ExactResult mu_minus_expectation(const ModelParams& params, Interval volume,
                                        const Observable& obs, Site cutoff,
                                        Site cap = kDefaultEnumerationCap) {
    KernelQuery q{volume, boundary_condition(TailRule::all_minus, volume), obs, cutoff};
    return gibbs_exact(params, q, cap);
}

}  // namespace dyson
