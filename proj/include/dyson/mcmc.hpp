#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dyson/constraint.hpp"
#include "dyson/estimate.hpp"
#include "dyson/fields.hpp"
#include "dyson/observable.hpp"
#include "dyson/rng.hpp"

namespace dyson {

enum class Algorithm { metropolis, cluster };

inline std::string to_string(Algorithm a) {
    return a == Algorithm::metropolis ? "metropolis" : "cluster";
}

struct ChainConfig {
    long long sweeps = 10000;
    long long burn_in = 1000;
    uint64_t seed = 1;
    Algorithm algorithm = Algorithm::cluster;
    long long measure_every = 1;

    void validate() const {
        require(sweeps >= 1, "ChainConfig: sweeps must be positive");
        require(burn_in >= 0 && burn_in < sweeps, "ChainConfig: need 0 <= burn_in < sweeps");
        require(measure_every >= 1, "ChainConfig: measure_every must be positive");
        require((sweeps - burn_in) / measure_every >= 1,
                "ChainConfig: no measurements fit between burn_in and sweeps");
    }
};

struct RunDiagnostics {
    double mean_cluster_size = 0.0;
    long long ghost_aborts = 0;
};

namespace detail {

/// Immutable per-run geometry: free sites, static fields (frozen crosses plus
/// the homogeneous field), and a dense position -> index map for O(1) lookups.
struct SamplerContext {
    std::vector<Site> sites;
    std::vector<double> field;
    std::vector<int> index_of;  // position - base -> site index, -1 when absent
    Site base = 0;
    Site span = 0;

    SamplerContext(const ModelParams& params, const CouplingTable& table,
                   const FrozenConstraint& c, Site cutoff) {
        sites = c.free_sites();
        require(!sites.empty(), "sampler: constraint has no free sites");
        base = sites.front();
        span = sites.back() - sites.front();
        require(table.max_distance() >= std::max(span, cutoff),
                "sampler: coupling table must cover the window span and the cutoff");
        field.resize(sites.size());
        for (size_t k = 0; k < sites.size(); ++k)
            field[k] = cross_field(table, c, sites[k], cutoff) + params.h;
        index_of.assign(static_cast<size_t>(span) + 1, -1);
        for (size_t k = 0; k < sites.size(); ++k)
            index_of[static_cast<size_t>(sites[k] - base)] = static_cast<int>(k);
    }

    int index_at(Site pos) const {
        if (pos < base || pos > base + span) return -1;
        return index_of[static_cast<size_t>(pos - base)];
    }

    double energy_of(const CouplingTable& table, const std::vector<int>& sigma) const {
        const size_t n = sites.size();
        double pair_acc = 0.0, field_acc = 0.0;
        for (size_t k = 0; k < n; ++k) {
            field_acc += field[k] * sigma[k];
            for (size_t l = k + 1; l < n; ++l)
                pair_acc += table.j(std::llabs(sites[l] - sites[k])) * sigma[k] * sigma[l];
        }
        return -pair_acc - field_acc;
    }

    void descend(const CouplingTable& table, std::vector<int>& sigma) const {
        const size_t n = sites.size();
        for (int pass = 0; pass < 100; ++pass) {
            bool changed = false;
            for (size_t k = 0; k < n; ++k) {
                double local = field[k];
                for (size_t l = 0; l < n; ++l)
                    if (l != k) local += table.j(std::llabs(sites[l] - sites[k])) * sigma[l];
                const int aligned = local > 0.0 ? 1 : local < 0.0 ? -1 : sigma[k];
                if (aligned != sigma[k]) {
                    sigma[k] = aligned;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    /// Deterministic start: zero-temperature descent from three seeds
    /// (per-site field signs, all plus, all minus), keeping the lowest-energy
    /// fixed point.  Single-seed descents can strand the chain in shallow
    /// local minima -- a freed origin traps a small misaligned island that
    /// neither single flips nor ghost-protected clusters can dissolve at low
    /// temperature -- while the best of the three starts the chain in the
    /// basin the constraint actually selects.
    std::vector<int> initial_state(const CouplingTable& table) const {
        const size_t n = sites.size();
        std::vector<int> by_field(n);
        for (size_t k = 0; k < n; ++k)
            by_field[k] = field[k] > 0.0 ? 1 : field[k] < 0.0 ? -1 : ((sites[k] & 1LL) ? -1 : 1);
        std::vector<std::vector<int>> candidates{std::move(by_field),
                                                 std::vector<int>(n, +1),
                                                 std::vector<int>(n, -1)};
        size_t best = 0;
        double best_energy = 0.0;
        for (size_t c = 0; c < candidates.size(); ++c) {
            descend(table, candidates[c]);
            const double e = energy_of(table, candidates[c]);
            if (c == 0 || e < best_energy) {
                best = c;
                best_energy = e;
            }
        }
        return candidates[best];
    }

    double observe(const Observable& obs, const std::vector<int>& sigma) const {
        return obs.eval([&](Site s) {
            const int idx = index_at(s);
            require(idx >= 0, "sampler: observable site is not a free site");
            return sigma[static_cast<size_t>(idx)];
        });
    }
};

}  // namespace detail

/**
 * Single-spin-flip Metropolis sampling of the constrained finite-volume
 * Gibbs measure.  A sweep is n proposals at uniformly random sites; every
 * proposal consumes exactly two variates (site pick, acceptance), so the
 * chain is a deterministic function of the seed.
 */
inline Estimate metropolis_run(const ModelParams& params, const CouplingTable& table,
                               const FrozenConstraint& c, const Observable& obs,
                               const ChainConfig& chain, Site cutoff) {
    chain.validate();
    detail::SamplerContext ctx(params, table, c, cutoff);
    const size_t n = ctx.sites.size();
    auto sigma = ctx.initial_state(table);
    Rng rng(chain.seed);

    std::vector<double> samples;
    samples.reserve(static_cast<size_t>((chain.sweeps - chain.burn_in) / chain.measure_every));
    for (long long sweep = 1; sweep <= chain.sweeps; ++sweep) {
        for (size_t attempt = 0; attempt < n; ++attempt) {
            const size_t k = rng.pick(n);
            double local = ctx.field[k];
            for (size_t l = 0; l < n; ++l)
                if (l != k)
                    local += table.j(std::llabs(ctx.sites[l] - ctx.sites[k])) * sigma[l];
            const double delta = 2.0 * sigma[k] * local;
            const double u = rng.uniform();
            if (delta <= 0.0 || u < std::exp(-params.beta * delta)) sigma[k] = -sigma[k];
        }
        if (sweep > chain.burn_in && (sweep - chain.burn_in) % chain.measure_every == 0)
            samples.push_back(ctx.observe(obs, sigma));
    }
    return summarize(samples);
}

/**
 * Wolff-type cluster sampling adapted to long-range couplings: candidate
 * bonds from each site are generated by jump search over the cumulative
 * coupling sums (O(log span) per candidate instead of a scan over all
 * sites), and the inhomogeneous static field is represented by a ghost site
 * whose bonds open with probability 1 - exp(-2 beta |f_i|).  A cluster that
 * reaches the ghost is never flipped.
 */
inline Estimate cluster_run(const ModelParams& params, const CouplingTable& table,
                            const FrozenConstraint& c, const Observable& obs,
                            const ChainConfig& chain, Site cutoff,
                            RunDiagnostics* diagnostics = nullptr) {
    chain.validate();
    detail::SamplerContext ctx(params, table, c, cutoff);
    const size_t n = ctx.sites.size();
    const double two_beta = 2.0 * params.beta;

    std::vector<double> ghost_open(n);
    double weakest_ghost = 1.0;
    for (size_t k = 0; k < n; ++k) {
        ghost_open[k] = -std::expm1(-two_beta * std::fabs(ctx.field[k]));
        weakest_ghost = std::min(weakest_ghost, ghost_open[k]);
    }
    if (n > 0 && weakest_ghost >= 1.0 - 1e-12)
        throw std::runtime_error(
            "cluster_run: every ghost bond is nearly certain (2*beta*|field| too large); "
            "the window would freeze -- use metropolis_run");

    auto sigma = ctx.initial_state(table);
    Rng rng(chain.seed);

    std::vector<char> in_cluster(n, 0);
    std::vector<size_t> stack, members;
    double cluster_size_acc = 0.0;
    long long ghost_aborts = 0;

    std::vector<double> samples;
    samples.reserve(static_cast<size_t>((chain.sweeps - chain.burn_in) / chain.measure_every));

    for (long long sweep = 1; sweep <= chain.sweeps; ++sweep) {
        const size_t seed_site = rng.pick(n);
        const int cluster_spin = sigma[seed_site];
        stack.assign(1, seed_site);
        members.assign(1, seed_site);
        in_cluster[seed_site] = 1;
        bool ghost_hit = false;

        while (!stack.empty() && !ghost_hit) {
            const size_t i = stack.back();
            stack.pop_back();

            if (ctx.field[i] * cluster_spin > 0.0 && rng.uniform() < ghost_open[i]) {
                ghost_hit = true;
                break;
            }
            if (two_beta <= 0.0) continue;

            for (int dir : {-1, +1}) {
                Site r = 0;
                while (true) {
                    const double jump = -std::log1p(-rng.uniform()) / two_beta;
                    r = table.prefix_search(r, table.prefix(r) + jump);
                    if (r > table.max_distance()) break;
                    const Site pos = ctx.sites[i] + dir * r;
                    if (pos < ctx.base || pos > ctx.base + ctx.span) break;
                    const int idx = ctx.index_at(pos);
                    if (idx >= 0 && !in_cluster[static_cast<size_t>(idx)] &&
                        sigma[static_cast<size_t>(idx)] == cluster_spin) {
                        in_cluster[static_cast<size_t>(idx)] = 1;
                        stack.push_back(static_cast<size_t>(idx));
                        members.push_back(static_cast<size_t>(idx));
                    }
                }
            }
        }

        if (!ghost_hit)
            for (size_t m : members) sigma[m] = -sigma[m];
        else
            ++ghost_aborts;
        for (size_t m : members) in_cluster[m] = 0;
        cluster_size_acc += static_cast<double>(members.size());

        if (sweep > chain.burn_in && (sweep - chain.burn_in) % chain.measure_every == 0)
            samples.push_back(ctx.observe(obs, sigma));
    }

    if (diagnostics) {
        diagnostics->mean_cluster_size = cluster_size_acc / static_cast<double>(chain.sweeps);
        diagnostics->ghost_aborts = ghost_aborts;
    }
    return summarize(samples);
}

inline Estimate sample_run(const ModelParams& params, const CouplingTable& table,
                           const FrozenConstraint& c, const Observable& obs,
                           const ChainConfig& chain, Site cutoff,
                           RunDiagnostics* diagnostics = nullptr) {
    if (chain.algorithm == Algorithm::metropolis)
        return metropolis_run(params, table, c, obs, chain, cutoff);
    return cluster_run(params, table, c, obs, chain, cutoff, diagnostics);
}

struct GapRun {
    Estimate a, b, gap;
};

/// Two independent chains on identical geometry under constraints A and B;
/// the child seeds are derived from the base seed by fixed splitting.
inline GapRun paired_gap_run(const ModelParams& params, const CouplingTable& table,
                             const FrozenConstraint& ca, const FrozenConstraint& cb,
                             const Observable& obs, const ChainConfig& chain, Site cutoff) {
    require(ca.free_sites() == cb.free_sites(),
            "paired_gap_run: both constraints must free the same sites");
    ChainConfig chain_a = chain, chain_b = chain;
    chain_a.seed = child_seed(chain.seed, 0);
    chain_b.seed = child_seed(chain.seed, 1);
    GapRun out;
    out.a = sample_run(params, table, ca, obs, chain_a, cutoff);
    out.b = sample_run(params, table, cb, obs, chain_b, cutoff);
    out.gap = difference(out.a, out.b);
    return out;
}

}  // namespace dyson
