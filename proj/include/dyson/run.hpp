#pragma once

#include <fstream>
#include <iostream>

#include "dyson/checks.hpp"
#include "dyson/probe.hpp"
#include "dyson/report.hpp"

namespace dyson {

namespace detail {

inline void require_seed(const RunConfig& cfg) {
    if (cfg.seed == 0)
        throw ConfigError("command '" + to_string(cfg.command) +
                          "' needs a seed >= 1 (config key 'seed' or flag --seed)");
}

inline ChainConfig chain_from(const RunConfig& cfg) {
    ChainConfig chain;
    chain.sweeps = cfg.sweeps;
    chain.burn_in = cfg.burn_in;
    chain.measure_every = cfg.measure_every;
    chain.algorithm = cfg.algorithm;
    chain.seed = cfg.seed;
    return chain;
}

inline ProbeSettings settings_from(const RunConfig& cfg) {
    ProbeSettings s;
    s.cutoff = cfg.cutoff;
    s.exact_cap = cfg.exact_cap;
    s.max_free_sites = cfg.max_free_sites;
    return s;
}

inline ReportTable run_exact(const RunConfig& cfg) {
    ModelParams params(cfg.alpha, cfg.beta, cfg.h);
    const Interval volume{-cfg.volume, cfg.volume};
    auto constraint = boundary_condition(cfg.boundary, volume);
    const auto obs = parse_observable(cfg.observable, volume);
    KernelQuery query{volume, std::move(constraint), obs, cfg.cutoff};
    const auto result = gibbs_exact(params, query, cfg.exact_cap);

    ReportTable table(cfg, {"volume", "boundary", "observable", "expectation",
                            "log_partition", "tail_bound"});
    table.add_row({cfg.volume, to_string(cfg.boundary), cfg.observable, result.expectation,
                   result.log_partition, result.tail_bound});
    return table;
}

inline ReportTable run_sample(const RunConfig& cfg) {
    require_seed(cfg);
    ModelParams params(cfg.alpha, cfg.beta, cfg.h);
    const Interval volume{-cfg.volume, cfg.volume};
    auto constraint = boundary_condition(cfg.boundary, volume);
    const auto obs = parse_observable(cfg.observable, volume);
    const Site span = std::max<Site>(cfg.cutoff, 2 * cfg.volume + 2);
    CouplingTable coupling_table(params.alpha, span);
    const auto est = sample_run(params, coupling_table, constraint, obs, chain_from(cfg),
                                cfg.cutoff);

    ReportTable table(cfg, {"volume", "boundary", "observable", "algorithm", "mean",
                            "std_error", "n_samples", "autocorr_hint", "sweeps", "seed"});
    table.add_row({cfg.volume, to_string(cfg.boundary), cfg.observable,
                   to_string(cfg.algorithm), est.mean, est.std_error, est.n_samples,
                   est.autocorr_hint, cfg.sweeps,
                   static_cast<long long>(cfg.seed)});
    return table;
}

inline ReportTable run_probe(const RunConfig& cfg, std::ostream& diag) {
    require_seed(cfg);
    ModelParams params(cfg.alpha, cfg.beta, cfg.h);
    ReportTable table(cfg, {"L", "N", "annulus_sign", "tail_rule", "M_mean", "M_stderr",
                            "gap_mean", "gap_stderr", "boundary_bound", "sweeps", "seed"});

    int index = 0;
    for (Site L : cfg.L_list) {
        ProbeGeometry geometry;
        geometry.L = L;
        geometry.window_margin = cfg.window_margin;
        bool capped = false;
        if (cfg.N > 0) {
            geometry.N = cfg.N;
        } else {
            require(params.alpha <= 2.0,
                    "probe: pass N explicitly for alpha > 2 (the size law does not apply)");
            const Site wanted = choose_annulus_halfwidth(params.alpha, L);
            // free sites = 2N + margin + 1 (margin defaults to 2N)
            const Site by_budget = cfg.window_margin > 0
                                       ? (cfg.max_free_sites - cfg.window_margin - 1) / 2
                                       : (cfg.max_free_sites - 1) / 4;
            const Site budget = std::max<Site>(L + 1, by_budget);
            geometry.N = std::min(wanted, budget);
            capped = geometry.N < wanted;
        }
        require(geometry.N > L, "probe: need N > L (choose a larger N or budget)");

        ChainConfig chain = chain_from(cfg);
        chain.seed = child_seed(cfg.seed, static_cast<uint64_t>(index++));
        auto result = discontinuity_probe(params, geometry, chain, settings_from(cfg));
        result.n_capped = capped;
        if (capped)
            diag << "# note: L=" << L << " capped N to " << geometry.N
                 << " (budget); the size-law asymptotics are not being tested\n";
        if (result.n_below_recommended)
            diag << "# note: L=" << L << " runs with N below the size law\n";

        const auto emit_pair = [&](TailRule tail, const Estimate& plus, const Estimate& minus) {
            const Estimate gap = difference(plus, minus);
            for (int sign : {+1, -1}) {
                const Estimate& m = sign > 0 ? plus : minus;
                table.add_row({geometry.L, geometry.N, static_cast<long long>(sign),
                               to_string(tail), m.mean, m.std_error, gap.mean, gap.std_error,
                               result.boundary_bound_value, cfg.sweeps,
                               static_cast<long long>(cfg.seed)});
            }
        };
        emit_pair(TailRule::alternating_even, result.m_plus, result.m_minus);
        for (const auto& variant : result.tail_variants)
            emit_pair(variant.tail, variant.m_plus, variant.m_minus);
    }
    return table;
}

inline ReportTable run_scan(const RunConfig& cfg) {
    require_seed(cfg);
    ModelParams params(cfg.alpha, cfg.beta, cfg.h);
    ReportTable table(cfg, {"axis", "value", "size", "exact", "M_plus_mean", "M_plus_stderr",
                            "M_minus_mean", "M_minus_stderr", "gap_mean", "gap_stderr",
                            "sweeps", "seed"});
    ScanResult scan;
    if (cfg.axis == ScanAxis::beta) {
        if (cfg.h != 0.0)
            throw ConfigError("scan axis=beta probes the zero-field constrained model; set h = 0");
        std::vector<Site> Ls(cfg.L_list.begin(), cfg.L_list.end());
        scan = hidden_transition_scan(params, cfg.beta_list, Ls, chain_from(cfg),
                                      settings_from(cfg));
    } else {
        if (cfg.h == 0.0)
            throw ConfigError("scan axis=volume is the uniqueness control; it needs h != 0");
        std::vector<Site> volumes(cfg.volume_list.begin(), cfg.volume_list.end());
        scan = field_uniqueness_scan(params, volumes, chain_from(cfg), settings_from(cfg));
    }
    for (const auto& point : scan.points)
        table.add_row({to_string(scan.axis), point.axis_value, point.size,
                       static_cast<long long>(point.exact_path ? 1 : 0), point.plus_run.mean,
                       point.plus_run.std_error, point.minus_run.mean,
                       point.minus_run.std_error, point.gap.mean, point.gap.std_error,
                       cfg.sweeps, static_cast<long long>(cfg.seed)});
    return table;
}

inline ReportTable run_check(const RunConfig& cfg, bool& all_passed) {
    const auto suites = checks::run_all();
    ReportTable table(cfg, {"suite", "checks", "failures", "worst"});
    all_passed = true;
    for (const auto& suite : suites) {
        table.add_row({suite.name, suite.checks, suite.failures, suite.worst});
        all_passed = all_passed && suite.passed();
    }
    return table;
}

}  // namespace detail

/**
 * Execute a fully resolved configuration.  Returns the process exit status:
 * 0 on success, 1 on contract/invariant violation, 2 on configuration
 * errors (thrown as ConfigError before any output is produced).
 */
inline int run_command(const RunConfig& cfg, std::ostream& diag = std::cerr) {
    bool checks_passed = true;
    ReportTable table = [&] {
        switch (cfg.command) {
            case Command::exact: return detail::run_exact(cfg);
            case Command::sample: return detail::run_sample(cfg);
            case Command::probe: return detail::run_probe(cfg, diag);
            case Command::scan: return detail::run_scan(cfg);
            case Command::check: return detail::run_check(cfg, checks_passed);
        }
        throw ConfigError("unknown command");
    }();

    if (cfg.out == "-") {
        table.write(std::cout);
    } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) throw ConfigError("cannot open output path '" + cfg.out + "'");
        table.write(out);
    }
    if (cfg.command == Command::check && !checks_passed) {
        diag << "check: invariant violations detected\n";
        return 1;
    }
    return 0;
}

}  // namespace dyson
