#pragma once

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "dyson/constraint.hpp"
#include "dyson/mcmc.hpp"
#include "dyson/observable.hpp"

namespace dyson {

/// Configuration problems exit with status 2; the message carries the line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { exact, sample, probe, scan, check };

inline std::string to_string(Command c) {
    switch (c) {
        case Command::exact: return "exact";
        case Command::sample: return "sample";
        case Command::probe: return "probe";
        case Command::scan: return "scan";
        case Command::check: return "check";
    }
    return "?";
}

enum class ScanAxis { beta, volume };

/**
 * One flat key = value document describes a run completely; every default is
 * resolved at parse time so the emitted form reproduces the run bit for bit.
 */
struct RunConfig {
    Command command = Command::check;

    double alpha = 1.5;
    double beta = 5.0;
    double h = 0.0;
    long long cutoff = 100000;

    // exact / sample geometry
    long long volume = 5;             // half-width of [-volume, volume]
    TailRule boundary = TailRule::all_plus;
    std::string observable = "spin:0";

    // probe ladder
    std::vector<long long> L_list{4, 8, 16};
    long long N = 0;                  // 0: size law, budget-capped
    long long window_margin = 0;      // 0: default 2N
    TailRule tail = TailRule::alternating_even;

    // chain
    Algorithm algorithm = Algorithm::cluster;
    long long sweeps = 10000;
    long long burn_in = 1000;
    long long measure_every = 1;
    unsigned long long seed = 0;      // 0 = unset; sample/probe/scan demand one

    // scan
    ScanAxis axis = ScanAxis::beta;
    std::vector<double> beta_list{0.5, 1.0, 2.0, 4.0};
    std::vector<long long> volume_list{4, 8, 16, 32};

    // budgets
    long long exact_cap = 20;
    long long max_free_sites = 4096;

    // io
    std::string out = "-";
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) out.push_back(trim(item));
    return out;
}

[[noreturn]] inline void config_fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

inline double parse_real(const std::string& v, int line) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) config_fail(line, "malformed number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        config_fail(line, "malformed number '" + v + "'");
    }
}

inline long long parse_integer(const std::string& v, int line) {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        config_fail(line, "malformed integer '" + v + "'");
    return x;
}

inline TailRule parse_tail(const std::string& v, int line) {
    if (v == "plus") return TailRule::all_plus;
    if (v == "minus") return TailRule::all_minus;
    if (v == "alternating") return TailRule::alternating_even;
    if (v == "none") return TailRule::none;
    config_fail(line, "unknown tail rule '" + v + "' (plus|minus|alternating|none)");
}

inline std::string format_real(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

}  // namespace detail

/// Parse the observable descriptor into a concrete Observable;
/// "mean" averages over the volume handed in by the caller.
inline Observable parse_observable(const std::string& text, Interval volume) {
    const auto fail = [&](const std::string& what) {
        throw ConfigError("observable '" + text + "': " + what);
    };
    if (text == "mean") {
        std::vector<Site> sites;
        for (Site s = volume.lo; s <= volume.hi; ++s) sites.push_back(s);
        return Observable::mean_spin_over(sites);
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail("expected kind:sites");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    try {
        if (kind == "spin") return Observable::spin_at(std::stoll(rest));
        if (kind == "product") {
            std::vector<Site> sites;
            for (const auto& tok : detail::split(rest, ',')) sites.push_back(std::stoll(tok));
            return Observable::product_of(std::move(sites));
        }
        if (kind == "pattern") {
            std::vector<Site> sites;
            std::vector<Spin> spins;
            for (const auto& tok : detail::split(rest, ',')) {
                const auto sep = tok.find(':');
                if (sep == std::string::npos) fail("pattern entries are site:+1 or site:-1");
                sites.push_back(std::stoll(tok.substr(0, sep)));
                const std::string sv = tok.substr(sep + 1);
                if (sv == "+1" || sv == "1")
                    spins.push_back(+1);
                else if (sv == "-1")
                    spins.push_back(-1);
                else
                    fail("pattern spin must be +1 or -1");
            }
            return Observable::pattern_indicator(std::move(sites), std::move(spins));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail("malformed site list");
    }
    fail("unknown kind '" + kind + "' (spin|product|pattern|mean)");
    return Observable::spin_at(0);  // unreachable
}

inline RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    bool has_command = false;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            detail::config_fail(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) detail::config_fail(line_no, "missing value for key '" + key + "'");

        if (key == "command") {
            has_command = true;
            if (value == "exact") cfg.command = Command::exact;
            else if (value == "sample") cfg.command = Command::sample;
            else if (value == "probe") cfg.command = Command::probe;
            else if (value == "scan") cfg.command = Command::scan;
            else if (value == "check") cfg.command = Command::check;
            else detail::config_fail(line_no, "unknown command '" + value + "'");
        } else if (key == "alpha") {
            cfg.alpha = detail::parse_real(value, line_no);
            if (cfg.alpha <= 1.0)
                detail::config_fail(line_no,
                                    "alpha must exceed 1: sum_r r^-alpha diverges otherwise");
        } else if (key == "beta") {
            cfg.beta = detail::parse_real(value, line_no);
            if (cfg.beta < 0.0) detail::config_fail(line_no, "beta must be nonnegative");
        } else if (key == "h") {
            cfg.h = detail::parse_real(value, line_no);
        } else if (key == "cutoff") {
            cfg.cutoff = detail::parse_integer(value, line_no);
            if (cfg.cutoff < 1) detail::config_fail(line_no, "cutoff must be positive");
        } else if (key == "volume") {
            cfg.volume = detail::parse_integer(value, line_no);
            if (cfg.volume < 0) detail::config_fail(line_no, "volume must be nonnegative");
        } else if (key == "boundary") {
            cfg.boundary = detail::parse_tail(value, line_no);
        } else if (key == "observable") {
            cfg.observable = value;
        } else if (key == "L_list") {
            cfg.L_list.clear();
            for (const auto& tok : detail::split(value, ','))
                cfg.L_list.push_back(detail::parse_integer(tok, line_no));
            if (cfg.L_list.empty()) detail::config_fail(line_no, "L_list is empty");
        } else if (key == "N") {
            cfg.N = detail::parse_integer(value, line_no);
            if (cfg.N < 0) detail::config_fail(line_no, "N must be nonnegative");
        } else if (key == "window_margin") {
            cfg.window_margin = detail::parse_integer(value, line_no);
            if (cfg.window_margin < 0)
                detail::config_fail(line_no, "window_margin must be nonnegative");
        } else if (key == "tail") {
            cfg.tail = detail::parse_tail(value, line_no);
        } else if (key == "algorithm") {
            if (value == "metropolis") cfg.algorithm = Algorithm::metropolis;
            else if (value == "cluster") cfg.algorithm = Algorithm::cluster;
            else detail::config_fail(line_no, "unknown algorithm '" + value + "'");
        } else if (key == "sweeps") {
            cfg.sweeps = detail::parse_integer(value, line_no);
            if (cfg.sweeps < 1) detail::config_fail(line_no, "sweeps must be positive");
        } else if (key == "burn_in") {
            cfg.burn_in = detail::parse_integer(value, line_no);
            if (cfg.burn_in < 0) detail::config_fail(line_no, "burn_in must be nonnegative");
        } else if (key == "measure_every") {
            cfg.measure_every = detail::parse_integer(value, line_no);
            if (cfg.measure_every < 1)
                detail::config_fail(line_no, "measure_every must be positive");
        } else if (key == "seed") {
            const long long s = detail::parse_integer(value, line_no);
            if (s < 0) detail::config_fail(line_no, "seed must be nonnegative");
            cfg.seed = static_cast<unsigned long long>(s);
        } else if (key == "axis") {
            if (value == "beta") cfg.axis = ScanAxis::beta;
            else if (value == "volume") cfg.axis = ScanAxis::volume;
            else detail::config_fail(line_no, "unknown axis '" + value + "' (beta|volume)");
        } else if (key == "beta_list") {
            cfg.beta_list.clear();
            for (const auto& tok : detail::split(value, ','))
                cfg.beta_list.push_back(detail::parse_real(tok, line_no));
            if (cfg.beta_list.empty()) detail::config_fail(line_no, "beta_list is empty");
        } else if (key == "volume_list") {
            cfg.volume_list.clear();
            for (const auto& tok : detail::split(value, ','))
                cfg.volume_list.push_back(detail::parse_integer(tok, line_no));
            if (cfg.volume_list.empty()) detail::config_fail(line_no, "volume_list is empty");
        } else if (key == "exact_cap") {
            cfg.exact_cap = detail::parse_integer(value, line_no);
            if (cfg.exact_cap < 1) detail::config_fail(line_no, "exact_cap must be positive");
        } else if (key == "max_free_sites") {
            cfg.max_free_sites = detail::parse_integer(value, line_no);
            if (cfg.max_free_sites < 1)
                detail::config_fail(line_no, "max_free_sites must be positive");
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json")
                detail::config_fail(line_no, "format must be csv or json");
            cfg.format = value;
        } else {
            detail::config_fail(line_no, "unknown key '" + key + "'");
        }
    }
    if (!has_command) throw ConfigError("config: missing required key 'command'");
    if (cfg.burn_in >= cfg.sweeps) throw ConfigError("config: need burn_in < sweeps");
    return cfg;
}

/// Canonical emission: every key explicit, fixed order, round-trips through
/// parse_run_config to an identical RunConfig.
inline std::string emit_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "command = " << to_string(cfg.command) << '\n';
    out << "alpha = " << detail::format_real(cfg.alpha) << '\n';
    out << "beta = " << detail::format_real(cfg.beta) << '\n';
    out << "h = " << detail::format_real(cfg.h) << '\n';
    out << "cutoff = " << cfg.cutoff << '\n';
    out << "volume = " << cfg.volume << '\n';
    out << "boundary = " << to_string(cfg.boundary) << '\n';
    out << "observable = " << cfg.observable << '\n';
    out << "L_list = ";
    for (size_t k = 0; k < cfg.L_list.size(); ++k)
        out << (k ? "," : "") << cfg.L_list[k];
    out << '\n';
    out << "N = " << cfg.N << '\n';
    out << "window_margin = " << cfg.window_margin << '\n';
    out << "tail = " << to_string(cfg.tail) << '\n';
    out << "algorithm = " << to_string(cfg.algorithm) << '\n';
    out << "sweeps = " << cfg.sweeps << '\n';
    out << "burn_in = " << cfg.burn_in << '\n';
    out << "measure_every = " << cfg.measure_every << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "axis = " << (cfg.axis == ScanAxis::beta ? "beta" : "volume") << '\n';
    out << "beta_list = ";
    for (size_t k = 0; k < cfg.beta_list.size(); ++k)
        out << (k ? "," : "") << detail::format_real(cfg.beta_list[k]);
    out << '\n';
    out << "volume_list = ";
    for (size_t k = 0; k < cfg.volume_list.size(); ++k)
        out << (k ? "," : "") << cfg.volume_list[k];
    out << '\n';
    out << "exact_cap = " << cfg.exact_cap << '\n';
    out << "max_free_sites = " << cfg.max_free_sites << '\n';
    out << "out = " << cfg.out << '\n';
    out << "format = " << cfg.format << '\n';
    return out.str();
}

}  // namespace dyson
