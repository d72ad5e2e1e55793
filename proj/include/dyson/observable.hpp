#pragma once

#include <string>
#include <vector>

#include "dyson/core.hpp"

namespace dyson {

/**
 * Local observables form a closed, serializable set: a single spin, a
 * product of spins, a {0,1} pattern indicator, and the mean spin over a
 * site list (sublattice magnetization).  All are bounded by 1 in sup norm.
 */
struct Observable {
    enum class Kind { spin, product, pattern, mean_spin };

    Kind kind = Kind::spin;
    std::vector<Site> sites;
    std::vector<Spin> pattern;  // used by Kind::pattern only

    static Observable spin_at(Site s) { return {Kind::spin, {s}, {}}; }
    static Observable product_of(std::vector<Site> s) {
        require(!s.empty(), "Observable: product needs at least one site");
        return {Kind::product, std::move(s), {}};
    }
    static Observable pattern_indicator(std::vector<Site> s, std::vector<Spin> values) {
        require(!s.empty() && s.size() == values.size(),
                "Observable: pattern needs matching sites and spins");
        for (Spin v : values) require(v == 1 || v == -1, "Observable: pattern spins are +-1");
        return {Kind::pattern, std::move(s), std::move(values)};
    }
    static Observable mean_spin_over(std::vector<Site> s) {
        require(!s.empty(), "Observable: mean needs at least one site");
        return {Kind::mean_spin, std::move(s), {}};
    }

    double sup_norm() const { return 1.0; }

    /// True when the observable is monotone increasing in the FKG order.
    bool increasing() const { return kind == Kind::spin || kind == Kind::mean_spin; }

    template <class SpinAt>
    double eval(SpinAt&& spin_of) const {
        switch (kind) {
            case Kind::spin:
                return static_cast<double>(spin_of(sites[0]));
            case Kind::product: {
                int p = 1;
                for (Site s : sites) p *= spin_of(s);
                return static_cast<double>(p);
            }
            case Kind::pattern: {
                for (size_t k = 0; k < sites.size(); ++k)
                    if (spin_of(sites[k]) != pattern[k]) return 0.0;
                return 1.0;
            }
            case Kind::mean_spin: {
                double acc = 0.0;
                for (Site s : sites) acc += spin_of(s);
                return acc / static_cast<double>(sites.size());
            }
        }
        return 0.0;
    }

    std::string describe() const {
        std::string name;
        switch (kind) {
            case Kind::spin: name = "spin:"; break;
            case Kind::product: name = "product:"; break;
            case Kind::pattern: name = "pattern:"; break;
            case Kind::mean_spin: name = "mean:"; break;
        }
        for (size_t k = 0; k < sites.size(); ++k) {
            if (k) name += ',';
            name += std::to_string(sites[k]);
            if (kind == Kind::pattern) name += pattern[k] > 0 ? ":+1" : ":-1";
        }
        return name;
    }
};

}  // namespace dyson
