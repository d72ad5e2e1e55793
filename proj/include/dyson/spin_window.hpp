#pragma once

#include <vector>

#include "dyson/core.hpp"

namespace dyson {

/// A finite window of +-1 spins anchored at an integer offset: site
/// offset + k carries spins[k].
struct SpinWindow {
    Site offset = 0;
    std::vector<Spin> spins;

    SpinWindow() = default;
    SpinWindow(Site offset_, std::vector<Spin> spins_)
        : offset(offset_), spins(std::move(spins_)) {
        for (Spin s : spins)
            require(s == 1 || s == -1, "SpinWindow: spins must be exactly -1 or +1");
    }

    Site size() const { return static_cast<Site>(spins.size()); }
    bool empty() const { return spins.empty(); }
    Site first_site() const { return offset; }
    Site last_site() const { return offset + size() - 1; }
    bool covers(Site i) const { return i >= offset && i < offset + size(); }
    Spin at(Site i) const { return spins[static_cast<size_t>(i - offset)]; }
};

/// Decimation to the even sublattice: output site i carries the input spin
/// at site 2i.  Returns an empty window when the input covers no even site.
inline SpinWindow decimate(const SpinWindow& window) {
    if (window.empty()) return {};
    Site lo = window.first_site(), hi = window.last_site();
    // smallest i with 2i >= lo, largest i with 2i <= hi
    Site i_lo = (lo >= 0) ? (lo + 1) / 2 : -((-lo) / 2);
    Site i_hi = (hi >= 0) ? hi / 2 : -((-hi + 1) / 2);
    if (i_lo > i_hi) return {};
    std::vector<Spin> out;
    out.reserve(static_cast<size_t>(i_hi - i_lo + 1));
    for (Site i = i_lo; i <= i_hi; ++i) out.push_back(window.at(2 * i));
    return SpinWindow(i_lo, std::move(out));
}

}  // namespace dyson
