#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dyson {

using Site = long long;
using Spin = int;  // always -1 or +1

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct Interval {
    Site lo = 0;
    Site hi = -1;

    bool empty() const { return lo > hi; }
    Site length() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(Site s) const { return s >= lo && s <= hi; }
    bool contains(const Interval& other) const {
        return other.empty() || (lo <= other.lo && other.hi <= hi);
    }
    bool operator==(const Interval& other) const = default;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace dyson
