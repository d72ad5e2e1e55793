#pragma once

#include <cmath>
#include <vector>

#include "dyson/params.hpp"
#include "dyson/series.hpp"

namespace dyson {

/// Pair coupling J(r) = r^{-alpha}; strictly positive and decreasing in r.
inline double coupling(const ModelParams& params, Site r) {
    require(r >= 1, "coupling: distance must be >= 1 (no self-coupling)");
    return std::pow(static_cast<double>(r), -params.alpha);
}

/**
 * Precomputed couplings J(r) = scale * r^{-alpha} for r = 1..max_distance
 * together with prefix sums S(r) = sum_{k<=r} J(k).  The prefix table gives
 * O(1) range sums for homogeneous tails and O(log n) threshold searches for
 * the cluster algorithm's cumulative bond jumps.  The scale factor hosts
 * rescaled sublattice models; the plain chain uses scale 1.
 */
class CouplingTable {
public:
    CouplingTable(double alpha, Site max_distance, double scale = 1.0)
        : alpha_(alpha), scale_(scale), j_(static_cast<size_t>(max_distance) + 1, 0.0),
          prefix_(static_cast<size_t>(max_distance) + 1, 0.0) {
        require(alpha > 1.0, "CouplingTable: alpha must exceed 1");
        require(max_distance >= 1, "CouplingTable: max_distance must be >= 1");
        require(scale > 0.0, "CouplingTable: scale must be positive");
        long double acc = 0.0L;
        for (Site r = 1; r <= max_distance; ++r) {
            j_[static_cast<size_t>(r)] = scale * std::pow(static_cast<double>(r), -alpha);
            acc += j_[static_cast<size_t>(r)];
            prefix_[static_cast<size_t>(r)] = static_cast<double>(acc);
        }
    }

    double alpha() const { return alpha_; }
    double scale() const { return scale_; }
    Site max_distance() const { return static_cast<Site>(j_.size()) - 1; }

    double j(Site r) const { return j_[static_cast<size_t>(r)]; }

    /// S(r) = sum_{k=1..r} J(k); S(0) = 0.
    double prefix(Site r) const { return prefix_[static_cast<size_t>(r)]; }

    /// sum_{r1 < k <= r2} J(k).
    double range_sum(Site r1, Site r2) const { return prefix(r2) - prefix(r1); }

    /// Smallest r in (r_lo, max_distance] with S(r) >= target, or
    /// max_distance + 1 when the target is never reached.
    Site prefix_search(Site r_lo, double target) const {
        Site lo = r_lo + 1, hi = max_distance();
        if (lo > hi || prefix(hi) < target) return max_distance() + 1;
        while (lo < hi) {
            Site mid = lo + (hi - lo) / 2;
            if (prefix(mid) >= target)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

private:
    double alpha_;
    double scale_;
    std::vector<double> j_;
    std::vector<double> prefix_;
};

}  // namespace dyson
