#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dyson/core.hpp"

namespace dyson {

/// How frozen spins continue beyond the explicitly stored region.
enum class TailRule { none, all_plus, all_minus, alternating_even };

inline std::string to_string(TailRule rule) {
    switch (rule) {
        case TailRule::none: return "none";
        case TailRule::all_plus: return "plus";
        case TailRule::all_minus: return "minus";
        case TailRule::alternating_even: return "alternating";
    }
    return "?";
}

/**
 * A partial configuration: explicitly frozen spins, the set of free
 * (simulated) sites, and a tail rule describing frozen spins at every site
 * outside the stored region `tail_window`.  Sites that are neither frozen,
 * free, nor covered by the tail rule carry no spin and contribute nothing.
 *
 * The alternating tail assigns phase * (-1)^(j/2) to even sites j and leaves
 * odd sites empty; all_plus / all_minus fill every site.  Free sites always
 * win over the tail rule, so a window of simulated sites may extend past
 * tail_window.
 */
class FrozenConstraint {
public:
    FrozenConstraint() = default;

    void set_tail(TailRule rule, Interval tail_window, int phase = +1) {
        require(phase == 1 || phase == -1, "FrozenConstraint: tail phase must be +-1");
        tail_ = rule;
        tail_window_ = tail_window;
        tail_phase_ = phase;
        check_frozen_inside_tail_window();
    }

    void freeze(Site j, Spin s) {
        require(s == 1 || s == -1, "FrozenConstraint: frozen spin must be +-1");
        require(!free_set_.contains(j), "FrozenConstraint: site is already free");
        if (tail_ != TailRule::none)
            require(tail_window_.contains(j),
                    "FrozenConstraint: explicit frozen spins must lie inside tail_window");
        const bool was_empty = frozen_.empty();
        auto [it, inserted] = frozen_.emplace(j, s);
        if (!inserted) it->second = s;
        if (was_empty) {
            frozen_min_ = frozen_max_ = j;
        } else {
            frozen_min_ = std::min(frozen_min_, j);
            frozen_max_ = std::max(frozen_max_, j);
        }
    }

    void add_free(Site j) {
        require(!frozen_.contains(j), "FrozenConstraint: site is already frozen");
        if (free_set_.insert(j).second) {
            free_sorted_.push_back(j);
            sorted_ = false;
        }
    }

    void add_free_interval(Interval v) {
        for (Site j = v.lo; j <= v.hi; ++j) add_free(j);
    }

    bool is_free(Site j) const { return free_set_.contains(j); }

    const std::vector<Site>& free_sites() const {
        if (!sorted_) {
            std::sort(free_sorted_.begin(), free_sorted_.end());
            sorted_ = true;
        }
        return free_sorted_;
    }

    /// Frozen spin at site j, or nullopt when the site is free or absent.
    std::optional<Spin> frozen_spin(Site j) const {
        if (!frozen_.empty()) {
            auto it = frozen_.find(j);
            if (it != frozen_.end()) return it->second;
        }
        if (free_set_.contains(j)) return std::nullopt;
        if (tail_ == TailRule::none || tail_window_.contains(j)) return std::nullopt;
        switch (tail_) {
            case TailRule::all_plus: return +1;
            case TailRule::all_minus: return -1;
            case TailRule::alternating_even:
                if (j % 2 != 0) return std::nullopt;
                return ((j / 2) & 1LL) ? -tail_phase_ : tail_phase_;
            default: return std::nullopt;
        }
    }

    TailRule tail_rule() const { return tail_; }
    Interval tail_window() const { return tail_window_; }
    int tail_phase() const { return tail_phase_; }
    bool has_frozen_map() const { return !frozen_.empty(); }
    const std::unordered_map<Site, Spin>& frozen_map() const { return frozen_; }

    /// Largest distance from `site` to any explicitly frozen spin.
    Site frozen_reach_from(Site site) const {
        if (frozen_.empty()) return 0;
        return std::max(std::llabs(frozen_min_ - site), std::llabs(frozen_max_ - site));
    }

    /// Distance beyond which both partners site +- d are governed purely by
    /// the tail rule (outside tail_window and past every free site).
    Site pure_tail_distance_from(Site site) const {
        Site d = 0;
        if (!tail_window_.empty())
            d = std::max(std::llabs(tail_window_.lo - site),
                         std::llabs(tail_window_.hi - site));
        if (!free_set_.empty()) {
            const auto& fs = free_sites();
            d = std::max({d, std::llabs(fs.front() - site), std::llabs(fs.back() - site)});
        }
        return d;
    }

    /// Global spin flip of all frozen content (map, tail rule, phase).
    FrozenConstraint flipped() const {
        FrozenConstraint out = *this;
        for (auto& [site, spin] : out.frozen_) spin = -spin;
        switch (tail_) {
            case TailRule::all_plus: out.tail_ = TailRule::all_minus; break;
            case TailRule::all_minus: out.tail_ = TailRule::all_plus; break;
            case TailRule::alternating_even: out.tail_phase_ = -tail_phase_; break;
            case TailRule::none: break;
        }
        return out;
    }

    /// Translate everything by shift; alternating tails require an even shift
    /// (odd shifts swap the sublattices and leave the pattern unrepresentable).
    FrozenConstraint shifted(Site shift) const {
        FrozenConstraint out;
        int phase = tail_phase_;
        if (tail_ == TailRule::alternating_even) {
            require(shift % 2 == 0,
                    "FrozenConstraint::shifted: alternating tails need an even shift");
            if (((shift / 2) & 1LL) != 0) phase = -phase;
        }
        if (tail_ != TailRule::none)
            out.set_tail(tail_, Interval{tail_window_.lo + shift, tail_window_.hi + shift},
                         phase);
        for (Site j : free_sites()) out.add_free(j + shift);
        for (const auto& [site, spin] : frozen_) out.freeze(site + shift, spin);
        return out;
    }

private:
    void check_frozen_inside_tail_window() const {
        if (tail_ == TailRule::none) return;
        for (const auto& [site, spin] : frozen_)
            require(tail_window_.contains(site),
                    "FrozenConstraint: explicit frozen spins must lie inside tail_window");
    }

    std::unordered_map<Site, Spin> frozen_;
    std::unordered_set<Site> free_set_;
    mutable std::vector<Site> free_sorted_;
    mutable bool sorted_ = true;
    TailRule tail_ = TailRule::none;
    Interval tail_window_{0, -1};
    int tail_phase_ = +1;
    Site frozen_min_ = 0, frozen_max_ = 0;
};

/// Boundary condition `rule` outside a fully free volume.
inline FrozenConstraint boundary_condition(TailRule rule, Interval volume, int phase = +1) {
    FrozenConstraint c;
    c.set_tail(rule, volume, phase);
    c.add_free_interval(volume);
    return c;
}

}  // namespace dyson
