#pragma once

#include <cmath>
#include <algorithm>

#include "dyson/core.hpp"

namespace dyson {

/**
 * Tail sum  sum_{k >= from} (a*k + b)^{-alpha}  for alpha > 1, a > 0.
 *
 * Direct partial summation alone cannot reach small absolute errors when
 * alpha is close to 1, so the remainder past a pivot M is evaluated with the
 * Euler-Maclaurin expansion
 *
 *   sum_{k>=M} f(k) = int_M^inf f + f(M)/2 - f'(M)/12 + f'''(M)/720 - R,
 *
 * whose truncation error is below the first omitted term.  With the pivot
 * chosen so that a*M + b >= 2000 the returned value is accurate to ~1e-14
 * for 1 < alpha <= 6.
 */
inline double power_tail_sum(double alpha, double a, double b, Site from) {
    require(alpha > 1.0, "power_tail_sum: alpha must exceed 1");
    require(a > 0.0, "power_tail_sum: slope must be positive");
    require(a * static_cast<double>(from) + b > 0.0,
            "power_tail_sum: first term must have a positive base");

    const double pivot_base = 2000.0;
    Site pivot = static_cast<Site>(std::ceil((pivot_base - b) / a));
    pivot = std::max(pivot, from);

    long double direct = 0.0L;
    for (Site k = from; k < pivot; ++k)
        direct += std::pow(a * static_cast<double>(k) + b, -alpha);

    const double z = a * static_cast<double>(pivot) + b;
    const double integral = std::pow(z, 1.0 - alpha) / (a * (alpha - 1.0));
    const double f0 = std::pow(z, -alpha);
    const double f1 = -alpha * a * std::pow(z, -alpha - 1.0);
    const double f3 = -alpha * (alpha + 1.0) * (alpha + 2.0) * a * a * a *
                      std::pow(z, -alpha - 3.0);

    return static_cast<double>(direct) + integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0;
}

/// Magnitude of the first Euler-Maclaurin term omitted by power_tail_sum;
/// adding it on top of the returned value gives a guaranteed upper bound.
inline double power_tail_sum_error(double alpha, double a, double b, Site from) {
    const double pivot_base = 2000.0;
    Site pivot = static_cast<Site>(std::ceil((pivot_base - b) / a));
    pivot = std::max(pivot, from);
    const double z = a * static_cast<double>(pivot) + b;
    const double a5 = a * a * a * a * a;
    const double f5 = alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) *
                      (alpha + 4.0) * a5 * std::pow(z, -alpha - 5.0);
    return f5 / 30240.0;
}

/// Closed-form bound  sum_{k > r} k^{-alpha} <= r^{1-alpha}/(alpha-1)
/// (integral comparison); sound for every r >= 1.
inline double power_tail_upper_bound(double alpha, Site r) {
    require(alpha > 1.0, "power_tail_upper_bound: alpha must exceed 1");
    require(r >= 1, "power_tail_upper_bound: r must be positive");
    return std::pow(static_cast<double>(r), 1.0 - alpha) / (alpha - 1.0);
}

}  // namespace dyson
