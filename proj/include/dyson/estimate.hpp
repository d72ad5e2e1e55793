#pragma once

#include <cmath>
#include <vector>

#include "dyson/core.hpp"

namespace dyson {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;
    double autocorr_hint = 1.0;  // batch variance inflation vs iid, ~2*tau_int
};

/**
 * Batch-means summary of a correlated sample stream.  The stream is cut into
 * up to 20 equal batches; the standard error comes from the scatter of batch
 * means, which absorbs autocorrelation without estimating it explicitly.
 */
inline Estimate summarize(const std::vector<double>& samples) {
    require(!samples.empty(), "summarize: no samples");
    const long long n = static_cast<long long>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);

    Estimate est{mean, 0.0, n, 1.0};
    if (n < 2) return est;

    const long long batches = std::min<long long>(20, n);
    const long long batch_len = n / batches;
    const long long used = batches * batch_len;

    double used_mean = 0.0;
    for (long long k = 0; k < used; ++k) used_mean += samples[static_cast<size_t>(k)];
    used_mean /= static_cast<double>(used);

    double batch_var = 0.0;
    for (long long b = 0; b < batches; ++b) {
        double bm = 0.0;
        for (long long k = b * batch_len; k < (b + 1) * batch_len; ++k)
            bm += samples[static_cast<size_t>(k)];
        bm /= static_cast<double>(batch_len);
        batch_var += (bm - used_mean) * (bm - used_mean);
    }
    batch_var /= static_cast<double>(batches - 1);
    est.std_error = std::sqrt(batch_var / static_cast<double>(batches));

    double naive_var = 0.0;
    for (long long k = 0; k < used; ++k) {
        const double d = samples[static_cast<size_t>(k)] - used_mean;
        naive_var += d * d;
    }
    naive_var /= static_cast<double>(used - 1);
    if (naive_var > 0.0)
        est.autocorr_hint = batch_var * static_cast<double>(batch_len) / naive_var;
    return est;
}

/// Difference a - b of two independent estimates with combined error.
inline Estimate difference(const Estimate& a, const Estimate& b) {
    return {a.mean - b.mean, std::hypot(a.std_error, b.std_error),
            std::min(a.n_samples, b.n_samples), std::max(a.autocorr_hint, b.autocorr_hint)};
}

}  // namespace dyson
