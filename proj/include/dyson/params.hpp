#pragma once

#include "dyson/core.hpp"

namespace dyson {

/**
 * Physical model definition of the long-range Ising chain: pair couplings
 * J(r) = r^{-alpha} for r >= 1, inverse temperature beta, and a homogeneous
 * external field h.  Hamiltonians built from these are beta-free; beta enters
 * only through the Gibbs weights.
 */
struct ModelParams {
    double alpha;
    double beta;
    double h = 0.0;

    ModelParams(double alpha_, double beta_, double h_ = 0.0)
        : alpha(alpha_), beta(beta_), h(h_) {
        require(alpha > 1.0,
                "ModelParams: alpha must exceed 1 (sum of r^-alpha diverges otherwise)");
        require(beta >= 0.0, "ModelParams: beta must be nonnegative");
    }

    /// Slow-decay regime where the zero-field chain has a low-temperature
    /// phase transition.
    bool slow_decay_regime() const { return alpha <= 2.0; }
};

}  // namespace dyson
