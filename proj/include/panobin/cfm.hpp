//
//  cfm.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "panobin/errors.hpp"

// Conditional-flow-matching numerical kernel: the straight-line
// (optimal-transport) interpolation path, its constant velocity target, the
// matching losses, and a reference explicit-Euler integrator. No learning
// machinery lives here; velocity fields are caller-supplied callables so
// the kernel is testable standalone.

namespace panobin::cfm {

using LatentVector = std::vector<double>;

namespace detail {
inline void require_same_dim(const LatentVector& a, const LatentVector& b, const char* what) {
    if (a.size() != b.size())
        throw InvalidArgumentError(std::string(what) + ": dimension mismatch (" +
                                   std::to_string(a.size()) + " vs " +
                                   std::to_string(b.size()) + ")");
}
} // namespace detail

/// x_t = t*x1 + (1-t)*x0 for t in [0, 1].
inline LatentVector interpolate(const LatentVector& x0, const LatentVector& x1, double t) {
    detail::require_same_dim(x0, x1, "interpolate");
    if (!(t >= 0.0) || !(t <= 1.0))
        throw InvalidArgumentError("interpolation time must lie in [0, 1]");
    LatentVector out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i)
        out[i] = t * x1[i] + (1.0 - t) * x0[i];
    return out;
}

/// Velocity along the straight path: u = x1 - x0, independent of t.
inline LatentVector target_velocity(const LatentVector& x0, const LatentVector& x1) {
    detail::require_same_dim(x0, x1, "target_velocity");
    LatentVector out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i)
        out[i] = x1[i] - x0[i];
    return out;
}

/// Squared-norm regression loss against the velocity target.
inline double cfm_loss(const LatentVector& v_pred, const LatentVector& x0, const LatentVector& x1) {
    detail::require_same_dim(x0, x1, "cfm_loss");
    detail::require_same_dim(v_pred, x0, "cfm_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < v_pred.size(); ++i) {
        const double d = v_pred[i] - (x1[i] - x0[i]);
        acc += d * d;
    }
    return acc;
}

/// Two-channel objective: the per-channel losses summed.
inline double dual_cfm_loss(const LatentVector& v_pred_l, const LatentVector& v_pred_r,
                            const LatentVector& x0_l, const LatentVector& x1_l,
                            const LatentVector& x0_r, const LatentVector& x1_r) {
    return cfm_loss(v_pred_l, x0_l, x1_l) + cfm_loss(v_pred_r, x0_r, x1_r);
}

/// Explicit Euler over t in [0, 1] with step 1/steps. The field is any
/// callable (t, x) -> velocity; a wrong-dimension velocity is an error.
template <typename Field>
LatentVector euler_integrate(Field&& field, LatentVector x0, std::size_t steps) {
    if (steps == 0)
        throw InvalidArgumentError("Euler integration needs at least one step");
    const double dt = 1.0 / static_cast<double>(steps);
    LatentVector x = std::move(x0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const LatentVector v = field(t, x);
        detail::require_same_dim(v, x, "euler_integrate velocity");
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += dt * v[i];
    }
    return x;
}

} // namespace panobin::cfm
