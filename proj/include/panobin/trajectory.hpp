//
//  trajectory.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <numbers>

#include "panobin/foa.hpp"
#include "panobin/rng.hpp"
#include "panobin/rotation.hpp"

namespace panobin {

// Angular drift rates in radians per second. A third of the clips get a
// frozen axis: each rate is drawn uniformly within its bound and then
// independently zeroed with probability 1/3.
struct DriftRates {
    double yaw_rate = 0.0;
    double pitch_rate = 0.0;
    double roll_rate = 0.0;
};

inline constexpr double kMaxYawRate = std::numbers::pi / 18.0;
inline constexpr double kMaxPitchRate = std::numbers::pi / 90.0;
inline constexpr double kMaxRollRate = std::numbers::pi / 180.0;

// Piecewise-linear camera rotation path: angle(t) = initial + rate * t for
// t in [0, duration]. Yaw is deliberately not wrapped into [-pi, pi] here;
// consumers wrap so that evaluate stays linear and testable.
struct CameraTrajectory {
    EulerAngles initial;
    DriftRates drift;
    double duration = 0.0; // seconds
};

/// Draw drift rates. Per axis the value is drawn first, then the zeroing
/// indicator; axes in yaw, pitch, roll order (the draw order is part of
/// the determinism contract).
DriftRates sample_drift(SplitRng& rng);

/// Initial orientation anchored near the source. Yaw = source azimuth plus
/// an offset chosen against the drift direction (so a fast drift starts on
/// the side it will traverse); pitch is drawn between 0 and the source
/// elevation and clipped to +-pi/6; roll is always 0.
EulerAngles sample_initial_orientation(const SourceDirection& source,
                                       const DriftRates& drift,
                                       double duration,
                                       SplitRng& rng);

/// sample_drift followed by sample_initial_orientation.
CameraTrajectory sample_trajectory(const SourceDirection& source,
                                   double duration,
                                   SplitRng& rng);

/// Orientation at time t. Throws InvalidArgumentError outside [0, duration].
EulerAngles evaluate(const CameraTrajectory& traj, double t);

} // namespace panobin
