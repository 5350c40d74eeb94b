//
//  trajectory.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/trajectory.hpp"

#include <algorithm>

#include "panobin/errors.hpp"

namespace panobin {

namespace {
constexpr double kPi = std::numbers::pi;

double draw_rate(SplitRng& rng, double max_rate) {
    const double value = rng.uniform(-max_rate, max_rate);
    const double xi = rng.uniform01();
    return xi > 1.0 / 3.0 ? value : 0.0;
}
} // namespace

DriftRates sample_drift(SplitRng& rng) {
    DriftRates d;
    d.yaw_rate = draw_rate(rng, kMaxYawRate);
    d.pitch_rate = draw_rate(rng, kMaxPitchRate);
    d.roll_rate = draw_rate(rng, kMaxRollRate);
    return d;
}

EulerAngles sample_initial_orientation(const SourceDirection& source,
                                       const DriftRates& drift,
                                       double duration,
                                       SplitRng& rng) {
    if (!(duration > 0.0))
        throw InvalidArgumentError("trajectory duration must be positive");

    const double total_yaw_drift = drift.yaw_rate * duration;
    double yaw_offset;
    if (total_yaw_drift > kPi / 6.0)
        yaw_offset = rng.uniform(-kPi / 4.0, 0.0);
    else if (total_yaw_drift < -kPi / 6.0)
        yaw_offset = rng.uniform(0.0, kPi / 4.0);
    else
        yaw_offset = rng.uniform(-kPi / 6.0, kPi / 6.0);

    // Pitch is drawn between the horizon and the source elevation, then
    // clipped; a source on the horizon degenerates to exactly 0.
    const double el = source.elevation;
    const double pitch_raw = el > 0.0 ? rng.uniform(0.0, el) : rng.uniform(el, 0.0);

    EulerAngles e;
    e.yaw = source.azimuth + yaw_offset;
    e.pitch = std::clamp(pitch_raw, -kPi / 6.0, kPi / 6.0);
    e.roll = 0.0;
    return e;
}

CameraTrajectory sample_trajectory(const SourceDirection& source,
                                   double duration,
                                   SplitRng& rng) {
    CameraTrajectory traj;
    traj.duration = duration;
    traj.drift = sample_drift(rng);
    traj.initial = sample_initial_orientation(source, traj.drift, duration, rng);
    return traj;
}

EulerAngles evaluate(const CameraTrajectory& traj, double t) {
    if (!(t >= 0.0) || !(t <= traj.duration))
        throw InvalidArgumentError("trajectory evaluated outside [0, duration]");
    return {traj.initial.yaw + traj.drift.yaw_rate * t,
            traj.initial.pitch + traj.drift.pitch_rate * t,
            traj.initial.roll + traj.drift.roll_rate * t};
}

} // namespace panobin
