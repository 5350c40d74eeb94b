//
//  spatialize.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/spatialize.hpp"

#include "panobin/errors.hpp"

namespace panobin {

namespace {

void rotate_range(FoaClip& clip, std::size_t begin, std::size_t end, const Mat3& r) {
    for (std::size_t i = begin; i < end; ++i) {
        const double x = clip.x[i];
        const double y = clip.y[i];
        const double z = clip.z[i];
        clip.x[i] = r.m[0][0] * x + r.m[0][1] * y + r.m[0][2] * z;
        clip.y[i] = r.m[1][0] * x + r.m[1][1] * y + r.m[1][2] * z;
        clip.z[i] = r.m[2][0] * x + r.m[2][1] * y + r.m[2][2] * z;
    }
}

} // namespace

FoaClip rotate_foa_segment(const FoaClip& segment, const Mat3& rot) {
    segment.validate();
    FoaClip out = segment;
    rotate_range(out, 0, out.size(), rot);
    return out;
}

FoaClip rotate_foa_by_trajectory(const FoaClip& clip,
                                 const CameraTrajectory& traj,
                                 std::size_t segments) {
    clip.validate();
    const std::size_t n = clip.size();
    if (segments == 0 || segments > n)
        throw InvalidArgumentError("segment count must be in [1, sample count]");

    FoaClip out = clip;
    const std::size_t base = n / segments;
    for (std::size_t i = 0; i < segments; ++i) {
        const std::size_t begin = i * base;
        const std::size_t end = (i + 1 == segments) ? n : begin + base;
        // Midpoint of the segment, as a fraction of the clip mapped onto
        // the trajectory's own duration.
        const double mid = (static_cast<double>(begin) + 0.5 * static_cast<double>(end - begin)) /
                           static_cast<double>(n);
        const Mat3 rot = camera_rotation(evaluate(traj, mid * traj.duration));
        rotate_range(out, begin, end, rot);
    }
    return out;
}

} // namespace panobin
