//
//  spatialize.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include "panobin/foa.hpp"
#include "panobin/rotation.hpp"
#include "panobin/trajectory.hpp"

namespace panobin {

/// Rotate the sound field: per sample [X', Y', Z']^T = rot * [X, Y, Z]^T,
/// W untouched. Output keeps the ACN layout [W, Y, Z, X].
FoaClip rotate_foa_segment(const FoaClip& segment, const Mat3& rot);

/// Segment-wise rotation tracking the trajectory: the clip is split into
/// `segments` contiguous pieces of floor(N/M) samples (the last absorbs the
/// remainder); segment i is rotated by the camera orientation at its
/// midpoint time, with clip time mapped proportionally onto
/// [0, traj.duration]. Boundaries switch hard, no crossfade.
/// Throws InvalidArgumentError if segments == 0 or segments > sample count.
FoaClip rotate_foa_by_trajectory(const FoaClip& clip,
                                 const CameraTrajectory& traj,
                                 std::size_t segments);

} // namespace panobin
