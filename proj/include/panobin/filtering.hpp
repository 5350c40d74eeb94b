//
//  filtering.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <span>
#include <vector>

#include "panobin/binaural.hpp"

namespace panobin {

struct FilterConfig {
    double tau = 0.01;
    double epsilon = 1e-9;
};

/// DC-remove and peak-scale one channel into [-1, 1]:
/// y = (x - mean) / (max|x - mean| + epsilon). Constant input comes out as
/// all zeros thanks to the epsilon guard. This normalization exists for the
/// distinctiveness metric only; audio written to disk uses a single joint
/// scale so inter-channel level differences survive.
std::vector<double> normalize_channel(std::span<const double> x, double epsilon);

/// Spatial distinctiveness: mean absolute difference between the two
/// independently normalized channels. Per-channel gain cancels out, so a
/// pure level offset between otherwise identical channels scores 0.
double channel_difference(const BinauralClip& clip, double epsilon);

/// Strictly D > tau; a clip sitting exactly on the threshold is rejected.
bool passes_filter(double d, const FilterConfig& config);

} // namespace panobin
