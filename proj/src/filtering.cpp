//
//  filtering.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/filtering.hpp"

#include <cmath>

#include "panobin/errors.hpp"

namespace panobin {

std::vector<double> normalize_channel(std::span<const double> x, double epsilon) {
    if (x.empty())
        throw InvalidArgumentError("cannot normalize an empty channel");

    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());

    double peak = 0.0;
    for (double v : x)
        peak = std::max(peak, std::abs(v - mean));

    std::vector<double> out(x.size());
    const double scale = 1.0 / (peak + epsilon);
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (x[i] - mean) * scale;
    return out;
}

double channel_difference(const BinauralClip& clip, double epsilon) {
    if (clip.left.empty() || clip.left.size() != clip.right.size())
        throw InvalidArgumentError("binaural clip is empty or has unequal channels");

    const auto l = normalize_channel(clip.left, epsilon);
    const auto r = normalize_channel(clip.right, epsilon);
    double acc = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i)
        acc += std::abs(l[i] - r[i]);
    return acc / static_cast<double>(l.size());
}

bool passes_filter(double d, const FilterConfig& config) {
    return d > config.tau;
}

} // namespace panobin
