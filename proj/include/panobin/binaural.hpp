//
//  binaural.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "panobin/foa.hpp"

namespace panobin {

// FOA decode filters arranged as two stereo pairs, one filter per
// ambisonic channel: wy[0] convolves W, wy[1] convolves Y, zx[0] convolves
// Z, zx[1] convolves X. Index 0 of each pair is the first ambisonic
// channel of that pair.
struct Hrir {
    std::array<std::vector<double>, 2> wy;
    std::array<std::vector<double>, 2> zx;
    double sample_rate = 0.0;

    std::size_t length() const { return wy[0].size(); }
};

struct BinauralClip {
    std::vector<double> left;
    std::vector<double> right;
    double sample_rate = 0.0;

    std::size_t size() const { return left.size(); }
};

/// Load the decode filters from two 2-channel audio files. Throws
/// FormatError if either file is not exactly 2 channels, or if the pairs
/// disagree on sample rate or length.
Hrir load_hrir(const std::filesystem::path& wy_path, const std::filesystem::path& zx_path);

/// Binaural decode: full linear convolution of each ambisonic channel with
/// its filter, combined as left = wy0 + wy1 + zx0 + zx1 and
/// right = wy0 - wy1 + zx0 + zx1 (summed left to right in that order),
/// then truncated to the input length so t=0 stays aligned with the video.
/// No group-delay compensation is applied. Sample rates must match; there
/// is no silent resampling.
BinauralClip binauralize(const FoaClip& clip, const Hrir& hrir);

} // namespace panobin
