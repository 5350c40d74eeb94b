//
//  binaural.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/binaural.hpp"

#include "panobin/convolution.hpp"
#include "panobin/errors.hpp"
#include "panobin/wav.hpp"

namespace panobin {

Hrir load_hrir(const std::filesystem::path& wy_path, const std::filesystem::path& zx_path) {
    WavData wy = read_wav(wy_path);
    WavData zx = read_wav(zx_path);
    if (wy.channel_count() != 2)
        throw FormatError("HRIR file must have exactly 2 channels: " + wy_path.string());
    if (zx.channel_count() != 2)
        throw FormatError("HRIR file must have exactly 2 channels: " + zx_path.string());
    if (wy.sample_rate != zx.sample_rate)
        throw FormatError("HRIR pair sample rates differ (" + std::to_string(wy.sample_rate) +
                          " vs " + std::to_string(zx.sample_rate) + ")");
    if (wy.frame_count() != zx.frame_count())
        throw FormatError("HRIR pair lengths differ");
    if (wy.frame_count() == 0)
        throw FormatError("HRIR files are empty");

    Hrir h;
    h.sample_rate = wy.sample_rate;
    h.wy = {std::move(wy.channels[0]), std::move(wy.channels[1])};
    h.zx = {std::move(zx.channels[0]), std::move(zx.channels[1])};
    return h;
}

BinauralClip binauralize(const FoaClip& clip, const Hrir& hrir) {
    clip.validate();
    if (clip.sample_rate != hrir.sample_rate)
        throw InvalidArgumentError("clip sample rate " + std::to_string(clip.sample_rate) +
                                   " does not match HRIR rate " +
                                   std::to_string(hrir.sample_rate) +
                                   " (resample explicitly, not here)");

    const auto wy0 = convolve(clip.w, hrir.wy[0]);
    const auto wy1 = convolve(clip.y, hrir.wy[1]);
    const auto zx0 = convolve(clip.z, hrir.zx[0]);
    const auto zx1 = convolve(clip.x, hrir.zx[1]);

    const std::size_t n = clip.size(); // convolution tail (L-1) dropped
    BinauralClip out;
    out.sample_rate = clip.sample_rate;
    out.left.resize(n);
    out.right.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.left[i] = wy0[i] + wy1[i] + zx0[i] + zx1[i];
        out.right[i] = wy0[i] - wy1[i] + zx0[i] + zx1[i];
    }
    return out;
}

} // namespace panobin
