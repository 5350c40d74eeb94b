//
//  wav.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <filesystem>
#include <vector>

namespace panobin {

// Uncompressed RIFF/WAVE audio, de-interleaved into per-channel doubles.
struct WavData {
    std::vector<std::vector<double>> channels;
    double sample_rate = 0.0;

    std::size_t frame_count() const { return channels.empty() ? 0 : channels[0].size(); }
    std::size_t channel_count() const { return channels.size(); }
};

/// Read a PCM (16/24-bit) or IEEE-float (32/64-bit) WAV file. Integer
/// samples are scaled to [-1, 1); floats pass through. Anything else is a
/// FormatError; unreadable files are IoError.
WavData read_wav(const std::filesystem::path& path);

/// Write a 32-bit IEEE-float WAV. Samples are written as given (no scaling,
/// no clipping); level management belongs to the caller.
void write_wav_float32(const std::filesystem::path& path,
                       const std::vector<std::vector<double>>& channels,
                       double sample_rate);

} // namespace panobin
