//
//  config.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace panobin {

// Everything the pipeline needs, with dataset defaults: 8 s clips at
// 44.1 kHz, FOV-90 views at 512x512, 24 fps, a 2 degree localization grid
// and the tau = 0.01 distinctiveness threshold.
struct PipelineConfig {
    double clip_seconds = 8.0;
    double sample_rate = 44100.0;
    double fov_deg = 90.0;
    int view_size = 512;
    double fps = 24.0;
    double energy_resolution_deg = 2.0;
    double tau = 0.01;
    double epsilon = 1e-9;
    std::uint64_t seed = 0;
    std::string hrir_wy_path;
    std::string hrir_zx_path;
    std::string captioner_url;    // empty = captioning disabled
    std::string captioner_prompt; // empty = built-in template
    int workers = 1;
    bool keep_rejected = false;
    // External container decoder: a shell command with an {input}
    // placeholder that writes raw RGB24 frames of decoder_height x
    // 2*decoder_height to stdout. Empty = read numbered PNGs instead.
    std::string decoder_command;
    int decoder_height = 0;

    std::size_t samples_per_clip() const;
    std::size_t frames_per_clip() const;

    // Positivity, integral samples/frames per clip, workers >= 1.
    void validate() const;
};

/// Load a JSON config file; keys mirror the struct fields and all are
/// optional. Unknown keys are a ParseError so typos do not silently
/// misconfigure a long run.
PipelineConfig load_config(const std::filesystem::path& path);

} // namespace panobin
