//
//  pipeline.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "panobin/binaural.hpp"
#include "panobin/config.hpp"
#include "panobin/foa.hpp"
#include "panobin/frames.hpp"
#include "panobin/image.hpp"
#include "panobin/manifest.hpp"

namespace panobin {

/// Read a 4-channel WAV as first-order ambisonics; channels map
/// positionally to ACN [W, Y, Z, X]. Wrong channel counts and unsupported
/// encodings are FormatErrors.
FoaClip read_foa(const std::filesystem::path& path);

/// Write a 2-channel 32-bit-float WAV. If the joint peak exceeds 1, both
/// channels are scaled by the same single factor, so the inter-channel
/// level difference (the spatial cue) survives; per-channel normalization
/// is deliberately never applied to saved audio.
void write_binaural(const BinauralClip& clip, const std::filesystem::path& path);

/// Copy of one sample window [begin, end).
FoaClip foa_slice(const FoaClip& clip, std::size_t sample_begin, std::size_t sample_end);

// Aligned audio/frame index ranges for one clip.
struct ClipWindow {
    std::size_t sample_begin = 0;
    std::size_t sample_end = 0;
    std::size_t frame_begin = 0;
    std::size_t frame_end = 0;
};

/// Contiguous non-overlapping clip windows of clip_seconds each; the
/// trailing partial window is dropped (an input shorter than one clip
/// yields an empty list, not an error). Audio and frames must cover the
/// same duration within one frame period.
std::vector<ClipWindow> segment_clip(const FoaClip& audio, std::size_t frame_count,
                                     double fps, double clip_seconds);

/// One clip end to end: localize the dominant source, sample a trajectory
/// from the clip's own seed substream, render the perspective frames,
/// rotate the sound field segment-wise (one segment per frame), decode to
/// binaural, score distinctiveness, and apply the filter. Frames and audio
/// are written under out_root only when the clip passes (or under
/// rejected/ with keep_rejected); the manifest entry is returned either
/// way. Any stage failure is rethrown with the clip id attached.
ClipManifest process_clip(const FoaClip& clip, const std::vector<Image>& frames,
                          const Hrir& hrir, const PipelineConfig& config,
                          const std::string& clip_id,
                          const std::filesystem::path& out_root);

struct RunResult {
    std::vector<ClipManifest> entries;
    std::filesystem::path manifest_path;
};

/// Full pipeline over one recording: segment, process clips on a worker
/// pool (clip results are order-independent because every clip draws from
/// its own (seed, clip_id) substream), and write the manifest in clip
/// order. Output bytes are reproducible for a fixed config and seed,
/// whatever the worker count.
RunResult run_pipeline(const PipelineConfig& config, const FoaClip& audio,
                       FrameSource& frames, const std::string& clip_prefix,
                       const std::filesystem::path& out_dir);

} // namespace panobin
