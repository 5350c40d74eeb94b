//
//  manifest.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "panobin/foa.hpp"
#include "panobin/trajectory.hpp"

namespace panobin {

// One line of the dataset manifest: provenance, trajectory parameters
// (radians, full precision), the distinctiveness statistic and the filter
// verdict, captions if attached, and where the rendered artifacts live
// (paths relative to the manifest's directory; empty if nothing was
// written). Serialized as JSON lines with a schema version field.
struct ClipManifest {
    std::string clip_id;
    SourceDirection source_direction;
    CameraTrajectory trajectory;
    double d = 0.0;
    bool passed = false;
    std::string caption_visible;
    std::string caption_invisible;
    bool caption_warning = false;
    std::string audio_path;
    std::string frames_path;
    std::uint64_t seed = 0;
};

inline constexpr int kManifestSchemaVersion = 1;

/// One JSON object per line, UTF-8, keys in a fixed (alphabetical) order so
/// equal entries serialize to equal bytes. Duplicate clip_ids are an error.
void write_manifest(const std::vector<ClipManifest>& entries,
                    const std::filesystem::path& path);

/// Inverse of write_manifest; read(write(x)) == x. A malformed line raises
/// ParseError naming the 1-based line number.
std::vector<ClipManifest> read_manifest(const std::filesystem::path& path);

/// Single-entry codecs, exposed for tests and tools.
std::string manifest_line(const ClipManifest& entry);
ClipManifest parse_manifest_line(const std::string& line);

} // namespace panobin
