//
//  captions.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "panobin/manifest.hpp"

namespace panobin {

// Captions distinguish what a viewer of the perspective video could see
// making sound from what is audible but off screen. They follow the schema
// "Visible sound: <...>, Invisible sound: <...>". The captioner itself is a
// pair of large hosted models, so the pipeline only speaks to it through a
// sidecar file or an HTTP endpoint; everything runs offline with sidecars.

/// Split a schema-formatted caption string into (visible, invisible).
/// Returns nullopt if the string does not follow the schema.
std::optional<std::pair<std::string, std::string>>
split_caption_schema(const std::string& caption);

/// The default describe-then-distill instruction sent to an endpoint.
std::string default_caption_prompt();

/// Fill caption fields from a JSON sidecar: an object keyed by clip_id with
/// {"visible": ..., "invisible": ...} values. Entries missing from the
/// sidecar get empty captions and caption_warning = true. A malformed
/// sidecar is a ParseError.
void attach_captions_from_sidecar(std::vector<ClipManifest>& entries,
                                  const std::filesystem::path& sidecar_path);

struct CaptionerClient {
    std::string url;             // http://host:port/path
    std::string prompt_template; // empty = default_caption_prompt()
    std::string api_key;         // sent as a Bearer token when non-empty
    int timeout_seconds = 30;
};

/// Read the captioner API key from the PANOBIN_CAPTIONER_API_KEY
/// environment variable; empty if unset.
std::string captioner_api_key_from_env();

/// POST one request per entry carrying the clip metadata and the rendered
/// prompt; accept {"visible","invisible"} or a schema-formatted "caption"
/// string in the response. Unreachable endpoints and non-conforming bodies
/// set caption_warning on the affected entries and the pipeline continues.
void attach_captions_from_endpoint(std::vector<ClipManifest>& entries,
                                   const CaptionerClient& client);

} // namespace panobin
