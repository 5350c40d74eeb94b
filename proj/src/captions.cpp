//
//  captions.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/captions.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

using nlohmann::json;

constexpr const char* kVisiblePrefix = "Visible sound:";
constexpr const char* kInvisibleMarker = "Invisible sound:";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

// "http://host:port/path" -> (base, path). Only plain http; the vendored
// client is built without TLS.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0)
        throw InvalidArgumentError("captioner endpoint must be an http:// URL: " + url);
    const auto path_pos = url.find('/', scheme.size());
    if (path_pos == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_pos), url.substr(path_pos)};
}

// Accept {"visible","invisible"} fields or a schema-formatted "caption".
std::optional<std::pair<std::string, std::string>> parse_caption_body(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception&) {
        return std::nullopt;
    }
    if (!j.is_object())
        return std::nullopt;
    if (j.contains("visible") && j.contains("invisible") && j["visible"].is_string() &&
        j["invisible"].is_string())
        return std::make_pair(j["visible"].get<std::string>(), j["invisible"].get<std::string>());
    if (j.contains("caption") && j["caption"].is_string())
        return split_caption_schema(j["caption"].get<std::string>());
    return std::nullopt;
}

} // namespace

std::optional<std::pair<std::string, std::string>>
split_caption_schema(const std::string& caption) {
    const std::string s = trim(caption);
    if (s.rfind(kVisiblePrefix, 0) != 0)
        return std::nullopt;
    const auto marker = s.find(kInvisibleMarker, std::strlen(kVisiblePrefix));
    if (marker == std::string::npos)
        return std::nullopt;

    std::string visible = trim(s.substr(std::strlen(kVisiblePrefix),
                                        marker - std::strlen(kVisiblePrefix)));
    if (!visible.empty() && visible.back() == ',')
        visible = trim(visible.substr(0, visible.size() - 1));
    const std::string invisible = trim(s.substr(marker + std::strlen(kInvisibleMarker)));
    return std::make_pair(visible, invisible);
}

std::string default_caption_prompt() {
    return "First describe every sound in the clip in detail, including off-screen "
           "sources and ambient noise. Then distill the description into one line of "
           "the exact form 'Visible sound: <sounds whose source appears in the video>, "
           "Invisible sound: <audible sounds whose source is not visible>'.";
}

void attach_captions_from_sidecar(std::vector<ClipManifest>& entries,
                                  const std::filesystem::path& sidecar_path) {
    std::ifstream in(sidecar_path);
    if (!in)
        throw IoError("cannot open caption sidecar: " + sidecar_path.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("sidecar " + sidecar_path.string() + ": " + ex.what());
    }
    if (!j.is_object())
        throw ParseError("sidecar " + sidecar_path.string() + ": top level must be an object");

    for (auto& e : entries) {
        const auto it = j.find(e.clip_id);
        if (it == j.end()) {
            e.caption_visible.clear();
            e.caption_invisible.clear();
            e.caption_warning = true;
            continue;
        }
        if (!it->is_object() || !it->contains("visible") || !it->contains("invisible") ||
            !(*it)["visible"].is_string() || !(*it)["invisible"].is_string())
            throw ParseError("sidecar " + sidecar_path.string() + ": entry '" + e.clip_id +
                             "' must be {\"visible\": str, \"invisible\": str}");
        e.caption_visible = (*it)["visible"].get<std::string>();
        e.caption_invisible = (*it)["invisible"].get<std::string>();
        e.caption_warning = false;
    }
}

std::string captioner_api_key_from_env() {
    const char* key = std::getenv("PANOBIN_CAPTIONER_API_KEY");
    return key ? key : std::string{};
}

void attach_captions_from_endpoint(std::vector<ClipManifest>& entries,
                                   const CaptionerClient& client) {
    const auto [base, path] = split_url(client.url);
    httplib::Client http(base);
    http.set_connection_timeout(client.timeout_seconds);
    http.set_read_timeout(client.timeout_seconds);
    if (!client.api_key.empty())
        http.set_default_headers({{"Authorization", "Bearer " + client.api_key}});

    const std::string prompt_template =
        client.prompt_template.empty() ? default_caption_prompt() : client.prompt_template;

    for (auto& e : entries) {
        const json request = {
            {"clip_id", e.clip_id},
            {"source_direction", {{"azimuth", e.source_direction.azimuth},
                                  {"elevation", e.source_direction.elevation}}},
            {"duration", e.trajectory.duration},
            {"d", e.d},
            {"prompt", replace_all(prompt_template, "{clip_id}", e.clip_id)},
        };
        auto res = http.Post(path, request.dump(), "application/json");
        std::optional<std::pair<std::string, std::string>> caption;
        if (res && res->status == 200)
            caption = parse_caption_body(res->body);
        if (caption) {
            e.caption_visible = caption->first;
            e.caption_invisible = caption->second;
            e.caption_warning = false;
        } else {
            e.caption_visible.clear();
            e.caption_invisible.clear();
            e.caption_warning = true;
        }
    }
}

} // namespace panobin
