//
//  manifest.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

using nlohmann::json;

json to_json(const ClipManifest& e) {
    return json{
        {"schema", kManifestSchemaVersion},
        {"clip_id", e.clip_id},
        {"seed", e.seed},
        {"source_direction", {{"azimuth", e.source_direction.azimuth},
                              {"elevation", e.source_direction.elevation}}},
        {"trajectory", {{"initial", {{"yaw", e.trajectory.initial.yaw},
                                     {"pitch", e.trajectory.initial.pitch},
                                     {"roll", e.trajectory.initial.roll}}},
                        {"drift", {{"yaw_rate", e.trajectory.drift.yaw_rate},
                                   {"pitch_rate", e.trajectory.drift.pitch_rate},
                                   {"roll_rate", e.trajectory.drift.roll_rate}}},
                        {"duration", e.trajectory.duration}}},
        {"d", e.d},
        {"passed", e.passed},
        {"caption_visible", e.caption_visible},
        {"caption_invisible", e.caption_invisible},
        {"caption_warning", e.caption_warning},
        {"audio_path", e.audio_path},
        {"frames_path", e.frames_path},
    };
}

ClipManifest from_json(const json& j) {
    if (!j.is_object())
        throw ParseError("manifest record is not an object");
    const int schema = j.at("schema").get<int>();
    if (schema != kManifestSchemaVersion)
        throw ParseError("unsupported manifest schema version " + std::to_string(schema));

    ClipManifest e;
    e.clip_id = j.at("clip_id").get<std::string>();
    e.seed = j.at("seed").get<std::uint64_t>();
    const auto& sd = j.at("source_direction");
    e.source_direction.azimuth = sd.at("azimuth").get<double>();
    e.source_direction.elevation = sd.at("elevation").get<double>();
    const auto& tr = j.at("trajectory");
    const auto& init = tr.at("initial");
    e.trajectory.initial.yaw = init.at("yaw").get<double>();
    e.trajectory.initial.pitch = init.at("pitch").get<double>();
    e.trajectory.initial.roll = init.at("roll").get<double>();
    const auto& drift = tr.at("drift");
    e.trajectory.drift.yaw_rate = drift.at("yaw_rate").get<double>();
    e.trajectory.drift.pitch_rate = drift.at("pitch_rate").get<double>();
    e.trajectory.drift.roll_rate = drift.at("roll_rate").get<double>();
    e.trajectory.duration = tr.at("duration").get<double>();
    e.d = j.at("d").get<double>();
    e.passed = j.at("passed").get<bool>();
    e.caption_visible = j.at("caption_visible").get<std::string>();
    e.caption_invisible = j.at("caption_invisible").get<std::string>();
    e.caption_warning = j.at("caption_warning").get<bool>();
    e.audio_path = j.at("audio_path").get<std::string>();
    e.frames_path = j.at("frames_path").get<std::string>();
    return e;
}

} // namespace

std::string manifest_line(const ClipManifest& entry) {
    // nlohmann::json keeps object keys sorted, so dumps() is canonical and
    // doubles round-trip exactly.
    return to_json(entry).dump();
}

ClipManifest parse_manifest_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bad manifest record: ") + ex.what());
    }
}

void write_manifest(const std::vector<ClipManifest>& entries,
                    const std::filesystem::path& path) {
    std::unordered_set<std::string> seen;
    for (const auto& e : entries)
        if (!seen.insert(e.clip_id).second)
            throw InvalidArgumentError("duplicate clip_id in manifest: " + e.clip_id);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create manifest: " + path.string());
    for (const auto& e : entries)
        out << manifest_line(e) << '\n';
    if (!out)
        throw IoError("failed writing manifest: " + path.string());
}

std::vector<ClipManifest> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open manifest: " + path.string());

    std::vector<ClipManifest> entries;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            entries.push_back(parse_manifest_line(line));
        } catch (const ParseError& ex) {
            throw ParseError("manifest " + path.string() + " line " +
                             std::to_string(line_no) + ": " + ex.what());
        }
        if (!seen.insert(entries.back().clip_id).second)
            throw ParseError("manifest " + path.string() + " line " +
                             std::to_string(line_no) + ": duplicate clip_id '" +
                             entries.back().clip_id + "'");
    }
    return entries;
}

} // namespace panobin
