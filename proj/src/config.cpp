//
//  config.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

using nlohmann::json;

bool is_integral(double v) { return std::abs(v - std::round(v)) < 1e-9; }

} // namespace

std::size_t PipelineConfig::samples_per_clip() const {
    return static_cast<std::size_t>(std::llround(clip_seconds * sample_rate));
}

std::size_t PipelineConfig::frames_per_clip() const {
    return static_cast<std::size_t>(std::llround(clip_seconds * fps));
}

void PipelineConfig::validate() const {
    if (!(clip_seconds > 0.0))
        throw InvalidArgumentError("clip_seconds must be positive");
    if (!(sample_rate > 0.0))
        throw InvalidArgumentError("sample_rate must be positive");
    if (!(fov_deg > 0.0) || fov_deg >= 180.0)
        throw InvalidArgumentError("fov_deg must be in (0, 180)");
    if (view_size <= 0)
        throw InvalidArgumentError("view_size must be positive");
    if (!(fps > 0.0))
        throw InvalidArgumentError("fps must be positive");
    if (!(energy_resolution_deg > 0.0))
        throw InvalidArgumentError("energy_resolution_deg must be positive");
    if (tau < 0.0)
        throw InvalidArgumentError("tau must be >= 0");
    if (!(epsilon > 0.0))
        throw InvalidArgumentError("epsilon must be positive");
    if (workers < 1)
        throw InvalidArgumentError("workers must be >= 1");
    if (!is_integral(clip_seconds * sample_rate))
        throw InvalidArgumentError("clip_seconds * sample_rate must be an integer");
    if (!is_integral(clip_seconds * fps))
        throw InvalidArgumentError("clip_seconds * fps must be an integer");
    if (!decoder_command.empty() && decoder_height <= 0)
        throw InvalidArgumentError("decoder_command requires decoder_height");
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config: " + path.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("config " + path.string() + ": " + ex.what());
    }
    if (!j.is_object())
        throw ParseError("config " + path.string() + ": top level must be an object");

    static const std::set<std::string> known = {
        "clip_seconds", "sample_rate", "fov_deg", "view_size", "fps",
        "energy_resolution_deg", "tau", "epsilon", "seed", "hrir_wy",
        "hrir_zx", "captioner_url", "captioner_prompt", "workers",
        "keep_rejected", "decoder_command", "decoder_height",
    };
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw ParseError("config " + path.string() + ": unknown key '" + key + "'");

    PipelineConfig c;
    try {
        if (j.contains("clip_seconds")) c.clip_seconds = j["clip_seconds"].get<double>();
        if (j.contains("sample_rate")) c.sample_rate = j["sample_rate"].get<double>();
        if (j.contains("fov_deg")) c.fov_deg = j["fov_deg"].get<double>();
        if (j.contains("view_size")) c.view_size = j["view_size"].get<int>();
        if (j.contains("fps")) c.fps = j["fps"].get<double>();
        if (j.contains("energy_resolution_deg"))
            c.energy_resolution_deg = j["energy_resolution_deg"].get<double>();
        if (j.contains("tau")) c.tau = j["tau"].get<double>();
        if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("hrir_wy")) c.hrir_wy_path = j["hrir_wy"].get<std::string>();
        if (j.contains("hrir_zx")) c.hrir_zx_path = j["hrir_zx"].get<std::string>();
        if (j.contains("captioner_url")) c.captioner_url = j["captioner_url"].get<std::string>();
        if (j.contains("captioner_prompt"))
            c.captioner_prompt = j["captioner_prompt"].get<std::string>();
        if (j.contains("workers")) c.workers = j["workers"].get<int>();
        if (j.contains("keep_rejected")) c.keep_rejected = j["keep_rejected"].get<bool>();
        if (j.contains("decoder_command"))
            c.decoder_command = j["decoder_command"].get<std::string>();
        if (j.contains("decoder_height")) c.decoder_height = j["decoder_height"].get<int>();
    } catch (const json::exception& ex) {
        throw ParseError("config " + path.string() + ": " + ex.what());
    }
    return c;
}

} // namespace panobin
