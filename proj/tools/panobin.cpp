//
//  panobin.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "panobin/captions.hpp"
#include "panobin/config.hpp"
#include "panobin/errors.hpp"
#include "panobin/filtering.hpp"
#include "panobin/pipeline.hpp"
#include "panobin/reprojection.hpp"
#include "panobin/rng.hpp"
#include "panobin/spatialize.hpp"
#include "panobin/wav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace panobin;

namespace {

json trajectory_to_json(const CameraTrajectory& t) {
    return json{{"initial", {{"yaw", t.initial.yaw},
                             {"pitch", t.initial.pitch},
                             {"roll", t.initial.roll}}},
                {"drift", {{"yaw_rate", t.drift.yaw_rate},
                           {"pitch_rate", t.drift.pitch_rate},
                           {"roll_rate", t.drift.roll_rate}}},
                {"duration", t.duration}};
}

CameraTrajectory trajectory_from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open trajectory file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("trajectory " + path.string() + ": " + ex.what());
    }
    try {
        CameraTrajectory t;
        t.initial.yaw = j.at("initial").at("yaw").get<double>();
        t.initial.pitch = j.at("initial").at("pitch").get<double>();
        t.initial.roll = j.at("initial").at("roll").get<double>();
        t.drift.yaw_rate = j.at("drift").at("yaw_rate").get<double>();
        t.drift.pitch_rate = j.at("drift").at("pitch_rate").get<double>();
        t.drift.roll_rate = j.at("drift").at("roll_rate").get<double>();
        t.duration = j.at("duration").get<double>();
        return t;
    } catch (const json::exception& ex) {
        throw ParseError("trajectory " + path.string() + ": " + ex.what());
    }
}

std::string frame_name(std::size_t index) {
    std::ostringstream oss;
    oss << std::setw(6) << std::setfill('0') << index << ".png";
    return oss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"panobin: 360 equirect video + first-order ambisonics -> "
                 "perspective video + binaural audio dataset tools"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    // ---- localize ----------------------------------------------------
    auto* cmd_localize = app.add_subcommand("localize", "Dominant sound source direction");
    std::string loc_audio;
    double loc_resolution = 2.0;
    cmd_localize->add_option("--audio", loc_audio, "4-channel FOA WAV")->required();
    cmd_localize->add_option("--resolution", loc_resolution, "grid resolution in degrees");
    cmd_localize->callback([&] {
        const FoaClip clip = read_foa(loc_audio);
        const SourceDirection src = localize(energy_map(clip, loc_resolution));
        std::cout << json{{"azimuth", src.azimuth}, {"elevation", src.elevation}}.dump() << "\n";
    });

    // ---- trajectory ---------------------------------------------------
    auto* cmd_traj = app.add_subcommand("trajectory", "Sample a camera trajectory");
    double traj_azimuth = 0.0, traj_elevation = 0.0, traj_duration = 8.0;
    std::uint64_t traj_seed = 0;
    std::string traj_clip_id = "clip";
    cmd_traj->add_option("--azimuth", traj_azimuth, "source azimuth, radians")->required();
    cmd_traj->add_option("--elevation", traj_elevation, "source elevation, radians")->required();
    cmd_traj->add_option("--duration", traj_duration, "clip duration, seconds");
    cmd_traj->add_option("--seed", traj_seed, "global seed");
    cmd_traj->add_option("--clip-id", traj_clip_id, "clip id for the RNG substream");
    cmd_traj->callback([&] {
        SplitRng rng = SplitRng::for_clip(traj_seed, traj_clip_id);
        const CameraTrajectory t =
            sample_trajectory({traj_azimuth, traj_elevation}, traj_duration, rng);
        std::cout << trajectory_to_json(t).dump() << "\n";
    });

    // ---- render ---------------------------------------------------------
    auto* cmd_render = app.add_subcommand("render", "Render perspective views along a trajectory");
    std::string ren_frames, ren_out, ren_traj;
    double ren_fps = 24.0, ren_fov = 90.0;
    int ren_size = 512;
    cmd_render->add_option("--frames", ren_frames, "directory of equirect PNG frames")->required();
    cmd_render->add_option("--out", ren_out, "output directory")->required();
    cmd_render->add_option("--trajectory", ren_traj, "trajectory JSON file")->required();
    cmd_render->add_option("--fps", ren_fps, "frame rate");
    cmd_render->add_option("--fov", ren_fov, "field of view, degrees");
    cmd_render->add_option("--size", ren_size, "output frame size (square)");
    cmd_render->callback([&] {
        const CameraTrajectory traj = trajectory_from_file(ren_traj);
        ImageDirectorySource source(ren_frames);
        fs::create_directories(ren_out);
        const std::size_t n = source.count().value();
        for (std::size_t k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) / ren_fps;
            const Mat3 rot = camera_rotation(evaluate(traj, t));
            write_png(render_view(source.frame(k), rot, ren_fov, ren_size),
                      fs::path(ren_out) / frame_name(k));
        }
        std::cerr << "rendered " << n << " frames to " << ren_out << "\n";
    });

    // ---- spatialize ----------------------------------------------------
    auto* cmd_spat = app.add_subcommand("spatialize", "Rotate FOA along a trajectory");
    std::string spat_audio, spat_traj, spat_out;
    std::size_t spat_segments = 0;
    double spat_fps = 24.0;
    cmd_spat->add_option("--audio", spat_audio, "4-channel FOA WAV")->required();
    cmd_spat->add_option("--trajectory", spat_traj, "trajectory JSON file")->required();
    cmd_spat->add_option("--out", spat_out, "output 4-channel WAV")->required();
    cmd_spat->add_option("--segments", spat_segments,
                         "segment count (default: frame count at --fps)");
    cmd_spat->add_option("--fps", spat_fps, "frame rate used for the default segment count");
    cmd_spat->callback([&] {
        const FoaClip clip = read_foa(spat_audio);
        const CameraTrajectory traj = trajectory_from_file(spat_traj);
        std::size_t segments = spat_segments;
        if (segments == 0)
            segments = static_cast<std::size_t>(std::llround(clip.duration() * spat_fps));
        const FoaClip rotated = rotate_foa_by_trajectory(clip, traj, segments);
        write_wav_float32(spat_out, {rotated.w, rotated.y, rotated.z, rotated.x},
                          rotated.sample_rate);
    });

    // ---- binauralize ----------------------------------------------------
    auto* cmd_bin = app.add_subcommand("binauralize", "Decode FOA to binaural stereo");
    std::string bin_audio, bin_wy, bin_zx, bin_out;
    cmd_bin->add_option("--audio", bin_audio, "4-channel FOA WAV")->required();
    cmd_bin->add_option("--hrir-wy", bin_wy, "2-channel W/Y HRIR WAV")->required();
    cmd_bin->add_option("--hrir-zx", bin_zx, "2-channel Z/X HRIR WAV")->required();
    cmd_bin->add_option("--out", bin_out, "output 2-channel WAV")->required();
    cmd_bin->callback([&] {
        const FoaClip clip = read_foa(bin_audio);
        const Hrir hrir = load_hrir(bin_wy, bin_zx);
        write_binaural(binauralize(clip, hrir), bin_out);
    });

    // ---- filter ---------------------------------------------------------
    auto* cmd_filter = app.add_subcommand("filter", "Spatial distinctiveness check");
    std::string flt_audio;
    double flt_tau = 0.01, flt_epsilon = 1e-9;
    cmd_filter->add_option("--audio", flt_audio, "2-channel WAV")->required();
    cmd_filter->add_option("--tau", flt_tau, "distinctiveness threshold");
    cmd_filter->add_option("--epsilon", flt_epsilon, "normalization guard");
    bool flt_passed = false;
    cmd_filter->callback([&] {
        WavData wav = read_wav(flt_audio);
        if (wav.channel_count() != 2)
            throw FormatError("filter input must have 2 channels: " + flt_audio);
        BinauralClip clip{std::move(wav.channels[0]), std::move(wav.channels[1]),
                          wav.sample_rate};
        const double d = channel_difference(clip, flt_epsilon);
        flt_passed = passes_filter(d, {flt_tau, flt_epsilon});
        std::cout << json{{"d", d}, {"passed", flt_passed}}.dump() << "\n";
    });

    // ---- captions --------------------------------------------------------
    auto* cmd_captions = app.add_subcommand("captions", "Attach captions to a manifest");
    std::string cap_manifest, cap_sidecar, cap_url, cap_prompt, cap_out;
    cmd_captions->add_option("--manifest", cap_manifest, "manifest JSONL")->required();
    cmd_captions->add_option("--sidecar", cap_sidecar, "caption sidecar JSON");
    cmd_captions->add_option("--url", cap_url, "captioner HTTP endpoint");
    cmd_captions->add_option("--prompt-template", cap_prompt, "endpoint prompt template");
    cmd_captions->add_option("--out", cap_out, "output manifest (default: in place)");
    cmd_captions->callback([&] {
        if (cap_sidecar.empty() == cap_url.empty())
            throw InvalidArgumentError("captions needs exactly one of --sidecar or --url");
        auto entries = read_manifest(cap_manifest);
        if (!cap_sidecar.empty()) {
            attach_captions_from_sidecar(entries, cap_sidecar);
        } else {
            CaptionerClient client;
            client.url = cap_url;
            client.prompt_template = cap_prompt;
            client.api_key = captioner_api_key_from_env();
            attach_captions_from_endpoint(entries, client);
        }
        write_manifest(entries, cap_out.empty() ? cap_manifest : cap_out);
        std::size_t warnings = 0;
        for (const auto& e : entries)
            warnings += e.caption_warning ? 1 : 0;
        if (warnings)
            std::cerr << warnings << " of " << entries.size()
                      << " entries have missing captions\n";
    });

    // ---- run ----------------------------------------------------------
    auto* cmd_run = app.add_subcommand("run", "Full pipeline: segment, process, manifest");
    std::string run_audio, run_frames, run_decoder_input, run_out, run_prefix, run_config;
    std::string run_hrir_wy, run_hrir_zx, run_sidecar;
    std::uint64_t run_seed = 0;
    int run_workers = 1, run_view_size = 512;
    double run_tau = 0.01, run_fps = 24.0, run_clip_seconds = 8.0;
    double run_sample_rate = 44100.0, run_fov = 90.0, run_resolution = 2.0;
    double run_epsilon = 1e-9;
    bool run_keep_rejected = false;
    cmd_run->add_option("--audio", run_audio, "4-channel FOA WAV")->required();
    cmd_run->add_option("--frames", run_frames,
                        "directory of equirect PNG/JPEG frames");
    cmd_run->add_option("--decoder-input", run_decoder_input,
                        "video file passed to the configured decoder_command");
    cmd_run->add_option("--out", run_out, "output directory")->required();
    cmd_run->add_option("--prefix", run_prefix, "clip id prefix (default: audio stem)");
    cmd_run->add_option("--config", run_config, "JSON config file");
    cmd_run->add_option("--seed", run_seed, "global seed");
    cmd_run->add_option("--workers", run_workers, "worker count");
    cmd_run->add_option("--tau", run_tau, "distinctiveness threshold");
    cmd_run->add_option("--epsilon", run_epsilon, "normalization guard");
    cmd_run->add_option("--fps", run_fps, "rendered frame rate");
    cmd_run->add_option("--clip-seconds", run_clip_seconds, "clip length, seconds");
    cmd_run->add_option("--sample-rate", run_sample_rate, "audio sample rate, Hz");
    cmd_run->add_option("--fov", run_fov, "field of view, degrees");
    cmd_run->add_option("--view-size", run_view_size, "output frame size (square)");
    cmd_run->add_option("--resolution", run_resolution,
                        "localization grid resolution, degrees");
    cmd_run->add_option("--hrir-wy", run_hrir_wy, "2-channel W/Y HRIR WAV");
    cmd_run->add_option("--hrir-zx", run_hrir_zx, "2-channel Z/X HRIR WAV");
    cmd_run->add_option("--sidecar", run_sidecar, "caption sidecar JSON");
    cmd_run->add_flag("--keep-rejected", run_keep_rejected,
                      "write rejected clips under rejected/ for auditing");
    cmd_run->callback([&] {
        PipelineConfig config;
        if (!run_config.empty())
            config = load_config(run_config);
        if (cmd_run->count("--seed")) config.seed = run_seed;
        if (cmd_run->count("--workers")) config.workers = run_workers;
        if (cmd_run->count("--tau")) config.tau = run_tau;
        if (cmd_run->count("--epsilon")) config.epsilon = run_epsilon;
        if (cmd_run->count("--fps")) config.fps = run_fps;
        if (cmd_run->count("--clip-seconds")) config.clip_seconds = run_clip_seconds;
        if (cmd_run->count("--sample-rate")) config.sample_rate = run_sample_rate;
        if (cmd_run->count("--fov")) config.fov_deg = run_fov;
        if (cmd_run->count("--view-size")) config.view_size = run_view_size;
        if (cmd_run->count("--resolution")) config.energy_resolution_deg = run_resolution;
        if (cmd_run->count("--hrir-wy")) config.hrir_wy_path = run_hrir_wy;
        if (cmd_run->count("--hrir-zx")) config.hrir_zx_path = run_hrir_zx;
        if (run_keep_rejected) config.keep_rejected = true;

        if (run_frames.empty() == run_decoder_input.empty())
            throw InvalidArgumentError("run needs exactly one of --frames or --decoder-input");

        const FoaClip audio = read_foa(run_audio);
        std::unique_ptr<FrameSource> source;
        if (!run_frames.empty()) {
            source = std::make_unique<ImageDirectorySource>(run_frames);
        } else {
            if (config.decoder_command.empty())
                throw InvalidArgumentError("--decoder-input requires decoder_command in config");
            source = std::make_unique<DecoderStreamSource>(
                render_decoder_command(config.decoder_command, run_decoder_input),
                config.decoder_height);
        }

        const std::string prefix =
            run_prefix.empty() ? fs::path(run_audio).stem().string() : run_prefix;
        RunResult result = run_pipeline(config, audio, *source, prefix, run_out);

        if (!run_sidecar.empty()) {
            attach_captions_from_sidecar(result.entries, run_sidecar);
            write_manifest(result.entries, result.manifest_path);
        } else if (!config.captioner_url.empty()) {
            CaptionerClient client;
            client.url = config.captioner_url;
            client.prompt_template = config.captioner_prompt;
            client.api_key = captioner_api_key_from_env();
            attach_captions_from_endpoint(result.entries, client);
            write_manifest(result.entries, result.manifest_path);
        }

        std::size_t kept = 0;
        for (const auto& e : result.entries)
            kept += e.passed ? 1 : 0;
        std::cerr << "processed " << result.entries.size() << " clips, kept " << kept
                  << ", manifest: " << result.manifest_path.string() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // The filter subcommand doubles as a scriptable predicate.
    if (cmd_filter->parsed())
        return flt_passed ? 0 : 2;
    return 0;
}
