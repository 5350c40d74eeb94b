//
//  pipeline.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <functional>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "panobin/errors.hpp"
#include "panobin/filtering.hpp"
#include "panobin/reprojection.hpp"
#include "panobin/rng.hpp"
#include "panobin/spatialize.hpp"
#include "panobin/wav.hpp"

namespace panobin {

namespace {

// Fixed-size worker pool with a bounded task queue; submit blocks when the
// queue is full, which is what keeps a streaming decoder from racing ahead
// of the workers. finish() joins and rethrows the first task failure.
class BoundedPool {
public:
    BoundedPool(int workers, std::size_t max_queue) : max_queue_(max_queue) {
        for (int i = 0; i < workers; ++i)
            threads_.emplace_back([this] { worker(); });
    }

    ~BoundedPool() {
        try {
            finish();
        } catch (...) {
        }
    }

    void submit(std::function<void()> task) {
        std::unique_lock lock(mu_);
        cv_space_.wait(lock, [this] { return queue_.size() < max_queue_; });
        queue_.push_back(std::move(task));
        cv_work_.notify_one();
    }

    bool failed() const {
        std::lock_guard lock(mu_);
        return static_cast<bool>(error_);
    }

    void finish() {
        {
            std::lock_guard lock(mu_);
            done_ = true;
        }
        cv_work_.notify_all();
        for (auto& t : threads_)
            if (t.joinable())
                t.join();
        threads_.clear();
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    void worker() {
        while (true) {
            std::function<void()> task;
            {
                std::unique_lock lock(mu_);
                cv_work_.wait(lock, [this] { return done_ || !queue_.empty(); });
                if (queue_.empty())
                    return;
                task = std::move(queue_.front());
                queue_.pop_front();
                cv_space_.notify_one();
                if (error_)
                    continue; // drain without running once something failed
            }
            try {
                task();
            } catch (...) {
                std::lock_guard lock(mu_);
                if (!error_)
                    error_ = std::current_exception();
            }
        }
    }

    mutable std::mutex mu_;
    std::condition_variable cv_work_;
    std::condition_variable cv_space_;
    std::deque<std::function<void()>> queue_;
    std::vector<std::thread> threads_;
    std::size_t max_queue_;
    bool done_ = false;
    std::exception_ptr error_;
};

std::string frame_filename(std::size_t index) {
    std::ostringstream oss;
    oss << std::setw(6) << std::setfill('0') << index << ".png";
    return oss.str();
}

std::string clip_id_for(const std::string& prefix, std::size_t index) {
    std::ostringstream oss;
    oss << prefix << '_' << std::setw(4) << std::setfill('0') << index;
    return oss.str();
}

} // namespace

FoaClip read_foa(const std::filesystem::path& path) {
    WavData wav = read_wav(path);
    if (wav.channel_count() != 4)
        throw FormatError("FOA input must have 4 channels (ACN order W, Y, Z, X), got " +
                          std::to_string(wav.channel_count()) + ": " + path.string());
    FoaClip clip;
    clip.sample_rate = wav.sample_rate;
    clip.w = std::move(wav.channels[0]);
    clip.y = std::move(wav.channels[1]);
    clip.z = std::move(wav.channels[2]);
    clip.x = std::move(wav.channels[3]);
    clip.validate();
    return clip;
}

void write_binaural(const BinauralClip& clip, const std::filesystem::path& path) {
    if (clip.left.empty() || clip.left.size() != clip.right.size())
        throw InvalidArgumentError("binaural clip is empty or has unequal channels");

    double peak = 0.0;
    for (double v : clip.left)
        peak = std::max(peak, std::abs(v));
    for (double v : clip.right)
        peak = std::max(peak, std::abs(v));

    if (peak > 1.0) {
        const double scale = 1.0 / peak;
        std::vector<std::vector<double>> scaled(2);
        scaled[0].reserve(clip.size());
        scaled[1].reserve(clip.size());
        for (double v : clip.left)
            scaled[0].push_back(v * scale);
        for (double v : clip.right)
            scaled[1].push_back(v * scale);
        write_wav_float32(path, scaled, clip.sample_rate);
    } else {
        write_wav_float32(path, {clip.left, clip.right}, clip.sample_rate);
    }
}

FoaClip foa_slice(const FoaClip& clip, std::size_t begin, std::size_t end) {
    if (begin >= end || end > clip.size())
        throw InvalidArgumentError("invalid FOA slice range");
    FoaClip out;
    out.sample_rate = clip.sample_rate;
    out.w.assign(clip.w.begin() + begin, clip.w.begin() + end);
    out.y.assign(clip.y.begin() + begin, clip.y.begin() + end);
    out.z.assign(clip.z.begin() + begin, clip.z.begin() + end);
    out.x.assign(clip.x.begin() + begin, clip.x.begin() + end);
    return out;
}

std::vector<ClipWindow> segment_clip(const FoaClip& audio, std::size_t frame_count,
                                     double fps, double clip_seconds) {
    audio.validate();
    if (!(fps > 0.0) || !(clip_seconds > 0.0))
        throw InvalidArgumentError("fps and clip_seconds must be positive");

    const double spc_f = clip_seconds * audio.sample_rate;
    const double fpc_f = clip_seconds * fps;
    const auto spc = static_cast<std::size_t>(std::llround(spc_f));
    const auto fpc = static_cast<std::size_t>(std::llround(fpc_f));
    if (spc == 0 || std::abs(spc_f - static_cast<double>(spc)) > 1e-9)
        throw InvalidArgumentError("clip_seconds * sample_rate must be a positive integer");
    if (fpc == 0 || std::abs(fpc_f - static_cast<double>(fpc)) > 1e-9)
        throw InvalidArgumentError("clip_seconds * fps must be a positive integer");

    const double audio_seconds = audio.duration();
    const double video_seconds = static_cast<double>(frame_count) / fps;
    if (std::abs(audio_seconds - video_seconds) > 1.0 / fps)
        throw InvalidArgumentError("audio and frames cover different durations (" +
                                   std::to_string(audio_seconds) + " s vs " +
                                   std::to_string(video_seconds) + " s)");

    const std::size_t n_clips = std::min(audio.size() / spc, frame_count / fpc);
    std::vector<ClipWindow> windows(n_clips);
    for (std::size_t k = 0; k < n_clips; ++k)
        windows[k] = {k * spc, (k + 1) * spc, k * fpc, (k + 1) * fpc};
    return windows;
}

ClipManifest process_clip(const FoaClip& clip, const std::vector<Image>& frames,
                          const Hrir& hrir, const PipelineConfig& config,
                          const std::string& clip_id,
                          const std::filesystem::path& out_root) {
    try {
        clip.validate();
        if (frames.empty())
            throw InvalidArgumentError("clip has no frames");

        const EnergyMap emap = energy_map(clip, config.energy_resolution_deg);
        const SourceDirection source = localize(emap);

        SplitRng rng = SplitRng::for_clip(config.seed, clip_id);
        const CameraTrajectory traj = sample_trajectory(source, clip.duration(), rng);

        const std::size_t n_frames = frames.size();
        const FoaClip rotated = rotate_foa_by_trajectory(clip, traj, n_frames);
        const BinauralClip binaural = binauralize(rotated, hrir);
        const double d = channel_difference(binaural, config.epsilon);
        const bool passed = passes_filter(d, {config.tau, config.epsilon});

        ClipManifest entry;
        entry.clip_id = clip_id;
        entry.source_direction = source;
        entry.trajectory = traj;
        entry.d = d;
        entry.passed = passed;
        entry.seed = config.seed;

        const bool write_outputs = passed || config.keep_rejected;
        if (write_outputs) {
            const std::string bucket = passed ? "clips" : "rejected";
            const std::filesystem::path clip_dir = out_root / bucket / clip_id;
            const std::filesystem::path frames_dir = clip_dir / "frames";
            std::filesystem::create_directories(frames_dir);

            // Views are only rendered when they are going to be written.
            for (std::size_t k = 0; k < n_frames; ++k) {
                const double t = static_cast<double>(k) / config.fps;
                const Mat3 rot = camera_rotation(evaluate(traj, t));
                const Image view = render_view(frames[k], rot, config.fov_deg, config.view_size);
                write_png(view, frames_dir / frame_filename(k));
            }
            write_binaural(binaural, clip_dir / "audio.wav");

            entry.audio_path = bucket + "/" + clip_id + "/audio.wav";
            entry.frames_path = bucket + "/" + clip_id + "/frames";
        }
        return entry;
    } catch (const Error& e) {
        throw Error("clip '" + clip_id + "': " + e.what());
    }
}

RunResult run_pipeline(const PipelineConfig& config, const FoaClip& audio,
                       FrameSource& frames, const std::string& clip_prefix,
                       const std::filesystem::path& out_dir) {
    config.validate();
    audio.validate();
    if (clip_prefix.empty())
        throw InvalidArgumentError("clip prefix must not be empty");
    if (std::abs(audio.sample_rate - config.sample_rate) > 1e-9)
        throw InvalidArgumentError("input sample rate " + std::to_string(audio.sample_rate) +
                                   " does not match configured rate " +
                                   std::to_string(config.sample_rate));
    if (config.hrir_wy_path.empty() || config.hrir_zx_path.empty())
        throw InvalidArgumentError("HRIR paths are required to run the pipeline");

    const Hrir hrir = load_hrir(config.hrir_wy_path, config.hrir_zx_path);
    if (std::abs(hrir.sample_rate - config.sample_rate) > 1e-9)
        throw InvalidArgumentError("HRIR sample rate does not match configured rate");

    std::filesystem::create_directories(out_dir);

    RunResult result;
    const std::size_t spc = config.samples_per_clip();
    const std::size_t fpc = config.frames_per_clip();

    if (frames.random_access()) {
        const auto windows =
            segment_clip(audio, frames.count().value(), config.fps, config.clip_seconds);
        result.entries.resize(windows.size());

        BoundedPool pool(config.workers, static_cast<std::size_t>(config.workers) * 2 + 1);
        for (std::size_t i = 0; i < windows.size(); ++i) {
            pool.submit([&, i] {
                const ClipWindow& w = windows[i];
                std::vector<Image> clip_frames;
                clip_frames.reserve(w.frame_end - w.frame_begin);
                for (std::size_t f = w.frame_begin; f < w.frame_end; ++f)
                    clip_frames.push_back(frames.frame(f));
                result.entries[i] =
                    process_clip(foa_slice(audio, w.sample_begin, w.sample_end), clip_frames,
                                 hrir, config, clip_id_for(clip_prefix, i), out_dir);
            });
        }
        pool.finish();
    } else {
        // Sequential decoder stream: batch frames per clip on this thread,
        // hand full batches to the pool. The bounded queue caps how many
        // decoded clips sit in memory. A trailing partial batch (or clips
        // beyond the audio) is dropped, like any other partial window.
        const std::size_t max_clips = audio.size() / spc;
        BoundedPool pool(config.workers, static_cast<std::size_t>(config.workers) + 1);
        std::size_t clip_index = 0;
        std::size_t produced = 0;
        std::mutex entries_mu;
        std::vector<ClipManifest> entries;

        while (clip_index < max_clips && !pool.failed()) {
            std::vector<Image> batch;
            batch.reserve(fpc);
            std::optional<Image> img;
            while (batch.size() < fpc && (img = frames.next()))
                batch.push_back(std::move(*img));
            if (batch.size() < fpc)
                break;

            const std::size_t i = clip_index++;
            ++produced;
            pool.submit([&, i, batch = std::move(batch)]() mutable {
                ClipManifest entry =
                    process_clip(foa_slice(audio, i * spc, (i + 1) * spc), batch, hrir, config,
                                 clip_id_for(clip_prefix, i), out_dir);
                std::lock_guard lock(entries_mu);
                if (entries.size() <= i)
                    entries.resize(i + 1);
                entries[i] = std::move(entry);
            });
        }
        pool.finish();
        entries.resize(produced);
        result.entries = std::move(entries);
    }

    result.manifest_path = out_dir / "manifest.jsonl";
    write_manifest(result.entries, result.manifest_path);
    return result;
}

} // namespace panobin
