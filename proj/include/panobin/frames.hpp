//
//  frames.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "panobin/image.hpp"

namespace panobin {

// Where equirect frames come from. Directory sources are random access, so
// clip workers can fetch their own frames in parallel; a decoder subprocess
// is strictly sequential and the orchestrator batches it on one thread.
class FrameSource {
public:
    virtual ~FrameSource() = default;

    virtual bool random_access() const = 0;

    // Total frame count when known up front (directories), nullopt for
    // streams, which only reveal their length by ending.
    virtual std::optional<std::size_t> count() const = 0;

    // Sequential access; nullopt at end of stream.
    virtual std::optional<Image> next() = 0;

    // Random access; only valid when random_access() is true. Must be safe
    // to call from several threads with distinct indices.
    virtual Image frame(std::size_t index) const;
};

// Numbered image sequence (PNG or JPEG) in a directory, ordered by
// filename.
class ImageDirectorySource final : public FrameSource {
public:
    explicit ImageDirectorySource(const std::filesystem::path& dir);

    bool random_access() const override { return true; }
    std::optional<std::size_t> count() const override { return paths_.size(); }
    std::optional<Image> next() override;
    Image frame(std::size_t index) const override;

private:
    std::vector<std::filesystem::path> paths_;
    std::size_t cursor_ = 0;
};

// Raw RGB24 frames streamed from an external decoder subprocess (the tool
// itself never touches video containers). The command's stdout must carry
// exactly height * 2*height * 3 bytes per frame.
class DecoderStreamSource final : public FrameSource {
public:
    DecoderStreamSource(const std::string& command, int height);
    ~DecoderStreamSource() override;

    DecoderStreamSource(const DecoderStreamSource&) = delete;
    DecoderStreamSource& operator=(const DecoderStreamSource&) = delete;

    bool random_access() const override { return false; }
    std::optional<std::size_t> count() const override { return std::nullopt; }
    std::optional<Image> next() override;

private:
    FILE* pipe_ = nullptr;
    int width_ = 0;
    int height_ = 0;
};

/// Render the configured decoder command: every {input} placeholder is
/// replaced with the (shell-quoted) input path.
std::string render_decoder_command(const std::string& command_template,
                                   const std::filesystem::path& input);

} // namespace panobin
