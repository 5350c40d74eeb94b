//
//  frames.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/frames.hpp"

#include <algorithm>

#include "panobin/errors.hpp"

namespace panobin {

Image FrameSource::frame(std::size_t) const {
    throw InvalidArgumentError("frame source does not support random access");
}

ImageDirectorySource::ImageDirectorySource(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("frame directory does not exist: " + dir.string());
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg")
            paths_.push_back(entry.path());
    }
    std::sort(paths_.begin(), paths_.end());
    if (paths_.empty())
        throw IoError("no PNG/JPEG frames in " + dir.string());
}

std::optional<Image> ImageDirectorySource::next() {
    if (cursor_ >= paths_.size())
        return std::nullopt;
    return read_image(paths_[cursor_++]);
}

Image ImageDirectorySource::frame(std::size_t index) const {
    if (index >= paths_.size())
        throw InvalidArgumentError("frame index out of range");
    return read_image(paths_[index]);
}

DecoderStreamSource::DecoderStreamSource(const std::string& command, int height)
    : width_(2 * height), height_(height) {
    if (height <= 0)
        throw InvalidArgumentError("decoder stream height must be positive");
    pipe_ = popen(command.c_str(), "r");
    if (!pipe_)
        throw IoError("cannot start decoder subprocess: " + command);
}

DecoderStreamSource::~DecoderStreamSource() {
    if (pipe_)
        pclose(pipe_);
}

std::optional<Image> DecoderStreamSource::next() {
    if (!pipe_)
        return std::nullopt;
    Image img(width_, height_);
    const std::size_t want = img.rgb.size();
    const std::size_t got = fread(img.rgb.data(), 1, want, pipe_);
    if (got == 0) {
        pclose(pipe_);
        pipe_ = nullptr;
        return std::nullopt;
    }
    if (got != want)
        throw IoError("decoder stream ended mid-frame (got " + std::to_string(got) + " of " +
                      std::to_string(want) + " bytes)");
    return img;
}

std::string render_decoder_command(const std::string& command_template,
                                   const std::filesystem::path& input) {
    // Single-quote for the shell, escaping embedded quotes.
    std::string quoted = "'";
    for (char c : input.string()) {
        if (c == '\'')
            quoted += "'\\''";
        else
            quoted += c;
    }
    quoted += "'";

    std::string out = command_template;
    std::size_t pos = 0;
    while ((pos = out.find("{input}", pos)) != std::string::npos) {
        out.replace(pos, 7, quoted);
        pos += quoted.size();
    }
    return out;
}

} // namespace panobin
