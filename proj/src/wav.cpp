//
//  wav.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/wav.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::uint8_t* p, std::uint16_t v) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}

void put_u32(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
    p[2] = static_cast<std::uint8_t>(v >> 16);
    p[3] = static_cast<std::uint8_t>(v >> 24);
}

struct FmtChunk {
    std::uint16_t format_tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
};

} // namespace

WavData read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open WAV file: " + path.string());
    in.seekg(0, std::ios::end);
    const auto file_size = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0);

    std::uint8_t header[12];
    if (!in.read(reinterpret_cast<char*>(header), 12))
        throw FormatError("not a RIFF/WAVE file (truncated header): " + path.string());
    if (std::memcmp(header, "RIFF", 4) != 0 || std::memcmp(header + 8, "WAVE", 4) != 0)
        throw FormatError("not a RIFF/WAVE file: " + path.string());

    FmtChunk fmt;
    bool have_fmt = false;
    std::vector<std::uint8_t> data;
    bool have_data = false;

    std::uint8_t chunk_header[8];
    while (in.read(reinterpret_cast<char*>(chunk_header), 8)) {
        const std::uint32_t chunk_size = read_u32(chunk_header + 4);
        if (chunk_size > file_size)
            throw FormatError("chunk size exceeds file size: " + path.string());
        if (std::memcmp(chunk_header, "fmt ", 4) == 0) {
            std::vector<std::uint8_t> body(chunk_size);
            if (chunk_size < 16 || !in.read(reinterpret_cast<char*>(body.data()), chunk_size))
                throw FormatError("malformed fmt chunk: " + path.string());
            fmt.format_tag = read_u16(body.data());
            fmt.channels = read_u16(body.data() + 2);
            fmt.sample_rate = read_u32(body.data() + 4);
            fmt.bits_per_sample = read_u16(body.data() + 14);
            if (fmt.format_tag == kFormatExtensible) {
                // cbSize(2) + validBits(2) + channelMask(4) + subformat GUID;
                // the first two GUID bytes carry the real format tag.
                if (chunk_size < 26)
                    throw FormatError("malformed extensible fmt chunk: " + path.string());
                fmt.format_tag = read_u16(body.data() + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(chunk_header, "data", 4) == 0) {
            data.resize(chunk_size);
            if (!in.read(reinterpret_cast<char*>(data.data()), chunk_size))
                throw FormatError("truncated data chunk: " + path.string());
            have_data = true;
        } else {
            in.seekg(chunk_size, std::ios::cur);
        }
        if (chunk_size % 2 == 1)
            in.seekg(1, std::ios::cur); // chunks are word aligned
    }

    if (!have_fmt || !have_data)
        throw FormatError("missing fmt or data chunk: " + path.string());
    if (fmt.channels == 0 || fmt.sample_rate == 0)
        throw FormatError("invalid channel count or sample rate: " + path.string());

    const bool is_float = fmt.format_tag == kFormatIeeeFloat;
    const bool is_pcm = fmt.format_tag == kFormatPcm;
    if (!is_float && !is_pcm)
        throw FormatError("unsupported WAV encoding (format tag " +
                          std::to_string(fmt.format_tag) + "): " + path.string());
    const unsigned bytes_per_sample = fmt.bits_per_sample / 8u;
    if (is_pcm && fmt.bits_per_sample != 16 && fmt.bits_per_sample != 24)
        throw FormatError("unsupported PCM depth " + std::to_string(fmt.bits_per_sample) +
                          " (need 16 or 24): " + path.string());
    if (is_float && fmt.bits_per_sample != 32 && fmt.bits_per_sample != 64)
        throw FormatError("unsupported float depth " + std::to_string(fmt.bits_per_sample) +
                          ": " + path.string());

    const std::size_t frame_bytes = static_cast<std::size_t>(bytes_per_sample) * fmt.channels;
    const std::size_t frames = data.size() / frame_bytes;

    WavData out;
    out.sample_rate = fmt.sample_rate;
    out.channels.assign(fmt.channels, std::vector<double>(frames));

    const std::uint8_t* p = data.data();
    for (std::size_t f = 0; f < frames; ++f) {
        for (unsigned c = 0; c < fmt.channels; ++c, p += bytes_per_sample) {
            double v = 0.0;
            if (is_float && bytes_per_sample == 4) {
                float x;
                std::memcpy(&x, p, 4);
                v = x;
            } else if (is_float) {
                double x;
                std::memcpy(&x, p, 8);
                v = x;
            } else if (bytes_per_sample == 2) {
                const auto s = static_cast<std::int16_t>(read_u16(p));
                v = s / 32768.0;
            } else { // 24-bit
                std::int32_t s = (static_cast<std::int32_t>(p[0]) << 8) |
                                 (static_cast<std::int32_t>(p[1]) << 16) |
                                 (static_cast<std::int32_t>(p[2]) << 24);
                v = (s >> 8) / 8388608.0;
            }
            out.channels[c][f] = v;
        }
    }
    return out;
}

void write_wav_float32(const std::filesystem::path& path,
                       const std::vector<std::vector<double>>& channels,
                       double sample_rate) {
    if (channels.empty() || channels[0].empty())
        throw InvalidArgumentError("refusing to write WAV with no samples");
    const std::size_t frames = channels[0].size();
    for (const auto& ch : channels)
        if (ch.size() != frames)
            throw InvalidArgumentError("WAV channels have unequal lengths");
    if (!(sample_rate > 0.0))
        throw InvalidArgumentError("WAV sample rate must be positive");

    const auto n_channels = static_cast<std::uint16_t>(channels.size());
    const auto rate = static_cast<std::uint32_t>(std::llround(sample_rate));
    const std::uint32_t block_align = n_channels * 4u;
    const auto data_size = static_cast<std::uint32_t>(frames * block_align);

    // RIFF + fmt(18, IEEE float) + fact + data.
    std::vector<std::uint8_t> head(12 + 8 + 18 + 8 + 4 + 8);
    std::uint8_t* p = head.data();
    std::memcpy(p, "RIFF", 4);
    put_u32(p + 4, 4 + 8 + 18 + 8 + 4 + 8 + data_size);
    std::memcpy(p + 8, "WAVE", 4);
    p += 12;
    std::memcpy(p, "fmt ", 4);
    put_u32(p + 4, 18);
    put_u16(p + 8, kFormatIeeeFloat);
    put_u16(p + 10, n_channels);
    put_u32(p + 12, rate);
    put_u32(p + 16, rate * block_align);
    put_u16(p + 20, static_cast<std::uint16_t>(block_align));
    put_u16(p + 22, 32); // bits per sample
    put_u16(p + 24, 0);  // cbSize
    p += 26;
    std::memcpy(p, "fact", 4);
    put_u32(p + 4, 4);
    put_u32(p + 8, static_cast<std::uint32_t>(frames));
    p += 12;
    std::memcpy(p, "data", 4);
    put_u32(p + 4, data_size);

    std::vector<std::uint8_t> body(data_size);
    std::uint8_t* q = body.data();
    static_assert(std::endian::native == std::endian::little,
                  "WAV writer assumes a little-endian host");
    for (std::size_t f = 0; f < frames; ++f)
        for (std::size_t c = 0; c < channels.size(); ++c, q += 4) {
            const float x = static_cast<float>(channels[c][f]);
            std::memcpy(q, &x, 4);
        }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create WAV file: " + path.string());
    out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out)
        throw IoError("failed writing WAV file: " + path.string());
}

} // namespace panobin
