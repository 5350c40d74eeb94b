//
//  test_wav.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>

#include "panobin/errors.hpp"
#include "panobin/wav.hpp"
#include "test_util.hpp"

using namespace panobin;
using panobin_test::random_samples;
using panobin_test::TempDir;

namespace {

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Hand-assembled PCM WAV with a plain 16-byte fmt chunk.
std::string pcm_wav_bytes(std::uint16_t channels, std::uint32_t rate,
                          std::uint16_t bits, const std::string& data) {
    std::string s;
    s += "RIFF";
    put_u32(s, 4 + 24 + 8 + static_cast<std::uint32_t>(data.size()));
    s += "WAVE";
    s += "fmt ";
    put_u32(s, 16);
    put_u16(s, 1); // PCM
    put_u16(s, channels);
    put_u32(s, rate);
    put_u32(s, rate * channels * bits / 8);
    put_u16(s, static_cast<std::uint16_t>(channels * bits / 8));
    put_u16(s, bits);
    s += "data";
    put_u32(s, static_cast<std::uint32_t>(data.size()));
    s += data;
    return s;
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("float32 write/read round trip is bit exact") {
    TempDir tmp("wav");
    std::mt19937 gen(41);

    std::vector<std::vector<double>> channels{random_samples(gen, 512),
                                              random_samples(gen, 512)};
    // What goes to disk is the float32 quantization of the doubles.
    const auto p = tmp.path() / "roundtrip.wav";
    write_wav_float32(p, channels, 44100.0);
    const WavData back = read_wav(p);

    REQUIRE(back.channel_count() == 2);
    REQUIRE(back.frame_count() == 512);
    CHECK(back.sample_rate == 44100.0);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < 512; ++i)
            CHECK(back.channels[c][i] == static_cast<double>(static_cast<float>(channels[c][i])));

    // A second write/read cycle of already-quantized data changes nothing.
    write_wav_float32(p, back.channels, 44100.0);
    const WavData again = read_wav(p);
    CHECK(again.channels == back.channels);
}

TEST_CASE("four-channel files survive the round trip") {
    TempDir tmp("wav4");
    std::mt19937 gen(42);
    std::vector<std::vector<double>> channels;
    for (int c = 0; c < 4; ++c)
        channels.push_back(random_samples(gen, 64));
    const auto p = tmp.path() / "foa.wav";
    write_wav_float32(p, channels, 48000.0);
    const WavData back = read_wav(p);
    CHECK(back.channel_count() == 4);
    CHECK(back.sample_rate == 48000.0);
}

TEST_CASE("16-bit PCM decodes with the 1/32768 scale") {
    TempDir tmp("pcm16");
    std::string data;
    // Frame 0: L = 0x4000 (0.5), R = 0xC000 (-0.5); frame 1: L = 32767, R = -32768.
    put_u16(data, 0x4000);
    put_u16(data, 0xC000);
    put_u16(data, 0x7FFF);
    put_u16(data, 0x8000);
    const auto p = tmp.path() / "pcm16.wav";
    write_bytes(p, pcm_wav_bytes(2, 44100, 16, data));

    const WavData wav = read_wav(p);
    REQUIRE(wav.channel_count() == 2);
    REQUIRE(wav.frame_count() == 2);
    CHECK(wav.channels[0][0] == 0.5);
    CHECK(wav.channels[1][0] == -0.5);
    CHECK(wav.channels[0][1] == 32767.0 / 32768.0);
    CHECK(wav.channels[1][1] == -1.0);
}

TEST_CASE("24-bit PCM decodes with the 1/2^23 scale") {
    TempDir tmp("pcm24");
    std::string data;
    // 0x400000 = 0.5, 0x800000 = -1.0 (little-endian 3-byte samples).
    data += '\x00'; data += '\x00'; data += '\x40';
    data += '\x00'; data += '\x00'; data += '\x80';
    const auto p = tmp.path() / "pcm24.wav";
    write_bytes(p, pcm_wav_bytes(1, 44100, 24, data));

    const WavData wav = read_wav(p);
    REQUIRE(wav.channel_count() == 1);
    REQUIRE(wav.frame_count() == 2);
    CHECK(wav.channels[0][0] == 0.5);
    CHECK(wav.channels[0][1] == -1.0);
}

TEST_CASE("unsupported and malformed files raise FormatError") {
    TempDir tmp("badwav");

    const auto not_riff = tmp.path() / "not_riff.wav";
    write_bytes(not_riff, "JUNKJUNKJUNKJUNKJUNK");
    CHECK_THROWS_AS(read_wav(not_riff), FormatError);

    const auto truncated = tmp.path() / "truncated.wav";
    write_bytes(truncated, "RIFF");
    CHECK_THROWS_AS(read_wav(truncated), FormatError);

    // 8-bit PCM is outside the supported encodings.
    const auto pcm8 = tmp.path() / "pcm8.wav";
    write_bytes(pcm8, pcm_wav_bytes(1, 44100, 8, std::string(4, '\x80')));
    CHECK_THROWS_AS(read_wav(pcm8), FormatError);

    // Compressed format tag.
    std::string adpcm = pcm_wav_bytes(1, 44100, 16, std::string(4, '\x00'));
    adpcm[20] = '\x02'; // format tag = ADPCM
    const auto adpcm_path = tmp.path() / "adpcm.wav";
    write_bytes(adpcm_path, adpcm);
    CHECK_THROWS_AS(read_wav(adpcm_path), FormatError);

    CHECK_THROWS_AS(read_wav(tmp.path() / "missing.wav"), IoError);
}

TEST_CASE("writer rejects degenerate inputs") {
    TempDir tmp("wavbad");
    const auto p = tmp.path() / "out.wav";
    CHECK_THROWS_AS(write_wav_float32(p, {}, 44100.0), InvalidArgumentError);
    CHECK_THROWS_AS(write_wav_float32(p, {{}}, 44100.0), InvalidArgumentError);
    CHECK_THROWS_AS(write_wav_float32(p, {{1.0}, {1.0, 2.0}}, 44100.0), InvalidArgumentError);
    CHECK_THROWS_AS(write_wav_float32(p, {{1.0}}, 0.0), InvalidArgumentError);
}
