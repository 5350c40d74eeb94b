//
//  test_captions.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "panobin/captions.hpp"
#include "panobin/errors.hpp"
#include "test_util.hpp"

using namespace panobin;
using nlohmann::json;
using panobin_test::TempDir;

namespace {

ClipManifest entry(const std::string& id) {
    ClipManifest e;
    e.clip_id = id;
    e.trajectory.duration = 8.0;
    e.d = 0.05;
    e.passed = true;
    return e;
}

std::filesystem::path write_sidecar(const TempDir& tmp, const std::string& body) {
    const auto p = tmp.path() / "sidecar.json";
    std::ofstream out(p);
    out << body;
    return p;
}

} // namespace

TEST_CASE("caption schema splitting") {
    const auto ok =
        split_caption_schema("Visible sound: waves crashing, Invisible sound: ocean noise");
    REQUIRE(ok.has_value());
    CHECK(ok->first == "waves crashing");
    CHECK(ok->second == "ocean noise");

    const auto padded = split_caption_schema(
        "  Visible sound: a marimba being played , Invisible sound: distant traffic  ");
    REQUIRE(padded.has_value());
    CHECK(padded->first == "a marimba being played");
    CHECK(padded->second == "distant traffic");

    CHECK_FALSE(split_caption_schema("waves crashing").has_value());
    CHECK_FALSE(split_caption_schema("Visible sound: only half").has_value());
}

TEST_CASE("sidecar attaches captions and flags missing clips") {
    TempDir tmp("captions");
    const auto sidecar = write_sidecar(tmp, R"({
        "clip7": {"visible": "waves crashing", "invisible": "ocean noise"}
    })");

    std::vector<ClipManifest> entries{entry("clip7"), entry("clip8")};
    attach_captions_from_sidecar(entries, sidecar);

    CHECK(entries[0].caption_visible == "waves crashing");
    CHECK(entries[0].caption_invisible == "ocean noise");
    CHECK_FALSE(entries[0].caption_warning);

    CHECK(entries[1].caption_visible.empty());
    CHECK(entries[1].caption_invisible.empty());
    CHECK(entries[1].caption_warning);
}

TEST_CASE("malformed sidecars are parse errors") {
    TempDir tmp("captions");
    std::vector<ClipManifest> entries{entry("clip7")};

    CHECK_THROWS_AS(
        attach_captions_from_sidecar(entries, write_sidecar(tmp, "{broken")), ParseError);
    CHECK_THROWS_AS(
        attach_captions_from_sidecar(entries, write_sidecar(tmp, R"(["a"])")), ParseError);
    CHECK_THROWS_AS(
        attach_captions_from_sidecar(entries, write_sidecar(tmp, R"({"clip7": "nope"})")),
        ParseError);
    CHECK_THROWS_AS(
        attach_captions_from_sidecar(entries, write_sidecar(tmp, R"({"clip7": {"visible": 3,
            "invisible": "x"}})")),
        ParseError);
    CHECK_THROWS_AS(attach_captions_from_sidecar(entries, tmp.path() / "missing.json"),
                    IoError);
}

TEST_CASE("endpoint mode round trip against a local server") {
    httplib::Server server;
    std::vector<json> seen_requests;

    server.Post("/caption", [&](const httplib::Request& req, httplib::Response& res) {
        const json body = json::parse(req.body);
        seen_requests.push_back(body);
        const std::string id = body.at("clip_id").get<std::string>();
        if (id == "clip_json") {
            res.set_content(json{{"visible", "a dog barking"},
                                 {"invisible", "wind"}}.dump(),
                            "application/json");
        } else if (id == "clip_schema") {
            res.set_content(json{{"caption", "Visible sound: splashing water, "
                                             "Invisible sound: birds chirping"}}.dump(),
                            "application/json");
        } else {
            res.set_content("definitely not json", "text/plain");
        }
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    std::vector<ClipManifest> entries{entry("clip_json"), entry("clip_schema"),
                                      entry("clip_garbage")};
    CaptionerClient client;
    client.url = "http://127.0.0.1:" + std::to_string(port) + "/caption";
    client.prompt_template = "describe {clip_id} in two stages";
    attach_captions_from_endpoint(entries, client);

    server.stop();
    server_thread.join();

    CHECK(entries[0].caption_visible == "a dog barking");
    CHECK(entries[0].caption_invisible == "wind");
    CHECK_FALSE(entries[0].caption_warning);

    CHECK(entries[1].caption_visible == "splashing water");
    CHECK(entries[1].caption_invisible == "birds chirping");
    CHECK_FALSE(entries[1].caption_warning);

    CHECK(entries[2].caption_visible.empty());
    CHECK(entries[2].caption_warning);

    // The requests carried the clip metadata and the rendered template.
    REQUIRE(seen_requests.size() == 3);
    CHECK(seen_requests[0].at("prompt").get<std::string>() ==
          "describe clip_json in two stages");
    CHECK(seen_requests[0].contains("source_direction"));
    CHECK(seen_requests[0].at("duration").get<double>() == 8.0);
}

TEST_CASE("an unreachable endpoint warns every entry and keeps going") {
    std::vector<ClipManifest> entries{entry("a"), entry("b")};
    CaptionerClient client;
    client.url = "http://127.0.0.1:1/caption"; // nothing listens on port 1
    client.timeout_seconds = 1;
    attach_captions_from_endpoint(entries, client);
    for (const auto& e : entries) {
        CHECK(e.caption_warning);
        CHECK(e.caption_visible.empty());
    }
}

TEST_CASE("non-http schemes are rejected up front") {
    std::vector<ClipManifest> entries{entry("a")};
    CaptionerClient client;
    client.url = "https://example.com/caption";
    CHECK_THROWS_AS(attach_captions_from_endpoint(entries, client), InvalidArgumentError);
}

TEST_CASE("default prompt describes the two-stage schema") {
    const std::string p = default_caption_prompt();
    CHECK(p.find("Visible sound:") != std::string::npos);
    CHECK(p.find("Invisible sound:") != std::string::npos);
}
