#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "abclink/config.hpp"

using namespace abclink;

#ifndef ABCLINK_CONFIG_DIR
#define ABCLINK_CONFIG_DIR "configs"
#endif

namespace {

std::string slurp(const std::string& name) {
    std::ifstream f(std::string(ABCLINK_CONFIG_DIR) + "/" + name);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool any_contains(const std::vector<std::string>& diags, const std::string& needle) {
    for (const std::string& d : diags)
        if (d.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("shipped configs validate cleanly") {
    for (const char* path : {"default.json", "distance_sweep.json",
                             "snr_sweep.json"}) {
        const std::vector<std::string> diags = config::validate_json_text(slurp(path));
        INFO(path);
        for (const std::string& d : diags) INFO(d);
        CHECK(diags.empty());
    }
}

TEST_CASE("defaults alone are a valid scenario") {
    CHECK(config::validate_json_text("{}").empty());
}

TEST_CASE("negative capacitance is flagged with its field") {
    const std::vector<std::string> diags =
        config::validate_json_text(R"({"channel": {"c_csg_f": -1e-12}})");
    REQUIRE_FALSE(diags.empty());
    CHECK(any_contains(diags, "capacitance"));
}

TEST_CASE("non-integer samples-per-bit is flagged") {
    // 3.9e6 / 24000 = 162.5
    const std::vector<std::string> diags =
        config::validate_json_text(R"({"modem": {"bit_rate_bps": 24000}})");
    REQUIRE_FALSE(diags.empty());
    CHECK(any_contains(diags, "integer"));
}

TEST_CASE("unknown keys are flagged as typos") {
    const std::vector<std::string> diags =
        config::validate_json_text(R"({"modem": {"bitrate": 25000}})");
    REQUIRE_FALSE(diags.empty());
    CHECK(any_contains(diags, "unknown field"));
}

TEST_CASE("sweep axis and values must be consistent") {
    CHECK(any_contains(config::validate_json_text(R"({"sweep": {"axis": "distance"}})"),
                       "values"));
    CHECK(any_contains(
        config::validate_json_text(R"({"sweep": {"axis": "none", "values": [1.0]}})"),
        "values"));
    CHECK(any_contains(config::validate_json_text(R"({"sweep": {"axis": "sideways"}})"),
                       "axis"));
}

TEST_CASE("multiple diagnostics are aggregated") {
    const std::vector<std::string> diags = config::validate_json_text(
        R"({"channel": {"c_g_tx_f": -1}, "modem": {"duty": 2.0}, "power": {"abc_tx_mw": 0}})");
    CHECK(diags.size() >= 3);
}

TEST_CASE("ecc matrix loading accepts a consistent code and rejects a broken one") {
    // the (7,4) systematic code, spelled out as explicit matrices
    const std::string good = R"({"ecc": {"scheme": "linear_block",
        "generator":    [[1,0,0,0,1,0,1],
                         [0,1,0,0,1,1,1],
                         [0,0,1,0,1,1,0],
                         [0,0,0,1,0,1,1]],
        "parity_check": [[1,1,1,0,1,0,0],
                         [0,1,1,1,0,1,0],
                         [1,1,0,1,0,0,1]]}})";
    CHECK(config::validate_json_text(good).empty());

    const std::string bad = R"({"ecc": {"scheme": "linear_block",
        "generator": [[1,1,0]], "parity_check": [[1,0,0],[0,1,0]]}})";
    CHECK(any_contains(config::validate_json_text(bad), "ecc"));
}

TEST_CASE("hamming74 shorthand loads the default block code") {
    const config::Scenario s =
        config::scenario_from_json_text(R"({"ecc": {"scheme": "hamming74"}})");
    CHECK(s.ecc_cfg.scheme == ecc::Scheme::linear_block);
    CHECK(s.ecc_cfg.message_len() == 4);
    CHECK(s.ecc_cfg.codeword_len() == 7);
}

TEST_CASE("scenario snapshot round-trips") {
    config::Scenario s = config::scenario_from_json_text(slurp("default.json"));
    s.seed = 42;
    s.sweep.axis = config::SweepAxis::snr;
    s.sweep.values = {0.0, 10.0};
    const std::string text = config::scenario_to_json_text(s, true);
    const config::Scenario back = config::scenario_from_json_text(text);
    CHECK(back.seed == 42);
    CHECK(back.name == s.name);
    CHECK(back.sweep.axis == config::SweepAxis::snr);
    CHECK(back.sweep.values == s.sweep.values);
    CHECK(back.channel.c_csg_f == s.channel.c_csg_f);
    CHECK(back.modem.bit_rate_bps == s.modem.bit_rate_bps);
    CHECK(back.ekg.r.amplitude_v == s.ekg.r.amplitude_v);
}

TEST_CASE("schema text documents the config surface") {
    const std::string schema = config::schema_text();
    for (const char* key : {"sweep", "channel", "modem", "ecc", "filter", "volts_per_lsb"})
        CHECK(schema.find(key) != std::string::npos);
}

TEST_CASE("malformed JSON fails to parse with a diagnostic") {
    const std::vector<std::string> diags = config::validate_json_text("{not json");
    REQUIRE(diags.size() == 1);
    CHECK(any_contains(diags, "parse"));
}
