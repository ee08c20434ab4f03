#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abclink/channel.hpp"
#include "abclink/circuit.hpp"
#include "abclink/ecc.hpp"
#include "abclink/ekg.hpp"
#include "abclink/metrics.hpp"
#include "abclink/rxchain.hpp"
#include "abclink/txchain.hpp"

namespace abclink::config {

enum class SweepAxis { none, distance, snr, c_csg };

std::string axis_name(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::none;
    std::vector<double> values;
    int seeds_per_point = 1;
};

struct OutputOptions {
    bool dump_waveforms = false;
    bool write_plots = true;
    bool write_decoded_trace = true;
};

/// One experiment: sources, link parameters, impairments, metrics knobs.
struct Scenario {
    std::string name = "baseline";
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    ekg::EkgModelParams ekg;
    double volts_per_lsb = 3e-10;

    circuit::ChannelParams channel;
    channel::ImpairmentConfig impairments;
    tx::TdmSchedule schedule;
    tx::ModemParams modem;
    ecc::EccConfig ecc_cfg;
    rx::FilterSpec filter;
    metrics::PowerModel power;

    SweepSpec sweep;
    OutputOptions output;

    // windowed-correlation reporting
    double corr_window_s = 0.5;
    double corr_hop_s = 0.25;
};

/// Parse scenario JSON text. Unknown keys are rejected (they are usually
/// typos); all diagnostics carry the offending field path.
Scenario scenario_from_json_text(const std::string& text);  // throws ConfigError

/// Full parameter snapshot (round-trips through scenario_from_json_text).
std::string scenario_to_json_text(const Scenario& s, bool pretty = false);

/// Validate without building: returns every diagnostic instead of stopping at
/// the first.
std::vector<std::string> validate_json_text(const std::string& text);

Scenario load_scenario_file(const std::string& path);

/// Human-readable schema for the `schema` subcommand.
std::string schema_text();

}  // namespace abclink::config
