#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abclink/config.hpp"
#include "abclink/metrics.hpp"
#include "abclink/rxchain.hpp"

namespace abclink::harness {

/// Sweep-point parameter override applied on top of the scenario.
struct PointOverride {
    std::optional<double> distance_m;
    std::optional<double> snr_db;
    std::optional<double> c_csg_f;
};

struct RunOutcome {
    metrics::LinkReport link;
    rx::DecodeReport decode;
    std::vector<std::int32_t> reference;      // ideal-reference-path codes
    std::vector<std::int32_t> decoded_codes;  // by payload index, lost = masked
    std::vector<std::uint8_t> lost_mask;
    std::vector<double> windowed;             // correlation series
    double window_hop_s = 0.0;
};

/// One end-to-end pass: synthesize, quantize, schedule, frame, modulate,
/// propagate, filter, slice, decode, score. Deterministic per seed.
RunOutcome run_point(const config::Scenario& sc, std::uint64_t seed,
                     const PointOverride& ov = {});

struct ScenarioResult {
    std::vector<metrics::LinkReport> reports;
    std::vector<std::string> files_written;
};

/// Run the scenario (single point or sweep), writing report CSV, decoded
/// traces, optional waveform dumps, and SVG plots under sc.out_dir.
ScenarioResult run_scenario(const config::Scenario& sc);

/// Human-readable filter compliance table for the `filter-report` subcommand.
std::string filter_report_text(const rx::FilterSpec& spec, double sample_rate_hz);

}  // namespace abclink::harness
