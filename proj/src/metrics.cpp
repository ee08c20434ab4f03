#include "abclink/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace abclink::metrics {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("pearson: length mismatch");
    if (x.size() < 2) throw Error("pearson: need at least 2 samples");
    const auto n = static_cast<double>(x.size());

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ZeroVarianceError("pearson: zero-variance input");

    const double r2 = (sxy * sxy) / (sxx * syy);
    return std::copysign(std::sqrt(std::min(r2, 1.0)), sxy);
}

std::vector<double> windowed_correlation(std::span<const double> x, std::span<const double> y,
                                         double window_s, double hop_s,
                                         double sample_rate_hz) {
    if (x.size() != y.size()) throw Error("windowed_correlation: length mismatch");
    if (!(sample_rate_hz > 0)) throw Error("windowed_correlation: sample_rate must be > 0");
    const auto win = static_cast<std::size_t>(std::llround(window_s * sample_rate_hz));
    const auto hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(hop_s * sample_rate_hz)));
    if (win < 2) throw Error("windowed_correlation: window shorter than 2 samples");

    if (win >= x.size()) return {pearson(x, y)};

    std::vector<double> out;
    for (std::size_t start = 0; start + win <= x.size(); start += hop) {
        const std::span<const double> wx = x.subspan(start, win);
        const std::span<const double> wy = y.subspan(start, win);
        try {
            out.push_back(pearson(wx, wy));
        } catch (const ZeroVarianceError&) {
            out.push_back(std::equal(wx.begin(), wx.end(), wy.begin())
                              ? 1.0
                              : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

Alignment align(const rx::DecodeReport& report, std::span<const std::int32_t> reference,
                double volts_per_lsb) {
    std::map<std::int64_t, const rx::DecodedFrame*> by_index;
    for (const rx::DecodedFrame& f : report.frames) {
        if (f.index < 0 || f.index >= static_cast<std::int64_t>(reference.size()))
            throw AlignmentError("align: decoded frame index outside the reference");
        by_index.emplace(f.index, &f);
    }

    Alignment a;
    a.lost_mask.assign(reference.size(), 0);
    a.reference.reserve(reference.size());
    a.decoded.reserve(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const auto it = by_index.find(static_cast<std::int64_t>(i));
        if (it == by_index.end()) {
            a.lost_mask[i] = 1;
            ++a.losses;
            continue;
        }
        // decoded payloads are 24-bit two's complement patterns
        const auto raw = it->second->payload;
        const std::int32_t code =
            raw & 0x800000u ? static_cast<std::int32_t>(raw | 0xFF000000u)
                            : static_cast<std::int32_t>(raw);
        a.reference.push_back(reference[i] * volts_per_lsb);
        a.decoded.push_back(code * volts_per_lsb);
    }
    return a;
}

double bit_error_rate(const rx::DecodeReport& report,
                      std::span<const std::int32_t> reference) {
    if (reference.empty()) return 0.0;
    std::map<std::int64_t, std::uint32_t> by_index;
    for (const rx::DecodedFrame& f : report.frames) by_index.emplace(f.index, f.payload);

    double errors = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const auto ref = static_cast<std::uint32_t>(reference[i]) & 0xFFFFFFu;
        const auto it = by_index.find(static_cast<std::int64_t>(i));
        if (it == by_index.end()) {
            errors += 0.5 * tx::kPayloadBits;  // erasure
        } else {
            errors += std::popcount((it->second ^ ref) & 0xFFFFFFu);
        }
    }
    return errors / (static_cast<double>(reference.size()) * tx::kPayloadBits);
}

void PowerModel::check_valid() const {
    if (!(ble_tx_mw > 0) || !(abc_tx_mw > 0) || !(node_avg_mw > 0))
        throw ConfigError("power: powers must be > 0");
}

EnergyReport energy_report(const PowerModel& model, const tx::TdmSchedule& schedule) {
    model.check_valid();
    schedule.check_valid();
    EnergyReport e;
    e.power_ratio = model.ble_tx_mw / model.abc_tx_mw;
    e.abc_energy_per_cycle_mj = model.abc_tx_mw * schedule.abc_tx_s;
    const double ble_window_s = schedule.cycle_s - schedule.sense_s;
    e.ble_energy_per_cycle_mj = model.ble_tx_mw * ble_window_s;
    e.abc_duty = schedule.abc_tx_s / schedule.cycle_s;
    e.ble_duty = ble_window_s / schedule.cycle_s;
    return e;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::string> link_report_header() {
    return {"scenario",       "sweep_axis",     "axis_value",
            "seed",           "correlation",    "windowed_min",
            "windowed_mean",  "ber",            "frame_loss_rate",
            "frames_sent",    "frames_decoded", "frame_errors",
            "corrections",    "recovered",      "mean_on_envelope_v",
            "snr_db",         "abc_power_mw",   "ble_power_mw",
            "power_ratio",    "abc_energy_per_cycle_mj", "params"};
}

std::vector<AmplitudePoint> amplitude_vs_distance(std::span<const LinkReport> reports) {
    std::map<double, std::pair<double, int>> by_distance;  // sum, count
    for (const LinkReport& r : reports) {
        if (r.sweep_axis != "distance") continue;
        if (r.frames_decoded == 0) continue;  // e.g. zero-gain bursts: nothing to measure
        auto& [sum, count] = by_distance[r.axis_value];
        sum += r.mean_on_envelope_v;
        ++count;
    }
    std::vector<AmplitudePoint> out;
    out.reserve(by_distance.size());
    for (const auto& [dist, sc] : by_distance)
        out.push_back({dist, sc.first / static_cast<double>(sc.second)});
    return out;  // map order = ascending distance = position high to low
}

std::vector<std::string> link_report_row(const LinkReport& r) {
    return {r.scenario,
            r.sweep_axis,
            fmt(r.axis_value),
            std::to_string(r.seed),
            fmt(r.correlation),
            fmt(r.windowed_min),
            fmt(r.windowed_mean),
            fmt(r.ber),
            fmt(r.frame_loss_rate),
            std::to_string(r.frames_sent),
            std::to_string(r.frames_decoded),
            std::to_string(r.frame_errors),
            std::to_string(r.corrections),
            std::to_string(r.recovered_by_redundancy),
            fmt(r.mean_on_envelope_v),
            fmt(r.snr_db),
            fmt(r.abc_power_mw),
            fmt(r.ble_power_mw),
            fmt(r.power_ratio),
            fmt(r.abc_energy_per_cycle_mj),
            r.params_json};
}

}  // namespace abclink::metrics
