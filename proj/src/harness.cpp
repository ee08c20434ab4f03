#include "abclink/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "abclink/csv.hpp"
#include "abclink/kernels.hpp"
#include "abclink/svg.hpp"
#include "abclink/wavio.hpp"

namespace abclink::harness {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kEkgStream = 0x45ull;
constexpr std::uint64_t kChannelStream = 0xC4ull;

/// Pearson over the unmasked pairs of each window; NaN where a window has
/// fewer than two usable pairs.
std::vector<double> masked_windowed_correlation(std::span<const double> ref,
                                                std::span<const double> dec,
                                                std::span<const std::uint8_t> lost,
                                                double window_s, double hop_s, double rate_hz) {
    const auto win =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(window_s * rate_hz)));
    const auto hop =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(hop_s * rate_hz)));
    std::vector<double> out;
    if (ref.size() < win) return out;
    std::vector<double> wx, wy;
    for (std::size_t start = 0; start + win <= ref.size(); start += hop) {
        wx.clear();
        wy.clear();
        for (std::size_t i = start; i < start + win; ++i) {
            if (lost[i]) continue;
            wx.push_back(ref[i]);
            wy.push_back(dec[i]);
        }
        if (wx.size() < 2) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        try {
            out.push_back(metrics::pearson(wx, wy));
        } catch (const ZeroVarianceError&) {
            out.push_back(std::equal(wx.begin(), wx.end(), wy.begin())
                              ? 1.0
                              : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

std::int32_t payload_to_code(std::uint32_t payload) {
    return payload & 0x800000u ? static_cast<std::int32_t>(payload | 0xFF000000u)
                               : static_cast<std::int32_t>(payload);
}

}  // namespace

RunOutcome run_point(const config::Scenario& sc, std::uint64_t seed, const PointOverride& ov) {
    circuit::ChannelParams channel_params = sc.channel;
    channel::ImpairmentConfig imp = sc.impairments;
    if (ov.c_csg_f) channel_params.c_csg_f = *ov.c_csg_f;
    if (ov.distance_m) imp.distance_schedule = {{0.0, *ov.distance_m}};

    ekg::EkgModelParams ekg_params = sc.ekg;
    ekg_params.seed = kernels::mix64(seed ^ kEkgStream);
    imp.seed = kernels::mix64(seed ^ kChannelStream);

    // sense window -> codes
    const ekg::ContinuousTrace continuous = ekg::synthesize(ekg_params, sc.schedule.sense_s);
    const ekg::QuantizeResult q = ekg::quantize(continuous, sc.volts_per_lsb);
    const std::vector<std::int32_t>& codes = q.trace.codes;

    // ideal reference path (lossless by construction)
    RunOutcome out;
    out.reference = tx::ble_reference_decode(tx::ble_reference_encode(codes));

    // transmit burst in the ABC window of cycle 0
    const tx::CycleIntervals cycle = tx::schedule_cycle(sc.schedule, 0);
    tx::Burst burst =
        tx::build_burst(codes, sc.schedule, sc.modem, sc.ecc_cfg, cycle.abc_tx.begin_s);

    if (ov.snr_db) {
        imp.awgn_rms_v = channel::awgn_rms_for_snr_db(burst.wave, channel_params, imp,
                                                      *ov.snr_db, sc.modem.duty,
                                                      sc.filter.passband_low_hz,
                                                      sc.filter.passband_high_hz);
    }
    out.link.snr_db = channel::snr_at_receiver_db(burst.wave, channel_params, imp,
                                                  sc.modem.duty, sc.filter.passband_low_hz,
                                                  sc.filter.passband_high_hz);

    Waveform rx_wave = channel::propagate(burst.wave, channel_params, imp);

    if (sc.output.dump_waveforms) {
        fs::create_directories(sc.out_dir);
        io::write_raw(burst.wave, (fs::path(sc.out_dir) / (sc.name + "_tx.f32")).string());
        io::write_raw(rx_wave, (fs::path(sc.out_dir) / (sc.name + "_rx.f32")).string());
    }
    burst.wave.samples.clear();
    burst.wave.samples.shrink_to_fit();

    // receive
    const rx::RxPipeline pipeline(sc.filter, sc.modem, sc.ecc_cfg, burst.frame_period_s,
                                  cycle.abc_tx.begin_s);
    try {
        out.decode = pipeline.decode(rx_wave);
    } catch (const NoSignalError&) {
        out.decode = rx::DecodeReport{};  // everything lost
    }
    rx_wave.samples.clear();
    rx_wave.samples.shrink_to_fit();

    // score
    const metrics::Alignment aligned =
        metrics::align(out.decode, out.reference, sc.volts_per_lsb);
    out.decode.frames_lost = aligned.losses;
    out.lost_mask = aligned.lost_mask;

    out.decoded_codes.assign(out.reference.size(), 0);
    for (const rx::DecodedFrame& f : out.decode.frames)
        out.decoded_codes[static_cast<std::size_t>(f.index)] = payload_to_code(f.payload);

    metrics::LinkReport& link = out.link;
    link.scenario = sc.name;
    link.seed = seed;
    link.frames_sent = static_cast<long>(out.reference.size());
    link.frames_decoded = static_cast<long>(out.decode.frames.size());
    link.frame_errors = out.decode.frame_errors;
    link.corrections = out.decode.corrections_applied;
    link.recovered_by_redundancy = out.decode.recovered_by_redundancy;
    link.ber = metrics::bit_error_rate(out.decode, out.reference);
    link.frame_loss_rate = out.reference.empty()
                               ? 0.0
                               : static_cast<double>(aligned.losses) /
                                     static_cast<double>(out.reference.size());

    if (aligned.reference.size() >= 2) {
        try {
            link.correlation = metrics::pearson(aligned.reference, aligned.decoded);
        } catch (const ZeroVarianceError&) {
            link.correlation = std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        link.correlation = std::numeric_limits<double>::quiet_NaN();
    }

    // windowed correlation over the sense window timeline
    std::vector<double> ref_v(out.reference.size()), dec_v(out.reference.size());
    for (std::size_t i = 0; i < out.reference.size(); ++i) {
        ref_v[i] = out.reference[i] * sc.volts_per_lsb;
        dec_v[i] = out.decoded_codes[i] * sc.volts_per_lsb;
    }
    out.windowed = masked_windowed_correlation(ref_v, dec_v, out.lost_mask, sc.corr_window_s,
                                               sc.corr_hop_s, q.trace.sample_rate_hz);
    out.window_hop_s = sc.corr_hop_s;
    double wmin = std::numeric_limits<double>::infinity(), wsum = 0.0;
    std::size_t wcount = 0;
    for (double w : out.windowed) {
        if (std::isnan(w)) continue;
        wmin = std::min(wmin, w);
        wsum += w;
        ++wcount;
    }
    link.windowed_min = wcount ? wmin : std::numeric_limits<double>::quiet_NaN();
    link.windowed_mean = wcount ? wsum / static_cast<double>(wcount)
                               : std::numeric_limits<double>::quiet_NaN();

    double env_sum = 0.0;
    for (const rx::DecodedFrame& f : out.decode.frames) env_sum += f.envelope_v;
    link.mean_on_envelope_v =
        out.decode.frames.empty() ? 0.0 : env_sum / static_cast<double>(out.decode.frames.size());

    const metrics::EnergyReport energy = metrics::energy_report(sc.power, sc.schedule);
    link.abc_power_mw = sc.power.abc_tx_mw;
    link.ble_power_mw = sc.power.ble_tx_mw;
    link.power_ratio = energy.power_ratio;
    link.abc_energy_per_cycle_mj = energy.abc_energy_per_cycle_mj;

    config::Scenario snapshot = sc;
    snapshot.seed = seed;
    link.params_json = config::scenario_to_json_text(snapshot);
    return out;
}

namespace {

void write_decoded_trace(const RunOutcome& run, const std::string& path) {
    io::CsvWriter csv(path);
    csv.row({"index", "ref_code", "decoded_code", "lost", "ref_volts", "decoded_volts"});
    for (std::size_t i = 0; i < run.reference.size(); ++i) {
        const bool lost = run.lost_mask[i] != 0;
        csv.row({std::to_string(i), std::to_string(run.reference[i]),
                 lost ? "" : std::to_string(run.decoded_codes[i]), lost ? "1" : "0",
                 io::csv_num(run.reference[i] * 1.0), lost ? "" : io::csv_num(run.decoded_codes[i] * 1.0)});
    }
}

void write_windowed_csv(const RunOutcome& run, const std::string& path) {
    io::CsvWriter csv(path);
    csv.row({"window_start_s", "correlation"});
    for (std::size_t i = 0; i < run.windowed.size(); ++i) {
        csv.row({io::csv_num(static_cast<double>(i) * run.window_hop_s),
                 io::csv_num(run.windowed[i])});
    }
}

}  // namespace

ScenarioResult run_scenario(const config::Scenario& sc) {
    fs::create_directories(sc.out_dir);
    ScenarioResult result;

    struct Row {
        double axis_value;
        std::uint64_t seed;
        RunOutcome run;
    };
    std::vector<Row> rows;

    if (sc.sweep.axis == config::SweepAxis::none) {
        rows.push_back({0.0, sc.seed, run_point(sc, sc.seed)});
    } else {
        for (double value : sc.sweep.values) {
            PointOverride ov;
            switch (sc.sweep.axis) {
                case config::SweepAxis::distance: ov.distance_m = value; break;
                case config::SweepAxis::snr: ov.snr_db = value; break;
                case config::SweepAxis::c_csg: ov.c_csg_f = value; break;
                case config::SweepAxis::none: break;
            }
            for (int si = 0; si < sc.sweep.seeds_per_point; ++si) {
                const std::uint64_t seed = sc.seed + static_cast<std::uint64_t>(si);
                rows.push_back({value, seed, run_point(sc, seed, ov)});
            }
        }
    }

    const std::string axis = config::axis_name(sc.sweep.axis);
    for (Row& row : rows) {
        row.run.link.sweep_axis = axis;
        row.run.link.axis_value = row.axis_value;
    }

    // report CSV, one row per run
    const std::string report_path = (fs::path(sc.out_dir) / (sc.name + "_report.csv")).string();
    {
        io::CsvWriter csv(report_path);
        csv.row(metrics::link_report_header());
        for (const Row& row : rows) csv.row(metrics::link_report_row(row.run.link));
    }
    result.files_written.push_back(report_path);

    if (sc.output.write_decoded_trace) {
        const std::string trace_path =
            (fs::path(sc.out_dir) / (sc.name + "_decoded.csv")).string();
        write_decoded_trace(rows.front().run, trace_path);
        result.files_written.push_back(trace_path);

        const std::string win_path =
            (fs::path(sc.out_dir) / (sc.name + "_windowed.csv")).string();
        write_windowed_csv(rows.front().run, win_path);
        result.files_written.push_back(win_path);
    }

    if (sc.output.write_plots) {
        if (sc.sweep.axis == config::SweepAxis::none) {
            svg::Series series;
            series.label = "windowed correlation";
            for (std::size_t i = 0; i < rows.front().run.windowed.size(); ++i) {
                series.x.push_back(static_cast<double>(i) * rows.front().run.window_hop_s);
                series.y.push_back(rows.front().run.windowed[i]);
            }
            svg::ChartOptions opt;
            opt.title = sc.name + ": windowed correlation";
            opt.x_label = "window start (s)";
            opt.y_label = "correlation";
            const std::string p = (fs::path(sc.out_dir) / (sc.name + "_windowed.svg")).string();
            svg::write_line_chart(p, {series}, opt);
            result.files_written.push_back(p);
        } else {
            // per-point correlation bars (mean over seeds)
            std::vector<std::string> labels;
            std::vector<double> corr_means;
            std::vector<double> amp_means;
            for (double value : sc.sweep.values) {
                double corr_sum = 0.0, amp_sum = 0.0;
                int n = 0;
                for (const Row& row : rows) {
                    if (row.axis_value != value) continue;
                    corr_sum += row.run.link.correlation;
                    amp_sum += row.run.link.mean_on_envelope_v;
                    ++n;
                }
                labels.push_back(io::csv_num(value));
                corr_means.push_back(n ? corr_sum / n : 0.0);
                amp_means.push_back(n ? amp_sum / n : 0.0);
            }

            svg::ChartOptions copt;
            copt.title = sc.name + ": correlation vs " + axis;
            copt.x_label = axis;
            copt.y_label = "correlation";
            copt.y_threshold = 0.97;
            copt.draw_threshold = true;
            const std::string cp =
                (fs::path(sc.out_dir) / (sc.name + "_correlation.svg")).string();
            svg::write_bar_chart(cp, labels, corr_means, copt);
            result.files_written.push_back(cp);

            if (sc.sweep.axis == config::SweepAxis::distance) {
                svg::Series amp;
                amp.label = "mean ON-bit envelope";
                for (std::size_t i = 0; i < sc.sweep.values.size(); ++i) {
                    amp.x.push_back(sc.sweep.values[i]);
                    amp.y.push_back(amp_means[i]);
                }
                svg::ChartOptions aopt;
                aopt.title = sc.name + ": received amplitude vs distance";
                aopt.x_label = "foot distance (m)";
                aopt.y_label = "envelope (V)";
                const std::string ap =
                    (fs::path(sc.out_dir) / (sc.name + "_amplitude.svg")).string();
                svg::write_line_chart(ap, {amp}, aopt);
                result.files_written.push_back(ap);
            }
            if (sc.sweep.axis == config::SweepAxis::snr) {
                svg::Series ber;
                ber.label = "BER";
                for (std::size_t i = 0; i < sc.sweep.values.size(); ++i) {
                    double sum = 0.0;
                    int n = 0;
                    for (const Row& row : rows) {
                        if (row.axis_value != sc.sweep.values[i]) continue;
                        sum += row.run.link.ber;
                        ++n;
                    }
                    ber.x.push_back(sc.sweep.values[i]);
                    ber.y.push_back(n ? sum / n : 0.0);
                }
                svg::ChartOptions bopt;
                bopt.title = sc.name + ": BER vs SNR";
                bopt.x_label = "SNR (dB)";
                bopt.y_label = "BER";
                bopt.log_y = true;
                const std::string bp = (fs::path(sc.out_dir) / (sc.name + "_ber.svg")).string();
                svg::write_line_chart(bp, {ber}, bopt);
                result.files_written.push_back(bp);
            }
        }
    }

    result.reports.reserve(rows.size());
    for (Row& row : rows) result.reports.push_back(std::move(row.run.link));
    return result;
}

std::string filter_report_text(const rx::FilterSpec& spec, double sample_rate_hz) {
    const rx::FirFilter fir = rx::design_bandpass(spec, sample_rate_hz);
    std::ostringstream os;
    os << "bandpass design: " << fir.taps.size() << " taps at " << sample_rate_hz / 1e6
       << " MS/s, group delay " << fir.group_delay_samples() << " samples\n";
    os << "  freq_hz      gain_db   requirement\n";

    struct Probe {
        double f;
        const char* req;
        bool (*pass)(double db, const rx::FilterSpec& s);
    };
    const Probe probes[] = {
        {0.0, "<= -stopband", [](double db, const rx::FilterSpec& s) { return db <= -s.stopband_atten_db; }},
        {spec.passband_low_hz - 2 * spec.transition_hz, "<= -stopband",
         [](double db, const rx::FilterSpec& s) { return db <= -s.stopband_atten_db; }},
        {spec.passband_low_hz - spec.transition_hz, "<= -stopband",
         [](double db, const rx::FilterSpec& s) { return db <= -s.stopband_atten_db; }},
        {spec.passband_low_hz, "passband edge", [](double, const rx::FilterSpec&) { return true; }},
        {0.5 * (spec.passband_low_hz + spec.passband_high_hz), "|gain| <= ripple",
         [](double db, const rx::FilterSpec& s) { return std::fabs(db) <= s.passband_ripple_db; }},
        {spec.passband_high_hz, "passband edge", [](double, const rx::FilterSpec&) { return true; }},
        {spec.passband_high_hz + spec.transition_hz, "<= -stopband",
         [](double db, const rx::FilterSpec& s) { return db <= -s.stopband_atten_db; }},
        {spec.passband_high_hz + 2 * spec.transition_hz, "<= -stopband",
         [](double db, const rx::FilterSpec& s) { return db <= -s.stopband_atten_db; }},
    };
    for (const Probe& p : probes) {
        const double db = fir.magnitude_db_at(p.f);
        char line[128];
        std::snprintf(line, sizeof line, "  %10.0f  %9.2f   %-14s %s\n", p.f, db, p.req,
                      p.pass(db, spec) ? "ok" : "FAIL");
        os << line;
    }
    return os.str();
}

}  // namespace abclink::harness
