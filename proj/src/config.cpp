#include "abclink/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace abclink::config {

using nlohmann::json;

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::none: return "none";
        case SweepAxis::distance: return "distance";
        case SweepAxis::snr: return "snr";
        case SweepAxis::c_csg: return "c_csg";
    }
    return "none";
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path,
                std::vector<std::string>& diags) {
    if (!obj.is_object()) {
        diags.push_back(path + ": expected an object");
        return;
    }
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) diags.push_back(path + "." + key + ": unknown field");
    }
}

template <class T>
void get_to(const json& obj, const char* key, T& out, const std::string& path,
            std::vector<std::string>& diags) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception&) {
        diags.push_back(path + "." + key + ": wrong type");
    }
}

void parse_wave(const json& obj, const char* key, ekg::WaveComponent& w, const std::string& path,
                std::vector<std::string>& diags) {
    if (!obj.contains(key)) return;
    const json& j = obj.at(key);
    check_keys(j, {"amplitude_v", "center_rad", "width_rad"}, path + "." + key, diags);
    get_to(j, "amplitude_v", w.amplitude_v, path + "." + key, diags);
    get_to(j, "center_rad", w.center_rad, path + "." + key, diags);
    get_to(j, "width_rad", w.width_rad, path + "." + key, diags);
}

ecc::BitMatrix parse_bit_matrix(const json& j, const std::string& path,
                                std::vector<std::string>& diags) {
    ecc::BitMatrix m;
    if (!j.is_array() || j.empty()) {
        diags.push_back(path + ": expected a non-empty array of bit rows");
        return m;
    }
    m.rows = static_cast<int>(j.size());
    for (const json& row : j) {
        if (!row.is_array()) {
            diags.push_back(path + ": row is not an array");
            return m;
        }
        if (m.cols == 0) m.cols = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != m.cols) {
            diags.push_back(path + ": ragged rows");
            return m;
        }
        std::uint32_t bits = 0;
        for (int c = 0; c < m.cols; ++c) {
            const json& v = row.at(static_cast<std::size_t>(c));
            if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
                diags.push_back(path + ": entries must be 0 or 1");
                return m;
            }
            bits |= static_cast<std::uint32_t>(v.get<int>()) << c;
        }
        m.row_bits.push_back(bits);
    }
    return m;
}

void extract(const json& root, Scenario& s, std::vector<std::string>& diags) {
    check_keys(root,
               {"name", "seed", "out_dir", "ekg", "channel", "impairments", "schedule", "modem",
                "ecc", "filter", "power", "sweep", "output", "correlation"},
               "scenario", diags);
    if (!root.is_object()) return;

    get_to(root, "name", s.name, "scenario", diags);
    get_to(root, "seed", s.seed, "scenario", diags);
    get_to(root, "out_dir", s.out_dir, "scenario", diags);

    if (root.contains("ekg")) {
        const json& j = root.at("ekg");
        check_keys(j,
                   {"heart_rate_bpm", "waves", "baseline_noise_v", "phase_offset_rad",
                    "volts_per_lsb"},
                   "ekg", diags);
        get_to(j, "heart_rate_bpm", s.ekg.heart_rate_bpm, "ekg", diags);
        get_to(j, "baseline_noise_v", s.ekg.baseline_noise_v, "ekg", diags);
        get_to(j, "phase_offset_rad", s.ekg.phase_offset_rad, "ekg", diags);
        get_to(j, "volts_per_lsb", s.volts_per_lsb, "ekg", diags);
        if (j.contains("waves")) {
            const json& w = j.at("waves");
            check_keys(w, {"p", "q", "r", "s", "t"}, "ekg.waves", diags);
            parse_wave(w, "p", s.ekg.p, "ekg.waves", diags);
            parse_wave(w, "q", s.ekg.q, "ekg.waves", diags);
            parse_wave(w, "r", s.ekg.r, "ekg.waves", diags);
            parse_wave(w, "s", s.ekg.s, "ekg.waves", diags);
            parse_wave(w, "t", s.ekg.t, "ekg.waves", diags);
        }
    }

    if (root.contains("channel")) {
        const json& j = root.at("channel");
        check_keys(j,
                   {"c_g_tx_f", "c_csg_f", "c_l_f", "r_l_ohm", "z_skin", "z_body_ohm", "z_foot",
                    "f_carrier_hz", "foot"},
                   "channel", diags);
        get_to(j, "c_g_tx_f", s.channel.c_g_tx_f, "channel", diags);
        get_to(j, "c_csg_f", s.channel.c_csg_f, "channel", diags);
        get_to(j, "c_l_f", s.channel.c_l_f, "channel", diags);
        get_to(j, "r_l_ohm", s.channel.r_l_ohm, "channel", diags);
        get_to(j, "z_body_ohm", s.channel.z_body_ohm, "channel", diags);
        get_to(j, "f_carrier_hz", s.channel.f_carrier_hz, "channel", diags);
        if (j.contains("z_skin")) {
            const json& z = j.at("z_skin");
            check_keys(z, {"r_ohm", "c_f"}, "channel.z_skin", diags);
            get_to(z, "r_ohm", s.channel.z_skin.r_ohm, "channel.z_skin", diags);
            get_to(z, "c_f", s.channel.z_skin.c_f, "channel.z_skin", diags);
        }
        if (j.contains("z_foot")) {
            const json& z = j.at("z_foot");
            check_keys(z, {"r_ohm", "c_f"}, "channel.z_foot", diags);
            get_to(z, "r_ohm", s.channel.z_foot.r_ohm, "channel.z_foot", diags);
            get_to(z, "c_f", s.channel.z_foot.c_f, "channel.z_foot", diags);
        }
        if (j.contains("foot")) {
            const json& g = j.at("foot");
            check_keys(g, {"area_m2", "distance_m", "contact_resistance_ohm"}, "channel.foot",
                       diags);
            get_to(g, "area_m2", s.impairments.foot.area_m2, "channel.foot", diags);
            get_to(g, "distance_m", s.impairments.foot.distance_m, "channel.foot", diags);
            get_to(g, "contact_resistance_ohm", s.impairments.foot.contact_resistance_ohm,
                   "channel.foot", diags);
        }
    }

    if (root.contains("impairments")) {
        const json& j = root.at("impairments");
        check_keys(j, {"awgn_rms_v", "bursts", "distance_schedule"}, "impairments", diags);
        get_to(j, "awgn_rms_v", s.impairments.awgn_rms_v, "impairments", diags);
        if (j.contains("bursts")) {
            if (!j.at("bursts").is_array()) {
                diags.push_back("impairments.bursts: expected an array");
            } else {
                for (const json& b : j.at("bursts")) {
                    channel::BurstEvent ev;
                    check_keys(b, {"start_s", "duration_s", "gain"}, "impairments.bursts[]",
                               diags);
                    get_to(b, "start_s", ev.start_s, "impairments.bursts[]", diags);
                    get_to(b, "duration_s", ev.duration_s, "impairments.bursts[]", diags);
                    get_to(b, "gain", ev.gain, "impairments.bursts[]", diags);
                    s.impairments.bursts.push_back(ev);
                }
            }
        }
        if (j.contains("distance_schedule")) {
            if (!j.at("distance_schedule").is_array()) {
                diags.push_back("impairments.distance_schedule: expected an array");
            } else {
                for (const json& d : j.at("distance_schedule")) {
                    channel::DistanceStep st;
                    check_keys(d, {"start_s", "distance_m"}, "impairments.distance_schedule[]",
                               diags);
                    get_to(d, "start_s", st.start_s, "impairments.distance_schedule[]", diags);
                    get_to(d, "distance_m", st.distance_m, "impairments.distance_schedule[]",
                           diags);
                    s.impairments.distance_schedule.push_back(st);
                }
            }
        }
    }

    if (root.contains("schedule")) {
        const json& j = root.at("schedule");
        check_keys(j, {"sense_s", "abc_tx_s", "cycle_s", "packet_period_s"}, "schedule", diags);
        get_to(j, "sense_s", s.schedule.sense_s, "schedule", diags);
        get_to(j, "abc_tx_s", s.schedule.abc_tx_s, "schedule", diags);
        get_to(j, "cycle_s", s.schedule.cycle_s, "schedule", diags);
        get_to(j, "packet_period_s", s.schedule.packet_period_s, "schedule", diags);
    }

    if (root.contains("modem")) {
        const json& j = root.at("modem");
        check_keys(j,
                   {"carrier_hz", "duty", "bit_rate_bps", "tx_amplitude_v", "sim_sample_rate_hz",
                    "ble_min_bandwidth_bps"},
                   "modem", diags);
        get_to(j, "carrier_hz", s.modem.carrier_hz, "modem", diags);
        get_to(j, "duty", s.modem.duty, "modem", diags);
        get_to(j, "bit_rate_bps", s.modem.bit_rate_bps, "modem", diags);
        get_to(j, "tx_amplitude_v", s.modem.tx_amplitude_v, "modem", diags);
        get_to(j, "sim_sample_rate_hz", s.modem.sim_sample_rate_hz, "modem", diags);
        get_to(j, "ble_min_bandwidth_bps", s.modem.ble_min_bandwidth_bps, "modem", diags);
    }

    if (root.contains("ecc")) {
        const json& j = root.at("ecc");
        check_keys(j, {"scheme", "k", "generator", "parity_check"}, "ecc", diags);
        std::string scheme = "none";
        get_to(j, "scheme", scheme, "ecc", diags);
        if (scheme == "none") {
            s.ecc_cfg = ecc::EccConfig::none_config();
        } else if (scheme == "repetition") {
            s.ecc_cfg.scheme = ecc::Scheme::repetition;
            get_to(j, "k", s.ecc_cfg.repetition_k, "ecc", diags);
        } else if (scheme == "hamming74") {
            s.ecc_cfg = ecc::EccConfig::hamming74();
        } else if (scheme == "linear_block") {
            s.ecc_cfg.scheme = ecc::Scheme::linear_block;
            if (j.contains("generator"))
                s.ecc_cfg.generator = parse_bit_matrix(j.at("generator"), "ecc.generator", diags);
            else
                diags.push_back("ecc.generator: required for linear_block");
            if (j.contains("parity_check"))
                s.ecc_cfg.parity_check =
                    parse_bit_matrix(j.at("parity_check"), "ecc.parity_check", diags);
            else
                diags.push_back("ecc.parity_check: required for linear_block");
        } else {
            diags.push_back("ecc.scheme: must be none|repetition|hamming74|linear_block");
        }
    }

    if (root.contains("filter")) {
        const json& j = root.at("filter");
        check_keys(j,
                   {"passband_low_hz", "passband_high_hz", "stopband_atten_db",
                    "passband_ripple_db", "transition_hz"},
                   "filter", diags);
        get_to(j, "passband_low_hz", s.filter.passband_low_hz, "filter", diags);
        get_to(j, "passband_high_hz", s.filter.passband_high_hz, "filter", diags);
        get_to(j, "stopband_atten_db", s.filter.stopband_atten_db, "filter", diags);
        get_to(j, "passband_ripple_db", s.filter.passband_ripple_db, "filter", diags);
        get_to(j, "transition_hz", s.filter.transition_hz, "filter", diags);
    }

    if (root.contains("power")) {
        const json& j = root.at("power");
        check_keys(j, {"ble_tx_mw", "abc_tx_mw", "node_avg_mw"}, "power", diags);
        get_to(j, "ble_tx_mw", s.power.ble_tx_mw, "power", diags);
        get_to(j, "abc_tx_mw", s.power.abc_tx_mw, "power", diags);
        get_to(j, "node_avg_mw", s.power.node_avg_mw, "power", diags);
    }

    if (root.contains("sweep")) {
        const json& j = root.at("sweep");
        check_keys(j, {"axis", "values", "seeds_per_point"}, "sweep", diags);
        std::string axis = "none";
        get_to(j, "axis", axis, "sweep", diags);
        if (axis == "none")
            s.sweep.axis = SweepAxis::none;
        else if (axis == "distance")
            s.sweep.axis = SweepAxis::distance;
        else if (axis == "snr")
            s.sweep.axis = SweepAxis::snr;
        else if (axis == "c_csg")
            s.sweep.axis = SweepAxis::c_csg;
        else
            diags.push_back("sweep.axis: must be none|distance|snr|c_csg");
        get_to(j, "values", s.sweep.values, "sweep", diags);
        get_to(j, "seeds_per_point", s.sweep.seeds_per_point, "sweep", diags);
    }

    if (root.contains("output")) {
        const json& j = root.at("output");
        check_keys(j, {"dump_waveforms", "write_plots", "write_decoded_trace"}, "output", diags);
        get_to(j, "dump_waveforms", s.output.dump_waveforms, "output", diags);
        get_to(j, "write_plots", s.output.write_plots, "output", diags);
        get_to(j, "write_decoded_trace", s.output.write_decoded_trace, "output", diags);
    }

    if (root.contains("correlation")) {
        const json& j = root.at("correlation");
        check_keys(j, {"window_s", "hop_s"}, "correlation", diags);
        get_to(j, "window_s", s.corr_window_s, "correlation", diags);
        get_to(j, "hop_s", s.corr_hop_s, "correlation", diags);
    }
}

void semantic_diagnostics(const Scenario& s, std::vector<std::string>& diags) {
    auto guard = [&diags](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            diags.push_back(std::string(what) + ": " + e.what());
        }
    };

    guard("channel", [&] { s.channel.check_valid(); });
    guard("modem", [&] { s.modem.check_valid(); });
    guard("schedule", [&] { s.schedule.check_valid(); });
    guard("ekg", [&] { s.ekg.check_valid(); });
    guard("ecc", [&] { s.ecc_cfg.check_valid(); });
    guard("impairments", [&] { s.impairments.check_valid(); });
    guard("power", [&] { s.power.check_valid(); });
    guard("filter", [&] {
        s.filter.check_valid();
        if (s.modem.sim_sample_rate_hz > 0)
            (void)rx::design_bandpass(s.filter, s.modem.sim_sample_rate_hz);
    });

    if (!(s.volts_per_lsb > 0)) diags.push_back("ekg.volts_per_lsb: must be > 0");

    // ADC headroom: PQRST extremes plus noise must stay inside 24-bit range
    if (s.volts_per_lsb > 0) {
        double span = 0.0;
        for (const ekg::WaveComponent* w : {&s.ekg.p, &s.ekg.q, &s.ekg.r, &s.ekg.s, &s.ekg.t})
            span += std::fabs(w->amplitude_v);
        span += 6.0 * s.ekg.baseline_noise_v;
        if (span > static_cast<double>(ekg::kCodeMax) * s.volts_per_lsb)
            diags.push_back("ekg.waves: amplitudes exceed the ADC full scale at this volts_per_lsb");
    }

    // pacing must fit the framed packet plus the minimum inter-frame gap
    try {
        const int fbits = tx::frame_bit_count(s.ecc_cfg);
        if (s.modem.bit_rate_bps > 0) {
            const double min_period = (fbits + 2) / s.modem.bit_rate_bps;
            if (s.schedule.packet_period_s < min_period - 1e-12)
                diags.push_back("schedule.packet_period_s: below frame airtime plus 2-bit gap (" +
                                std::to_string(min_period) + " s)");
        }
    } catch (const Error&) {
        // ecc diagnostics already recorded
    }

    if (s.sweep.axis == SweepAxis::none) {
        if (!s.sweep.values.empty())
            diags.push_back("sweep.values: must be empty when axis is none");
    } else {
        if (s.sweep.values.empty())
            diags.push_back("sweep.values: required for axis " + axis_name(s.sweep.axis));
        if (s.sweep.axis == SweepAxis::distance) {
            for (double v : s.sweep.values)
                if (v < 0) diags.push_back("sweep.values: distances must be >= 0");
        }
        if (s.sweep.axis == SweepAxis::c_csg) {
            for (double v : s.sweep.values)
                if (v < 0) diags.push_back("sweep.values: capacitances must be >= 0");
        }
    }
    if (s.sweep.seeds_per_point < 1) diags.push_back("sweep.seeds_per_point: must be >= 1");

    if (!(s.corr_window_s > 0) || !(s.corr_hop_s > 0))
        diags.push_back("correlation: window_s and hop_s must be > 0");
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON parse failed: ") + e.what());
    }
    Scenario s;
    std::vector<std::string> diags;
    extract(root, s, diags);
    semantic_diagnostics(s, diags);
    if (!diags.empty()) {
        std::string msg = "config: validation failed";
        for (const std::string& d : diags) msg += "\n  - " + d;
        throw ConfigError(msg);
    }
    return s;
}

std::vector<std::string> validate_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        return {std::string("JSON parse failed: ") + e.what()};
    }
    Scenario s;
    std::vector<std::string> diags;
    extract(root, s, diags);
    semantic_diagnostics(s, diags);
    return diags;
}

std::string scenario_to_json_text(const Scenario& s, bool pretty) {
    json waves = {
        {"p", {{"amplitude_v", s.ekg.p.amplitude_v}, {"center_rad", s.ekg.p.center_rad}, {"width_rad", s.ekg.p.width_rad}}},
        {"q", {{"amplitude_v", s.ekg.q.amplitude_v}, {"center_rad", s.ekg.q.center_rad}, {"width_rad", s.ekg.q.width_rad}}},
        {"r", {{"amplitude_v", s.ekg.r.amplitude_v}, {"center_rad", s.ekg.r.center_rad}, {"width_rad", s.ekg.r.width_rad}}},
        {"s", {{"amplitude_v", s.ekg.s.amplitude_v}, {"center_rad", s.ekg.s.center_rad}, {"width_rad", s.ekg.s.width_rad}}},
        {"t", {{"amplitude_v", s.ekg.t.amplitude_v}, {"center_rad", s.ekg.t.center_rad}, {"width_rad", s.ekg.t.width_rad}}},
    };
    json bursts = json::array();
    for (const channel::BurstEvent& b : s.impairments.bursts)
        bursts.push_back({{"start_s", b.start_s}, {"duration_s", b.duration_s}, {"gain", b.gain}});
    json dists = json::array();
    for (const channel::DistanceStep& d : s.impairments.distance_schedule)
        dists.push_back({{"start_s", d.start_s}, {"distance_m", d.distance_m}});

    json ecc_j;
    switch (s.ecc_cfg.scheme) {
        case ecc::Scheme::none:
            ecc_j = {{"scheme", "none"}};
            break;
        case ecc::Scheme::repetition:
            ecc_j = {{"scheme", "repetition"}, {"k", s.ecc_cfg.repetition_k}};
            break;
        case ecc::Scheme::linear_block: {
            auto mat = [](const ecc::BitMatrix& m) {
                json rows = json::array();
                for (int r = 0; r < m.rows; ++r) {
                    json row = json::array();
                    for (int c = 0; c < m.cols; ++c) row.push_back(m.bit(r, c) ? 1 : 0);
                    rows.push_back(row);
                }
                return rows;
            };
            ecc_j = {{"scheme", "linear_block"},
                     {"generator", mat(s.ecc_cfg.generator)},
                     {"parity_check", mat(s.ecc_cfg.parity_check)}};
            break;
        }
    }

    const json root = {
        {"name", s.name},
        {"seed", s.seed},
        {"out_dir", s.out_dir},
        {"ekg",
         {{"heart_rate_bpm", s.ekg.heart_rate_bpm},
          {"waves", waves},
          {"baseline_noise_v", s.ekg.baseline_noise_v},
          {"phase_offset_rad", s.ekg.phase_offset_rad},
          {"volts_per_lsb", s.volts_per_lsb}}},
        {"channel",
         {{"c_g_tx_f", s.channel.c_g_tx_f},
          {"c_csg_f", s.channel.c_csg_f},
          {"c_l_f", s.channel.c_l_f},
          {"r_l_ohm", s.channel.r_l_ohm},
          {"z_skin", {{"r_ohm", s.channel.z_skin.r_ohm}, {"c_f", s.channel.z_skin.c_f}}},
          {"z_body_ohm", s.channel.z_body_ohm},
          {"z_foot", {{"r_ohm", s.channel.z_foot.r_ohm}, {"c_f", s.channel.z_foot.c_f}}},
          {"f_carrier_hz", s.channel.f_carrier_hz},
          {"foot",
           {{"area_m2", s.impairments.foot.area_m2},
            {"distance_m", s.impairments.foot.distance_m},
            {"contact_resistance_ohm", s.impairments.foot.contact_resistance_ohm}}}}},
        {"impairments",
         {{"awgn_rms_v", s.impairments.awgn_rms_v},
          {"bursts", bursts},
          {"distance_schedule", dists}}},
        {"schedule",
         {{"sense_s", s.schedule.sense_s},
          {"abc_tx_s", s.schedule.abc_tx_s},
          {"cycle_s", s.schedule.cycle_s},
          {"packet_period_s", s.schedule.packet_period_s}}},
        {"modem",
         {{"carrier_hz", s.modem.carrier_hz},
          {"duty", s.modem.duty},
          {"bit_rate_bps", s.modem.bit_rate_bps},
          {"tx_amplitude_v", s.modem.tx_amplitude_v},
          {"sim_sample_rate_hz", s.modem.sim_sample_rate_hz},
          {"ble_min_bandwidth_bps", s.modem.ble_min_bandwidth_bps}}},
        {"ecc", ecc_j},
        {"filter",
         {{"passband_low_hz", s.filter.passband_low_hz},
          {"passband_high_hz", s.filter.passband_high_hz},
          {"stopband_atten_db", s.filter.stopband_atten_db},
          {"passband_ripple_db", s.filter.passband_ripple_db},
          {"transition_hz", s.filter.transition_hz}}},
        {"power",
         {{"ble_tx_mw", s.power.ble_tx_mw},
          {"abc_tx_mw", s.power.abc_tx_mw},
          {"node_avg_mw", s.power.node_avg_mw}}},
        {"sweep",
         {{"axis", axis_name(s.sweep.axis)},
          {"values", s.sweep.values},
          {"seeds_per_point", s.sweep.seeds_per_point}}},
        {"output",
         {{"dump_waveforms", s.output.dump_waveforms},
          {"write_plots", s.output.write_plots},
          {"write_decoded_trace", s.output.write_decoded_trace}}},
        {"correlation", {{"window_s", s.corr_window_s}, {"hop_s", s.corr_hop_s}}},
    };
    return pretty ? root.dump(2) : root.dump();
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string schema_text() {
    return R"(Scenario config (JSON, SI units unless suffixed otherwise)

{
  "name": "baseline",          experiment name, used in report rows and filenames
  "seed": 1,                   master seed; all randomness derives from it
  "out_dir": "out",            artifact directory

  "ekg": {
    "heart_rate_bpm": 360,     rodent default
    "waves": {                 sum-of-Gaussians PQRST morphology
      "p"|"q"|"r"|"s"|"t": { "amplitude_v", "center_rad", "width_rad" }
    },
    "baseline_noise_v": 1e-5,
    "phase_offset_rad": -3.14159265,   beat phase at t=0
    "volts_per_lsb": 3e-10     ADC scaling; 24-bit signed codes
  },

  "channel": {                 coupling network (component values are
                               implementer-assumed placeholders; tune to taste)
    "c_g_tx_f": 2e-12,         transmitter ground return capacitance
    "c_csg_f": 50e-12,         conductive surface to earth ground
    "c_l_f": 10e-12,           probe load capacitance
    "r_l_ohm": 1e6,            probe load resistance
    "z_skin": { "r_ohm": 1e5, "c_f": 1e-9 },     R parallel C
    "z_body_ohm": 1e3,
    "z_foot": { "r_ohm": 1e4, "c_f": 0 },        series R + C; c_f=0 means contact
    "f_carrier_hz": 5e5,
    "foot": { "area_m2": 4e-4, "distance_m": 0, "contact_resistance_ohm": 1e4 }
  },

  "impairments": {
    "awgn_rms_v": 1.5e-3,      receiver-referred white noise
    "bursts": [ { "start_s", "duration_s", "gain" } ],       gain in [0,1]
    "distance_schedule": [ { "start_s", "distance_m" } ]     piecewise constant
  },

  "schedule": {                time-multiplexed cycle
    "sense_s": 5, "abc_tx_s": 5, "cycle_s": 15, "packet_period_s": 2e-3
  },

  "modem": {
    "carrier_hz": 5e5, "duty": 0.5, "bit_rate_bps": 25e3,
    "tx_amplitude_v": 3.3, "sim_sample_rate_hz": 3.9e6,
    "ble_min_bandwidth_bps": 45e3
  },

  "ecc": {
    "scheme": "none" | "repetition" | "hamming74" | "linear_block",
    "k": 2,                    repetition copies
    "generator": [[...]],      linear_block: k x n rows of 0/1
    "parity_check": [[...]]    (n-k) x n, must satisfy G*H^T = 0
  },

  "filter": {                  receiver bandpass
    "passband_low_hz": 4e5, "passband_high_hz": 6e5,
    "stopband_atten_db": 80, "passband_ripple_db": 0.5, "transition_hz": 5e4
  },

  "power": {                   measured device powers, milliwatts
    "ble_tx_mw": 29.5, "abc_tx_mw": 0.5, "node_avg_mw": 28.5
  },

  "sweep": {
    "axis": "none" | "distance" | "snr" | "c_csg",
    "values": [...],           axis points (m, dB, or F)
    "seeds_per_point": 1
  },

  "output": { "dump_waveforms": false, "write_plots": true, "write_decoded_trace": true },
  "correlation": { "window_s": 0.5, "hop_s": 0.25 }
}
)";
}

}  // namespace abclink::config
