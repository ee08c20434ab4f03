// Batch harness for the body-channel telemetry link simulator.
//
// Subcommands:
//   run            run a scenario config end-to-end (single point or sweep)
//   sweep          like run, but requires a sweep axis
//   validate       check a config file and print field-level diagnostics
//   filter-report  print the designed receive filter response vs its spec
//   decode         offline-decode a waveform file into a decoded-frame CSV
//   encode         EKG trace -> transmit burst waveform file
//   schema         print the config file documentation

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abclink/csv.hpp"
#include "abclink/ekg.hpp"
#include "abclink/harness.hpp"
#include "abclink/wavio.hpp"

namespace fs = std::filesystem;
using namespace abclink;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string sweep_axis;
};

config::Scenario load_with_overrides(const CommonOpts& opts) {
    config::Scenario sc = config::load_scenario_file(opts.config_path);
    if (!opts.out_dir.empty()) sc.out_dir = opts.out_dir;
    if (opts.seed_set) sc.seed = opts.seed;
    if (!opts.sweep_axis.empty()) {
        if (opts.sweep_axis == "none")
            sc.sweep.axis = config::SweepAxis::none;
        else if (opts.sweep_axis == "distance")
            sc.sweep.axis = config::SweepAxis::distance;
        else if (opts.sweep_axis == "snr")
            sc.sweep.axis = config::SweepAxis::snr;
        else if (opts.sweep_axis == "c_csg")
            sc.sweep.axis = config::SweepAxis::c_csg;
        else
            throw ConfigError("--sweep: must be none|distance|snr|c_csg");
        if (sc.sweep.axis != config::SweepAxis::none && sc.sweep.values.empty())
            throw ConfigError("--sweep: config has no sweep.values for this axis");
    }
    return sc;
}

void print_reports(const harness::ScenarioResult& result) {
    for (const metrics::LinkReport& r : result.reports) {
        std::printf("%s %s=%g seed=%llu corr=%.6f ber=%.3g loss=%.3g frames=%ld/%ld\n",
                    r.scenario.c_str(), r.sweep_axis.c_str(), r.axis_value,
                    static_cast<unsigned long long>(r.seed), r.correlation, r.ber,
                    r.frame_loss_rate, r.frames_decoded, r.frames_sent);
    }
    for (const std::string& f : result.files_written) std::printf("wrote %s\n", f.c_str());
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    cmd->add_option("--config", opts.config_path, "scenario config file (JSON)")
        ->required(config_required);
    cmd->add_option("--out", opts.out_dir, "output directory override");
    cmd->add_option("--seed", opts.seed, "seed override")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"body-channel telemetry link simulator"};
    app.require_subcommand(1);

    CommonOpts opts;

    CLI::App* cmd_run = app.add_subcommand("run", "run a scenario end-to-end");
    add_common(cmd_run, opts);
    cmd_run->add_option("--sweep", opts.sweep_axis, "sweep axis override (none|distance|snr|c_csg)");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the scenario's parameter sweep");
    add_common(cmd_sweep, opts);
    cmd_sweep->add_option("--sweep", opts.sweep_axis, "sweep axis override");

    CLI::App* cmd_validate = app.add_subcommand("validate", "validate a config file");
    add_common(cmd_validate, opts);

    CLI::App* cmd_filter = app.add_subcommand("filter-report",
                                              "designed filter response vs spec");
    add_common(cmd_filter, opts);

    std::string in_path, out_wave, ekg_path;
    CLI::App* cmd_decode = app.add_subcommand("decode", "offline decode of a waveform file");
    add_common(cmd_decode, opts);
    cmd_decode->add_option("--in", in_path, "waveform file (abclink-wave v1)")->required();

    CLI::App* cmd_encode = app.add_subcommand("encode", "EKG trace -> burst waveform file");
    add_common(cmd_encode, opts);
    cmd_encode->add_option("--ekg", ekg_path, "EKG CSV (time,code,volts); synthesized if omitted");
    cmd_encode->add_option("--out-wave", out_wave, "output waveform path")->required();

    app.add_subcommand("schema", "print config documentation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("schema")) {
            std::fputs(config::schema_text().c_str(), stdout);
            return 0;
        }
        if (app.got_subcommand(cmd_validate)) {
            const std::vector<std::string> diags =
                config::validate_json_text(read_file(opts.config_path));
            if (diags.empty()) {
                std::printf("%s: ok\n", opts.config_path.c_str());
                return 0;
            }
            for (const std::string& d : diags)
                std::fprintf(stderr, "%s: %s\n", opts.config_path.c_str(), d.c_str());
            return 3;
        }
        if (app.got_subcommand(cmd_filter)) {
            const config::Scenario sc = load_with_overrides(opts);
            std::fputs(
                harness::filter_report_text(sc.filter, sc.modem.sim_sample_rate_hz).c_str(),
                stdout);
            return 0;
        }
        if (app.got_subcommand(cmd_run) || app.got_subcommand(cmd_sweep)) {
            const config::Scenario sc = load_with_overrides(opts);
            if (app.got_subcommand(cmd_sweep) && sc.sweep.axis == config::SweepAxis::none)
                throw ConfigError("sweep: scenario has no sweep axis configured");
            print_reports(harness::run_scenario(sc));
            return 0;
        }
        if (app.got_subcommand(cmd_decode)) {
            const config::Scenario sc = load_with_overrides(opts);
            const Waveform rx_wave = io::read_raw(in_path);
            const tx::CycleIntervals cycle = tx::schedule_cycle(sc.schedule, 0);
            const rx::RxPipeline pipeline(sc.filter, sc.modem, sc.ecc_cfg,
                                          sc.schedule.packet_period_s, rx_wave.start_time_s);
            const rx::DecodeReport report = pipeline.decode(rx_wave);
            (void)cycle;

            fs::create_directories(sc.out_dir);
            const std::string out_path =
                (fs::path(sc.out_dir) / (sc.name + "_offline_decoded.csv")).string();
            io::CsvWriter csv(out_path);
            csv.row({"index", "timestamp_s", "code", "corrections", "envelope_v"});
            for (const rx::DecodedFrame& f : report.frames) {
                const auto raw = f.payload;
                const std::int32_t code = raw & 0x800000u
                                              ? static_cast<std::int32_t>(raw | 0xFF000000u)
                                              : static_cast<std::int32_t>(raw);
                csv.row({std::to_string(f.index), io::csv_num(f.timestamp_s),
                         std::to_string(code), std::to_string(f.corrections),
                         io::csv_num(f.envelope_v)});
            }
            std::printf("decoded %zu frames (%ld sync errors, %ld corrections) -> %s\n",
                        report.frames.size(), report.frame_errors,
                        report.corrections_applied, out_path.c_str());
            return 0;
        }
        if (app.got_subcommand(cmd_encode)) {
            const config::Scenario sc = load_with_overrides(opts);
            ekg::EkgTrace trace;
            if (!ekg_path.empty()) {
                trace = ekg::read_csv(ekg_path);
            } else {
                ekg::EkgModelParams params = sc.ekg;
                params.seed = sc.seed;
                trace = ekg::quantize(ekg::synthesize(params, sc.schedule.sense_s),
                                      sc.volts_per_lsb)
                            .trace;
            }
            const tx::CycleIntervals cycle = tx::schedule_cycle(sc.schedule, 0);
            const tx::Burst burst = tx::build_burst(trace.codes, sc.schedule, sc.modem,
                                                    sc.ecc_cfg, cycle.abc_tx.begin_s);
            io::write_raw(burst.wave, out_wave);
            std::printf("encoded %zu codes into %zu frames -> %s\n", trace.codes.size(),
                        burst.frame_times_s.size(), out_wave.c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 2;
}
