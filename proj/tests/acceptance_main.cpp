// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "abclink/channel.hpp"
#include "abclink/circuit.hpp"
#include "abclink/config.hpp"
#include "abclink/ecc.hpp"
#include "abclink/harness.hpp"
#include "abclink/metrics.hpp"
#include "abclink/rxchain.hpp"
#include "abclink/txchain.hpp"

using namespace abclink;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void outcome(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %-22s %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
};

// -------------------------------------------------------------------------
// 1. clean-channel fidelity
// -------------------------------------------------------------------------
void criterion_1() {
    const auto t0 = Clock::now();
    config::Scenario sc;  // defaults: 5 s sense, 2500 samples, contact
    sc.impairments.awgn_rms_v = 0.0;
    sc.output = {};
    sc.output.write_plots = false;
    sc.output.write_decoded_trace = false;

    const harness::RunOutcome run = harness::run_point(sc, 1);
    const bool exact_codes =
        run.reference.size() == 2500 && run.lost_mask == std::vector<std::uint8_t>(2500, 0) &&
        run.decoded_codes == run.reference;
    const double elapsed = seconds_since(t0);
    const bool pass = exact_codes && run.link.correlation == 1.0 && run.link.ber == 0.0 &&
                      elapsed < 30.0;

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "codes %s, corr=%.17g, ber=%.3g, %.1f s (< 30 s)",
                  exact_codes ? "exact" : "MISMATCH", run.link.correlation, run.link.ber,
                  elapsed);
    outcome(1, "clean-channel fidelity", pass, detail);
}

// -------------------------------------------------------------------------
// 2. distance robustness
// -------------------------------------------------------------------------
void criterion_2() {
    config::Scenario sc;
    sc.name = "distance_acceptance";
    sc.schedule.sense_s = 1.0;  // 500 codes per window keeps ten seeds tractable
    sc.schedule.abc_tx_s = 1.0;
    sc.schedule.cycle_s = 3.0;
    sc.output = {};
    sc.output.write_plots = false;
    sc.output.write_decoded_trace = false;

    const std::vector<double> distances{0.0, 1e-3, 2e-3, 4e-3, 8e-3, 16e-3};  // pos 6..1
    const int n_seeds = 10;

    bool all_corr = true;
    double worst_corr = 1.0;
    std::vector<metrics::LinkReport> reports;
    for (double d : distances) {
        harness::PointOverride ov;
        ov.distance_m = d;
        for (int s = 0; s < n_seeds; ++s) {
            harness::RunOutcome run = harness::run_point(sc, 100 + static_cast<std::uint64_t>(s), ov);
            run.link.sweep_axis = "distance";
            run.link.axis_value = d;
            worst_corr = std::min(worst_corr, run.link.correlation);
            if (!(run.link.correlation > 0.97)) all_corr = false;
            reports.push_back(run.link);
        }
    }

    const std::vector<metrics::AmplitudePoint> curve = metrics::amplitude_vs_distance(reports);
    bool monotone = curve.size() == distances.size();
    for (std::size_t i = 0; monotone && i + 1 < curve.size(); ++i)
        monotone = curve[i].mean_envelope_v > curve[i + 1].mean_envelope_v;

    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "worst corr=%.5f (> 0.97), amplitude strictly decreasing over %d seeds: %s",
                  worst_corr, n_seeds, monotone ? "yes" : "NO");
    outcome(2, "distance robustness", all_corr && monotone, detail);
}

// -------------------------------------------------------------------------
// 3. divider limit of the full transfer
// -------------------------------------------------------------------------
void criterion_3() {
    SplitMix rng{20260809};
    int checked = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        circuit::ChannelParams p;
        p.c_g_tx_f = rng.uniform(0.2e-12, 20e-12);
        p.c_csg_f = rng.uniform(2e-12, 300e-12);
        p.c_l_f = rng.uniform(0.0, 80e-12);
        p.r_l_ohm = std::numeric_limits<double>::infinity();
        const double f = rng.uniform(50e3, 1e6);
        const double omega = 2.0 * std::numbers::pi * f;
        const double budget = 0.01 / (omega * p.c_csg_f);
        p.z_skin = {rng.uniform(0.0, 0.33) * budget, 0.0};
        p.z_body_ohm = rng.uniform(0.0, 0.33) * budget;
        p.z_foot = {rng.uniform(0.0, 0.33) * budget, 0.0};

        const double series = p.z_skin.r_ohm + p.z_body_ohm + p.z_foot.r_ohm;
        if (!(series < budget)) continue;  // keep to the stated regime

        const double full = std::abs(circuit::full_transfer(p, f));
        const double simplified = circuit::simplified_gain(p);
        worst = std::max(worst, std::fabs(full - simplified) / simplified);
        ++checked;
    }
    char detail[160];
    std::snprintf(detail, sizeof detail, "%d parameter sets, worst relative error %.3g (< 0.01)",
                  checked, worst);
    outcome(3, "divider limit", checked >= 900 && worst < 0.01, detail);
}

// -------------------------------------------------------------------------
// 4. filter compliance
// -------------------------------------------------------------------------
void criterion_4() {
    const rx::FilterSpec spec;
    bool pass = false;
    char detail[160];
    try {
        const rx::FirFilter fir = rx::design_bandpass(spec, 3.9e6);
        const double at_500k = fir.magnitude_db_at(500e3);
        const double at_300k = fir.magnitude_db_at(300e3);
        const double at_700k = fir.magnitude_db_at(700e3);
        pass = std::fabs(at_500k) <= 0.5 && at_300k <= -80.0 && at_700k <= -80.0;
        std::snprintf(detail, sizeof detail,
                      "500 kHz %+.3f dB (|.| <= 0.5), 300 kHz %.1f dB, 700 kHz %.1f dB (<= -80)",
                      at_500k, at_300k, at_700k);
    } catch (const Error& e) {
        std::snprintf(detail, sizeof detail, "design failed: %s", e.what());
    }
    outcome(4, "filter compliance", pass, detail);
}

// -------------------------------------------------------------------------
// 5. ECC exhaustive
// -------------------------------------------------------------------------
void criterion_5() {
    // Hamming(7,4): all 16 x 7 single-bit flips decode to the message
    const ecc::EccConfig hamming = ecc::EccConfig::hamming74();
    int corrected = 0;
    for (std::uint32_t msg = 0; msg < 16; ++msg) {
        std::vector<std::uint8_t> m(4);
        for (int b = 0; b < 4; ++b) m[static_cast<std::size_t>(b)] = (msg >> b) & 1u;
        const std::vector<std::uint8_t> cw = ecc::encode(m, hamming);
        for (int flip = 0; flip < 7; ++flip) {
            std::vector<std::uint8_t> rxw = cw;
            rxw[static_cast<std::size_t>(flip)] ^= 1;
            const ecc::DecodeResult dec = ecc::decode(rxw, hamming);
            if (dec.bits == m && dec.corrections == 1) ++corrected;
        }
    }

    // repetition-2: every constructed single-frame erasure recovers
    config::Scenario sc;
    sc.schedule.sense_s = 0.4;  // 200 payloads -> 400 frames
    sc.schedule.abc_tx_s = 1.0;
    sc.schedule.cycle_s = 3.0;
    sc.ecc_cfg = ecc::EccConfig::repetition(2);
    sc.impairments.awgn_rms_v = 0.0;
    sc.output = {};
    sc.output.write_plots = false;
    sc.output.write_decoded_trace = false;

    // erase the first copy of several payloads with zero-gain bursts
    const tx::CycleIntervals cycle = tx::schedule_cycle(sc.schedule, 0);
    const double airtime = 28.0 / sc.modem.bit_rate_bps;
    const std::vector<int> erased{0, 17, 99, 150, 199};
    for (int payload : erased) {
        const double start = cycle.abc_tx.begin_s +
                             2.0 * payload * sc.schedule.packet_period_s;  // copy 0 slot
        sc.impairments.bursts.push_back({start - 1e-5, airtime + 2e-5, 0.0});
    }

    const harness::RunOutcome run = harness::run_point(sc, 55);
    const bool recovered_all = run.decode.frames_lost == 0 &&
                               run.decoded_codes == run.reference &&
                               run.decode.recovered_by_redundancy >=
                                   static_cast<long>(erased.size());

    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "hamming 112/112 flips corrected: %s; repetition-2: %zu erasures, lost=%ld, "
                  "recovered=%ld",
                  corrected == 112 ? "yes" : "NO", erased.size(), run.decode.frames_lost,
                  run.decode.recovered_by_redundancy);
    outcome(5, "ecc exhaustive", corrected == 112 && recovered_all, detail);
}

// -------------------------------------------------------------------------
// 6. timing and throughput
// -------------------------------------------------------------------------
void criterion_6() {
    config::Scenario sc;
    ekg::EkgModelParams p = sc.ekg;
    p.seed = 7;
    const ekg::QuantizeResult q =
        ekg::quantize(ekg::synthesize(p, sc.schedule.sense_s), sc.volts_per_lsb);
    const bool payload_count = q.trace.codes.size() == 2500;

    const double airtime = 2500.0 * 28.0 / 25000.0;
    const bool airtime_fits = airtime == 2.8 && airtime <= 5.0;

    bool no_overlap = true;
    try {
        for (long k = 0; k < 100; ++k) {
            const tx::CycleIntervals c = tx::schedule_cycle(sc.schedule, k);
            if (c.sense.overlaps(c.abc_tx) || c.sense.overlaps(c.ble_tx)) no_overlap = false;
        }
    } catch (const Error&) {
        no_overlap = false;
    }

    // the burst builder accepts the full window at the stated constants
    bool burst_ok = true;
    try {
        const tx::Burst burst = tx::build_burst(q.trace.codes, sc.schedule, sc.modem,
                                                sc.ecc_cfg, 5.0);
        burst_ok = burst.frame_times_s.size() == 2500;
    } catch (const Error&) {
        burst_ok = false;
    }

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "payloads=%zu (2500), airtime %.1f s <= 5 s, 100 cycles overlap-free: %s",
                  q.trace.codes.size(), airtime, no_overlap ? "yes" : "NO");
    outcome(6, "timing/throughput", payload_count && airtime_fits && no_overlap && burst_ok,
            detail);
}

// -------------------------------------------------------------------------
// 7. power accounting
// -------------------------------------------------------------------------
void criterion_7() {
    const metrics::EnergyReport e =
        metrics::energy_report(metrics::PowerModel{}, tx::TdmSchedule{});
    const bool pass = e.power_ratio == 59.0 && e.power_ratio > 50.0 &&
                      e.abc_energy_per_cycle_mj == 2.5;
    char detail[120];
    std::snprintf(detail, sizeof detail, "ratio=%.17g (59, > 50), abc energy=%.17g mJ (2.5)",
                  e.power_ratio, e.abc_energy_per_cycle_mj);
    outcome(7, "power accounting", pass, detail);
}

// -------------------------------------------------------------------------
// 8. BER monotonicity over an SNR sweep
// -------------------------------------------------------------------------
void criterion_8() {
    const auto t0 = Clock::now();

    // random 24-bit payloads, >= 1e5 payload bits per point
    const int n_codes = 4200;  // 4200*24 = 100800 payload bits, 193200 channel bits
    SplitMix rng{777};
    std::vector<std::int32_t> codes(n_codes);
    for (auto& c : codes)
        c = static_cast<std::int32_t>(rng.next() % 0x1000000u) - 0x800000;

    tx::TdmSchedule schedule;
    schedule.sense_s = 8.4;
    schedule.abc_tx_s = 5.2;
    schedule.cycle_s = 15.0;
    const tx::ModemParams modem;
    rx::FilterSpec filter;
    filter.transition_hz = 100e3;  // fewer taps, still <= -80 dB at 300/700 kHz

    const tx::CycleIntervals cycle = tx::schedule_cycle(schedule, 0);
    const tx::Burst burst = tx::build_burst(codes, schedule, modem,
                                            ecc::EccConfig::none_config(),
                                            cycle.abc_tx.begin_s);
    const circuit::ChannelParams params;
    const rx::RxPipeline pipeline(filter, modem, ecc::EccConfig::none_config(),
                                  burst.frame_period_s, cycle.abc_tx.begin_s);

    const std::vector<double> snrs{0, 4, 8, 12, 16, 20, 24, 28};
    std::vector<double> bers;
    for (std::size_t i = 0; i < snrs.size(); ++i) {
        channel::ImpairmentConfig imp;
        imp.seed = 9000 + i;
        imp.awgn_rms_v = channel::awgn_rms_for_snr_db(burst.wave, params, imp, snrs[i]);
        const Waveform rxw = channel::propagate(burst.wave, params, imp);
        rx::DecodeReport report;
        try {
            report = pipeline.decode(rxw);
        } catch (const NoSignalError&) {
            // below the detection floor: treat as total loss
        }
        bers.push_back(metrics::bit_error_rate(report, codes));
    }

    // monotone non-increasing within the binomial 95% band
    const double n_bits = n_codes * 24.0;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < bers.size(); ++i) {
        const double p0 = bers[i], p1 = bers[i + 1];
        const double sigma =
            std::sqrt(std::max(p0 * (1 - p0), 1e-12) / n_bits +
                      std::max(p1 * (1 - p1), 1e-12) / n_bits);
        if (p1 > p0 + 1.96 * sigma) monotone = false;
    }
    const double elapsed = seconds_since(t0);

    std::ostringstream curve;
    for (double b : bers) curve << " " << b;
    char detail[320];
    std::snprintf(detail, sizeof detail, "ber:%s | %.0f s (< 300 s)", curve.str().c_str(),
                  elapsed);
    outcome(8, "ber monotonicity", monotone && elapsed < 300.0, detail);
}

// -------------------------------------------------------------------------
// 9. determinism
// -------------------------------------------------------------------------
bool files_identical(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str() && !sa.str().empty();
}

void criterion_9() {
    config::Scenario sc;
    sc.name = "determinism";
    sc.schedule.sense_s = 0.5;
    sc.schedule.abc_tx_s = 1.0;
    sc.schedule.cycle_s = 3.0;
    sc.seed = 31415;

    sc.out_dir = "acceptance_out/det_a";
    harness::run_scenario(sc);
    sc.out_dir = "acceptance_out/det_b";
    harness::run_scenario(sc);

    const bool report_same = files_identical("acceptance_out/det_a/determinism_report.csv",
                                             "acceptance_out/det_b/determinism_report.csv");
    const bool trace_same = files_identical("acceptance_out/det_a/determinism_decoded.csv",
                                            "acceptance_out/det_b/determinism_decoded.csv");
    char detail[120];
    std::snprintf(detail, sizeof detail, "report csv identical: %s, decoded csv identical: %s",
                  report_same ? "yes" : "NO", trace_same ? "yes" : "NO");
    outcome(9, "determinism", report_same && trace_same, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
