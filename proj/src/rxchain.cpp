#include "abclink/rxchain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "abclink/kernels.hpp"

namespace abclink::rx {

// ---------------------------------------------------------------------------
// filter design
// ---------------------------------------------------------------------------

void FilterSpec::check_valid() const {
    if (!(passband_low_hz > 0) || !(passband_high_hz > passband_low_hz))
        throw ConfigError("filter: passband edges must satisfy 0 < low < high");
    if (!(stopband_atten_db > 0)) throw ConfigError("filter: stopband attenuation must be > 0");
    if (!(passband_ripple_db > 0)) throw ConfigError("filter: passband ripple must be > 0");
    if (!(transition_hz > 0)) throw ConfigError("filter: transition width must be > 0");
}

namespace {

double bessel_i0(double x) {
    // power series; converges quickly for the beta range used here
    double sum = 1.0, term = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

FirFilter design_bandpass(const FilterSpec& spec, double sample_rate_hz) {
    spec.check_valid();
    const double nyquist = sample_rate_hz / 2.0;
    if (spec.passband_high_hz + spec.transition_hz >= nyquist)
        throw InfeasibleFilterError("filter: passband plus transition exceeds Nyquist");
    if (spec.passband_low_hz - spec.transition_hz <= 0)
        throw InfeasibleFilterError("filter: lower transition reaches DC");

    // design with headroom over the spec so the measured response clears it
    const double atten = spec.stopband_atten_db + 5.0;
    double beta = 0.0;
    if (atten > 50.0) {
        beta = 0.1102 * (atten - 8.7);
    } else if (atten >= 21.0) {
        beta = 0.5842 * std::pow(atten - 21.0, 0.4) + 0.07886 * (atten - 21.0);
    }
    const double d_omega = 2.0 * std::numbers::pi * spec.transition_hz / sample_rate_hz;
    auto n_taps = static_cast<std::size_t>(std::ceil((atten - 7.95) / (2.285 * d_omega))) + 1;
    if (n_taps % 2 == 0) ++n_taps;  // type-I linear phase
    if (n_taps > 200001) throw InfeasibleFilterError("filter: tap count is impractical");

    // cutoffs at mid-transition
    const double fc1 = (spec.passband_low_hz - spec.transition_hz / 2.0) / sample_rate_hz;
    const double fc2 = (spec.passband_high_hz + spec.transition_hz / 2.0) / sample_rate_hz;

    FirFilter fir;
    fir.sample_rate_hz = sample_rate_hz;
    fir.taps.resize(n_taps);
    const auto mid = static_cast<std::ptrdiff_t>(n_taps / 2);
    const double inv_i0 = 1.0 / bessel_i0(beta);
    for (std::ptrdiff_t n = 0; n <= mid; ++n) {
        const double k = static_cast<double>(n - mid);
        const double ideal = 2.0 * fc2 * sinc(2.0 * fc2 * k) - 2.0 * fc1 * sinc(2.0 * fc1 * k);
        const double r = k / static_cast<double>(mid);
        const double window = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) * inv_i0;
        const double tap = ideal * window;
        fir.taps[static_cast<std::size_t>(n)] = tap;
        fir.taps[n_taps - 1 - static_cast<std::size_t>(n)] = tap;  // exact symmetry
    }

    // verify the realized response against the spec at the probe frequencies
    if (fir.magnitude_db_at(spec.passband_low_hz - spec.transition_hz) >
            -spec.stopband_atten_db ||
        fir.magnitude_db_at(spec.passband_high_hz + spec.transition_hz) >
            -spec.stopband_atten_db ||
        std::fabs(fir.magnitude_db_at(0.5 * (spec.passband_low_hz + spec.passband_high_hz))) >
            spec.passband_ripple_db)
        throw InfeasibleFilterError("filter: designed response misses the spec");
    return fir;
}

std::complex<double> FirFilter::response_at(double f_hz) const {
    const double omega = 2.0 * std::numbers::pi * f_hz / sample_rate_hz;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < taps.size(); ++n) {
        const double ph = omega * static_cast<double>(n);
        acc += taps[n] * std::complex<double>{std::cos(ph), -std::sin(ph)};
    }
    return acc;
}

double FirFilter::magnitude_db_at(double f_hz) const {
    return 20.0 * std::log10(std::abs(response_at(f_hz)));
}

Waveform filter_apply(const FirFilter& fir, const Waveform& in) {
    Waveform out;
    out.sample_rate_hz = in.sample_rate_hz;
    out.start_time_s = in.start_time_s;
    out.samples.resize(in.samples.size());
    kernels::fir_apply(in.samples, fir.taps, out.samples);
    return out;
}

// ---------------------------------------------------------------------------
// envelope
// ---------------------------------------------------------------------------

int envelope_window(const tx::ModemParams& m) {
    return std::max(1, static_cast<int>(std::lround(2.0 * m.sim_sample_rate_hz / m.carrier_hz)));
}

Waveform envelope(const Waveform& filtered, const tx::ModemParams& m) {
    Waveform out;
    out.sample_rate_hz = filtered.sample_rate_hz;
    out.start_time_s = filtered.start_time_s;
    out.samples.resize(filtered.samples.size());
    kernels::rectified_moving_average(filtered.samples, envelope_window(m), out.samples);
    return out;
}

// ---------------------------------------------------------------------------
// slicer
// ---------------------------------------------------------------------------

namespace {

struct Pulse {
    std::size_t begin = 0;
    std::size_t end = 0;    // exclusive
    std::size_t edge = 0;   // local-threshold crossing
    double threshold = 0.0;
};

}  // namespace

SlicedBits threshold_and_slice(const Waveform& env, const tx::ModemParams& m) {
    const std::size_t n = env.samples.size();
    const auto spb = static_cast<std::size_t>(m.samples_per_bit());
    if (n < spb) throw NoSignalError("slicer: waveform shorter than one bit");

    // noise floor: carrier-off spans dominate the low quartile of a burst
    const float q25 = kernels::order_statistic(env.samples, n / 4);
    const double floor_v = std::max(2.0 * static_cast<double>(q25), 1e-30);
    const kernels::TwoMeans global = kernels::two_means(env.samples);
    // a real burst separates cleanly from the floor; noise-only clusters don't
    if (!(global.high > floor_v) || !(global.high > 3.0 * global.low))
        throw NoSignalError("slicer: no burst exceeds the noise floor");

    // carrier pulses: runs above the floor, merging sub-half-bit dips
    std::vector<Pulse> pulses;
    {
        const std::size_t merge_gap = spb / 2;
        std::size_t i = 0;
        while (i < n) {
            if (env.samples[i] > floor_v) {
                std::size_t j = i + 1;
                while (j < n && env.samples[j] > floor_v) ++j;
                if (!pulses.empty() && i - pulses.back().end < merge_gap) {
                    pulses.back().end = j;
                } else {
                    pulses.push_back({i, j, i, 0.0});
                }
                i = j;
            } else {
                ++i;
            }
        }
    }
    // discard spikes much shorter than a bit
    std::erase_if(pulses, [&](const Pulse& p) { return p.end - p.begin < spb / 4; });
    if (pulses.empty()) throw NoSignalError("slicer: no burst exceeds the noise floor");

    // local thresholds and edges (independent per pulse)
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(pulses.size()); ++pi) {
        Pulse& p = pulses[static_cast<std::size_t>(pi)];
        const std::size_t lo = p.begin > 2 * spb ? p.begin - 2 * spb : 0;
        const std::size_t hi = std::min(n, p.end + 2 * spb);
        const std::span<const float> ctx{env.samples.data() + lo, hi - lo};
        const kernels::TwoMeans local = kernels::two_means(ctx);
        double thr = 0.5 * (local.low + local.high);
        if (!(thr > floor_v)) thr = floor_v;

        // env crosses the floor at p.begin and the (higher) local threshold later
        std::size_t e = p.begin;
        for (std::size_t i = p.begin; i < p.end; ++i) {
            if (env.samples[i] >= thr) {
                e = i;
                break;
            }
        }
        p.edge = e;
        p.threshold = thr;
    }

    // compose the bit timeline anchored at the first edge
    const std::size_t e0 = pulses.front().edge;
    const std::size_t last_end = pulses.back().end;
    const std::size_t n_slots = (last_end - e0) / spb + 1;

    SlicedBits out;
    out.bit_period_s = static_cast<double>(spb) / env.sample_rate_hz;
    out.t0_s = env.start_time_s + static_cast<double>(e0) / env.sample_rate_hz;
    out.bits.assign(n_slots, 0);
    out.timestamps_s.resize(n_slots);
    out.envelope_at_bit.resize(n_slots);
    for (std::size_t s = 0; s < n_slots; ++s) {
        out.timestamps_s[s] = out.t0_s + (static_cast<double>(s) + 0.5) * out.bit_period_s;
        const std::size_t mid = std::min(n - 1, e0 + s * spb + spb / 2);
        out.envelope_at_bit[s] = env.samples[mid];
    }

    for (const Pulse& p : pulses) {
        const auto base =
            static_cast<std::size_t>(std::llround(static_cast<double>(p.edge - e0) / spb));
        for (std::size_t j = 0;; ++j) {
            const std::size_t mid = p.edge + j * spb + spb / 2;
            if (mid >= n || mid >= p.end + spb / 2) break;
            const std::size_t slot = base + j;
            if (slot >= n_slots) break;
            if (env.samples[mid] > p.threshold) {
                out.bits[slot] = 1;
                out.envelope_at_bit[slot] = env.samples[mid];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// frame sync + decode
// ---------------------------------------------------------------------------

DecodeReport sync_and_decode(const SlicedBits& sliced, const ecc::EccConfig& cfg,
                             const SyncParams& sync) {
    cfg.check_valid();
    DecodeReport report;
    const auto fb = static_cast<std::size_t>(tx::frame_bit_count(cfg));
    const std::size_t n = sliced.bits.size();
    const int copies = cfg.copies();

    struct RawFrame {
        std::int64_t slot = 0;
        double timestamp = 0.0;
        bool valid = false;
        std::uint32_t payload = 0;
        int corrections = 0;
        int uncorrectable = 0;
        double envelope_v = 0.0;
    };
    std::vector<RawFrame> raw;

    std::size_t idle_run = 2;  // stream start counts as idle
    std::size_t c = 0;
    while (c < n) {
        if (sliced.bits[c] == 0) {
            ++idle_run;
            ++c;
            continue;
        }
        const bool candidate = idle_run >= 2 && c + 1 < n && sliced.bits[c + 1] == 1;
        if (!candidate || c + fb > n) {
            idle_run = 0;
            ++c;
            continue;
        }

        RawFrame f;
        f.timestamp = sliced.t0_s + static_cast<double>(c) * sliced.bit_period_s;
        const double rel = f.timestamp - sync.pipeline_delay_s - sync.burst_start_s;
        f.slot = std::llround(rel / sync.frame_period_s);

        // frames sit on the pacing grid; reject starts that land mid-slot
        // (payload bit patterns can mimic "idle + start bits")
        const double slot_err =
            rel - std::round(rel / sync.frame_period_s) * sync.frame_period_s;
        if (std::fabs(slot_err) > 1.5 * sliced.bit_period_s) {
            idle_run = 0;
            ++c;
            continue;
        }

        if (sliced.bits[c + fb - 2] == 1 && sliced.bits[c + fb - 1] == 1) {
            int corrections = 0, uncorrectable = 0;
            const std::span<const std::uint8_t> window{sliced.bits.data() + c, fb};
            try {
                f.payload = tx::deframe_bits(window, cfg, &corrections, &uncorrectable);
                f.valid = true;
                f.corrections = corrections;
                f.uncorrectable = uncorrectable;
                double on_sum = 0.0;
                int on_cnt = 0;
                for (std::size_t j = 0; j < fb; ++j) {
                    if (sliced.bits[c + j]) {
                        on_sum += sliced.envelope_at_bit[c + j];
                        ++on_cnt;
                    }
                }
                f.envelope_v = on_cnt ? on_sum / on_cnt : 0.0;
            } catch (const FrameError&) {
                f.valid = false;
            }
        }

        if (f.valid) {
            raw.push_back(f);
            ++report.frames_detected;
            report.corrections_applied += f.corrections;
            report.uncorrectable_blocks += f.uncorrectable;
            c += fb;
            idle_run = 0;
        } else {
            raw.push_back(f);
            ++report.frame_errors;
            idle_run = 0;
            ++c;
        }
    }

    // group pacing slots into payload indices; first valid copy wins
    std::map<std::int64_t, std::vector<RawFrame>> groups;
    for (const RawFrame& f : raw) {
        if (f.slot < 0) continue;
        groups[f.slot / copies].push_back(f);
    }
    for (const auto& [index, members] : groups) {
        // copies are keyed by their pacing slot; a missing copy stays invalid
        std::vector<ecc::FrameCopy> fc(static_cast<std::size_t>(copies));
        for (const RawFrame& f : members) {
            const auto copy = static_cast<std::size_t>(f.slot % copies);
            if (f.valid && !fc[copy].valid) fc[copy] = {true, f.payload};
        }
        const ecc::MergeResult merged = ecc::merge_repetition_copies(fc);
        if (!merged.decoded) continue;

        const RawFrame* winner = nullptr;
        for (const RawFrame& f : members) {
            if (f.valid && f.payload == merged.payload) {
                winner = &f;
                break;
            }
        }
        if (!winner) continue;
        DecodedFrame out;
        out.index = index;
        out.payload = merged.payload;
        out.timestamp_s = winner->timestamp;
        out.corrections = winner->corrections;
        out.envelope_v = winner->envelope_v;
        out.recovered_by_redundancy = merged.recovered_by_redundancy;
        if (merged.recovered_by_redundancy) ++report.recovered_by_redundancy;
        report.frames.push_back(out);
    }
    return report;
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

RxPipeline::RxPipeline(const FilterSpec& spec, const tx::ModemParams& m,
                       const ecc::EccConfig& e, double frame_period_s, double burst_start_s)
    : fir(design_bandpass(spec, m.sim_sample_rate_hz)), modem(m), ecc_cfg(e) {
    sync.frame_period_s = frame_period_s;
    sync.burst_start_s = burst_start_s;
    sync.pipeline_delay_s = pipeline_delay_s();
}

double RxPipeline::pipeline_delay_s() const {
    const double ma_delay = 0.5 * static_cast<double>(envelope_window(modem) - 1);
    return (fir.group_delay_samples() + ma_delay) / modem.sim_sample_rate_hz;
}

DecodeReport RxPipeline::decode(const Waveform& rx) const {
    const Waveform filtered = filter_apply(fir, rx);
    const Waveform env = envelope(filtered, modem);
    const SlicedBits sliced = threshold_and_slice(env, modem);
    return sync_and_decode(sliced, ecc_cfg, sync);
}

}  // namespace abclink::rx
