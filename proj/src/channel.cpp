#include "abclink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace abclink::channel {

void ImpairmentConfig::check_valid() const {
    if (awgn_rms_v < 0) throw ConfigError("impairments: awgn_rms must be >= 0");
    for (const BurstEvent& b : bursts) {
        if (b.duration_s < 0) throw ConfigError("impairments: burst duration must be >= 0");
        if (b.gain < 0.0 || b.gain > 1.0)
            throw ConfigError("impairments: burst gain multiplier must be in [0,1]");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const DistanceStep& d : distance_schedule) {
        if (d.distance_m < 0) throw ConfigError("impairments: distance must be >= 0");
        if (d.start_s < prev)
            throw ConfigError("impairments: distance schedule must be sorted by start time");
        prev = d.start_s;
    }
}

namespace {

std::size_t clamp_index(double t_s, const Waveform& w) {
    const double rel = (t_s - w.start_time_s) * w.sample_rate_hz;
    const auto n = static_cast<double>(w.samples.size());
    const double clamped = std::clamp(rel, 0.0, n);
    return static_cast<std::size_t>(std::llround(clamped));
}

}  // namespace

std::vector<kernels::GainSegment> gain_plan(const Waveform& tx,
                                            const circuit::ChannelParams& params,
                                            const ImpairmentConfig& imp) {
    imp.check_valid();
    params.check_valid();
    const std::size_t n = tx.samples.size();

    // segment boundaries: waveform ends, distance steps, burst edges
    std::set<std::size_t> cuts{0, n};
    for (const DistanceStep& d : imp.distance_schedule) cuts.insert(clamp_index(d.start_s, tx));
    for (const BurstEvent& b : imp.bursts) {
        cuts.insert(clamp_index(b.start_s, tx));
        cuts.insert(clamp_index(b.end_s(), tx));
    }

    const std::vector<std::size_t> pts(cuts.begin(), cuts.end());
    std::vector<kernels::GainSegment> segments;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const std::size_t begin = pts[k];
        const std::size_t end = pts[k + 1];
        if (end <= begin) continue;
        const double t_mid =
            tx.start_time_s + (static_cast<double>(begin) + 0.5) / tx.sample_rate_hz;

        // active distance: last step that started at or before t_mid
        circuit::ChannelParams p = params;
        for (const DistanceStep& d : imp.distance_schedule) {
            if (d.start_s <= t_mid) {
                p = circuit::with_foot_distance(params, imp.foot, d.distance_m);
            } else {
                break;
            }
        }
        double g = std::abs(circuit::full_transfer(p, p.f_carrier_hz));
        for (const BurstEvent& b : imp.bursts) {
            if (b.start_s <= t_mid && t_mid < b.end_s()) g *= b.gain;
        }
        segments.push_back({begin, end, g});
    }
    return segments;
}

Waveform propagate(const Waveform& tx, const circuit::ChannelParams& params,
                   const ImpairmentConfig& imp) {
    const std::vector<kernels::GainSegment> plan = gain_plan(tx, params, imp);
    Waveform rx = tx;
    kernels::scale_by_segments(rx.samples, plan);
    kernels::add_gaussian_noise(rx.samples, imp.awgn_rms_v, imp.seed);
    return rx;
}

namespace {

/// Mean of (gain*tx)^2 over carrier-ON samples, blocked for determinism.
struct OnPower {
    double sum_sq = 0.0;
    std::size_t count = 0;
};

OnPower on_bit_power(const Waveform& tx, std::span<const kernels::GainSegment> plan) {
    const std::size_t n = tx.samples.size();
    const std::size_t nblocks = (n + kernels::kReductionBlock - 1) / kernels::kReductionBlock;
    std::vector<OnPower> partial(nblocks);

#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kernels::kReductionBlock;
        const std::size_t hi = std::min(lo + kernels::kReductionBlock, n);
        OnPower acc;
        // segment containing lo
        std::size_t seg = 0;
        while (seg < plan.size() && plan[seg].end <= lo) ++seg;
        for (std::size_t i = lo; i < hi; ++i) {
            while (seg < plan.size() && plan[seg].end <= i) ++seg;
            const double g = seg < plan.size() ? plan[seg].gain : 1.0;
            const double v = tx.samples[i];
            if (v != 0.0f) {
                acc.sum_sq += (g * v) * (g * v);
                ++acc.count;
            }
        }
        partial[static_cast<std::size_t>(b)] = acc;
    }
    OnPower total;
    for (const OnPower& p : partial) {
        total.sum_sq += p.sum_sq;
        total.count += p.count;
    }
    return total;
}

}  // namespace

double snr_at_receiver_db(const Waveform& tx, const circuit::ChannelParams& params,
                          const ImpairmentConfig& imp, double duty, double band_low_hz,
                          double band_high_hz) {
    const std::vector<kernels::GainSegment> plan = gain_plan(tx, params, imp);
    const OnPower on = on_bit_power(tx, plan);
    if (on.count == 0) throw UndefinedSnrError("snr: waveform has no ON bits");
    if (imp.awgn_rms_v == 0.0) return std::numeric_limits<double>::infinity();

    // square carrier of amplitude +/-B at duty d: fundamental power 8 B^2 sin^2(pi d)/pi^2,
    // and only the fundamental falls inside the receive band
    const double s = std::sin(std::numbers::pi * duty);
    const double band_factor = 8.0 * s * s / (std::numbers::pi * std::numbers::pi);
    const double p_signal = band_factor * on.sum_sq / static_cast<double>(on.count);

    const double nyquist = tx.sample_rate_hz / 2.0;
    const double band = std::max(0.0, std::min(band_high_hz, nyquist) - std::max(band_low_hz, 0.0));
    const double p_noise = imp.awgn_rms_v * imp.awgn_rms_v * band / nyquist;
    return 10.0 * std::log10(p_signal / p_noise);
}

double awgn_rms_for_snr_db(const Waveform& tx, const circuit::ChannelParams& params,
                           const ImpairmentConfig& imp, double snr_db, double duty,
                           double band_low_hz, double band_high_hz) {
    const std::vector<kernels::GainSegment> plan = gain_plan(tx, params, imp);
    const OnPower on = on_bit_power(tx, plan);
    if (on.count == 0) throw UndefinedSnrError("snr: waveform has no ON bits");

    const double s = std::sin(std::numbers::pi * duty);
    const double band_factor = 8.0 * s * s / (std::numbers::pi * std::numbers::pi);
    const double p_signal = band_factor * on.sum_sq / static_cast<double>(on.count);

    const double nyquist = tx.sample_rate_hz / 2.0;
    const double band = std::max(0.0, std::min(band_high_hz, nyquist) - std::max(band_low_hz, 0.0));
    const double p_noise_band = p_signal / std::pow(10.0, snr_db / 10.0);
    return std::sqrt(p_noise_band * nyquist / band);
}

}  // namespace abclink::channel
