#pragma once

#include <cstdint>
#include <vector>

#include "abclink/circuit.hpp"
#include "abclink/kernels.hpp"
#include "abclink/waveform.hpp"

namespace abclink::channel {

/// Multiplicative dropout (improper contact, jumps): gain in [0,1] over a span.
struct BurstEvent {
    double start_s = 0.0;
    double duration_s = 0.0;
    double gain = 0.0;

    double end_s() const { return start_s + duration_s; }
};

/// Piecewise-constant raised-foot distance, in effect from start_s onward.
struct DistanceStep {
    double start_s = 0.0;
    double distance_m = 0.0;
};

struct ImpairmentConfig {
    double awgn_rms_v = 1.5e-3;
    std::vector<BurstEvent> bursts;
    std::vector<DistanceStep> distance_schedule;  // sorted by start_s
    circuit::FootGeometry foot;                   // interprets schedule distances
    std::uint64_t seed = 0;

    void check_valid() const;  // throws ConfigError
};

/// Per-sample gain plan for a waveform: circuit gain per distance segment
/// times any active burst multipliers. Exposed so tests can cross-check the
/// propagation against independently computed transfer magnitudes.
std::vector<kernels::GainSegment> gain_plan(const Waveform& tx,
                                            const circuit::ChannelParams& params,
                                            const ImpairmentConfig& imp);

/// Apply the channel: memoryless carrier-frequency gain per segment, burst
/// multipliers, then additive white Gaussian noise. Deterministic per seed.
Waveform propagate(const Waveform& tx, const circuit::ChannelParams& params,
                   const ImpairmentConfig& imp);

/// Ratio of carrier-band signal power during ON bits to the noise power that
/// falls in [band_low, band_high]. Returns +inf when awgn_rms is zero.
double snr_at_receiver_db(const Waveform& tx, const circuit::ChannelParams& params,
                          const ImpairmentConfig& imp, double duty = 0.5,
                          double band_low_hz = 400e3, double band_high_hz = 600e3);
// throws UndefinedSnrError if the waveform has no ON samples

/// Noise level that produces the requested in-band SNR for this transmission.
double awgn_rms_for_snr_db(const Waveform& tx, const circuit::ChannelParams& params,
                           const ImpairmentConfig& imp, double snr_db, double duty = 0.5,
                           double band_low_hz = 400e3, double band_high_hz = 600e3);

}  // namespace abclink::channel
