#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abclink/ecc.hpp"
#include "abclink/errors.hpp"
#include "abclink/waveform.hpp"

namespace abclink::tx {

inline constexpr int kPayloadBits = 24;
inline constexpr int kStartStopBits = 2;  // each side, all ones

/// 28-bit on-wire packet: start bits 11, 24-bit payload, stop bits 11.
struct Frame {
    std::uint32_t payload = 0;  // 24-bit two's-complement pattern
};

struct Interval {
    double begin_s = 0.0;
    double end_s = 0.0;
    bool contains(double t) const { return t >= begin_s && t < end_s; }
    bool overlaps(const Interval& o) const { return begin_s < o.end_s && o.begin_s < end_s; }
};

/// Time-multiplexed cycle: sense, then ABC + BLE transmit windows.
struct TdmSchedule {
    double sense_s = 5.0;
    double abc_tx_s = 5.0;
    double cycle_s = 15.0;
    double packet_period_s = 2e-3;

    void check_valid() const;  // throws ScheduleError
};

struct CycleIntervals {
    Interval sense;
    Interval abc_tx;
    Interval ble_tx;
};

CycleIntervals schedule_cycle(const TdmSchedule& s, long cycle_index);

struct ModemParams {
    double carrier_hz = 500e3;
    double duty = 0.5;
    double bit_rate_bps = 25e3;
    double tx_amplitude_v = 3.3;      // TX pin swing 0..A; channel sees +/-A/2
    double sim_sample_rate_hz = 3.9e6;
    double ble_min_bandwidth_bps = 45e3;  // protocol metadata for reporting

    int samples_per_bit() const;  // throws ConfigError unless integral
    void check_valid() const;
};

// frame/deframe (spec bit order: MSB first inside the payload)
std::vector<std::uint8_t> frame_bits(std::uint32_t payload24, const ecc::EccConfig& cfg);
std::uint32_t deframe_bits(std::span<const std::uint8_t> bits,
                           const ecc::EccConfig& cfg,
                           int* corrections = nullptr,
                           int* uncorrectable = nullptr);  // throws FrameError

inline std::vector<std::uint8_t> frame_bits(std::uint32_t payload24) {
    return frame_bits(payload24, ecc::EccConfig::none_config());
}

/// Total on-wire bits per frame for the given ECC scheme.
int frame_bit_count(const ecc::EccConfig& cfg);

/// OOK: bit 1 keys the square carrier on, bit 0 keys it off. The carrier
/// phase is a function of absolute sample index (phase_origin + n), so bursts
/// assembled from many frames stay phase-continuous.
Waveform ook_modulate(std::span<const std::uint8_t> bits, const ModemParams& m,
                      double start_time_s = 0.0, std::int64_t phase_origin = 0);

struct Burst {
    Waveform wave;                        // spans the whole ABC window
    std::vector<double> frame_times_s;    // start of each emitted frame
    std::vector<std::uint32_t> frame_payloads;  // per emitted frame (incl. copies)
    int frame_bits = 0;
    double frame_period_s = 0.0;          // actual pacing used
};

/// Frame, pace, and modulate one sense window's payloads into the ABC window.
/// Repetition ECC emits k copies of each frame in consecutive slots.
Burst build_burst(std::span<const std::int32_t> payload_codes, const TdmSchedule& s,
                  const ModemParams& m, const ecc::EccConfig& cfg,
                  double window_start_s = 0.0);  // throws WindowOverflowError

// Ideal lossless reference channel: codes as a delimited decimal string.
std::string ble_reference_encode(std::span<const std::int32_t> codes);
std::vector<std::int32_t> ble_reference_decode(std::string_view text);  // throws ParseError

}  // namespace abclink::tx
