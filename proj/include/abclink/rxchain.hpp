#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "abclink/ecc.hpp"
#include "abclink/errors.hpp"
#include "abclink/txchain.hpp"
#include "abclink/waveform.hpp"

namespace abclink::rx {

struct FilterSpec {
    double passband_low_hz = 400e3;
    double passband_high_hz = 600e3;
    double stopband_atten_db = 80.0;
    double passband_ripple_db = 0.5;
    double transition_hz = 50e3;

    void check_valid() const;  // throws ConfigError
};

struct FirFilter {
    std::vector<double> taps;  // symmetric (linear phase)
    double sample_rate_hz = 0.0;

    double group_delay_samples() const {
        return 0.5 * static_cast<double>(taps.size() - 1);
    }
    std::complex<double> response_at(double f_hz) const;
    double magnitude_db_at(double f_hz) const;
};

/// Kaiser-window linear-phase FIR meeting the spec, cutoffs at mid-transition.
FirFilter design_bandpass(const FilterSpec& spec, double sample_rate_hz);
// throws InfeasibleFilterError

Waveform filter_apply(const FirFilter& fir, const Waveform& in);

/// Moving-average span used by the envelope detector: two carrier periods.
int envelope_window(const tx::ModemParams& m);

/// Full-wave rectification followed by a moving average over two carrier
/// periods. Output is non-negative.
Waveform envelope(const Waveform& filtered, const tx::ModemParams& m);

/// Bit decisions on a uniform bit grid anchored at the first rising edge.
/// Idle spans between carrier pulses appear as 0 bits (carrier off).
struct SlicedBits {
    std::vector<std::uint8_t> bits;
    std::vector<double> timestamps_s;     // mid-bit instants, absolute
    std::vector<float> envelope_at_bit;   // envelope sample at each mid-bit
    double bit_period_s = 0.0;
    double t0_s = 0.0;                    // first rising edge, absolute
};

/// Adaptive slicer: noise floor from the envelope median, per-pulse threshold
/// as the midpoint of local 2-means clusters, per-pulse bit clock from the
/// pulse's own rising edge.
SlicedBits threshold_and_slice(const Waveform& env, const tx::ModemParams& m);
// throws NoSignalError

struct DecodedFrame {
    std::int64_t index = 0;      // payload index (pacing slot / repetition copies)
    double timestamp_s = 0.0;    // detected frame start (uncompensated for delay)
    std::uint32_t payload = 0;
    int corrections = 0;
    double envelope_v = 0.0;     // mean ON-bit envelope inside the frame
    bool recovered_by_redundancy = false;
};

struct DecodeReport {
    std::vector<DecodedFrame> frames;  // merged over repetition copies
    long frames_detected = 0;          // raw frames that validated
    long frame_errors = 0;             // sync hits with bad stop bits
    long corrections_applied = 0;      // block-code single-bit corrections
    long uncorrectable_blocks = 0;
    long recovered_by_redundancy = 0;
    long frames_lost = 0;              // filled once a reference is available
};

struct SyncParams {
    double frame_period_s = 2e-3;   // pacing used by the transmitter
    double burst_start_s = 0.0;     // nominal start of the transmit window
    double pipeline_delay_s = 0.0;  // filter + envelope group delay
};

/// Frame search over the sliced bit grid: a start "11" must follow at least
/// two idle bit periods; the frame window is fixed-length; stop bits are
/// validated; block ECC is applied; repetition copies merge first-valid-wins.
DecodeReport sync_and_decode(const SlicedBits& sliced, const ecc::EccConfig& cfg,
                             const SyncParams& sync);

/// End-to-end receiver with the stage plumbing (delay bookkeeping) resolved.
struct RxPipeline {
    FirFilter fir;
    tx::ModemParams modem;
    ecc::EccConfig ecc_cfg;
    SyncParams sync;

    RxPipeline(const FilterSpec& spec, const tx::ModemParams& m, const ecc::EccConfig& e,
               double frame_period_s, double burst_start_s);

    double pipeline_delay_s() const;
    DecodeReport decode(const Waveform& rx) const;
};

}  // namespace abclink::rx
