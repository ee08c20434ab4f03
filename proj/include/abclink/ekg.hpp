#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abclink/errors.hpp"

namespace abclink::ekg {

inline constexpr std::int32_t kCodeMax = (1 << 23) - 1;
inline constexpr std::int32_t kCodeMin = -(1 << 23);

/// One PQRST component: a Gaussian bump in beat phase.
struct WaveComponent {
    double amplitude_v = 0.0;
    double center_rad = 0.0;
    double width_rad = 0.1;
};

/// Sum-of-Gaussians morphology. Rodent-flavored defaults: fast heart rate,
/// dominant R wave around 1 mV at the skin surface.
struct EkgModelParams {
    double heart_rate_bpm = 360.0;
    WaveComponent p{0.10e-3, -1.0472, 0.20};
    WaveComponent q{-0.08e-3, -0.1963, 0.06};
    WaveComponent r{1.00e-3, 0.0, 0.07};
    WaveComponent s{-0.20e-3, 0.1963, 0.06};
    WaveComponent t{0.25e-3, 1.2566, 0.30};
    double baseline_noise_v = 10e-6;
    // beat phase at t=0; -pi puts the first R peak mid-way into the first beat
    double phase_offset_rad = -3.14159265358979323846;
    std::uint64_t seed = 1;

    void check_valid() const;
};

/// Continuous (pre-quantization) sampled trace.
struct ContinuousTrace {
    double sample_rate_hz = 500.0;
    std::vector<double> volts;
};

/// Timestamped 24-bit ADC codes with physical-unit scaling.
struct EkgTrace {
    double sample_rate_hz = 500.0;
    double volts_per_lsb = 3e-10;
    std::vector<std::int32_t> codes;

    double duration_s() const {
        return static_cast<double>(codes.size()) / sample_rate_hz;
    }
};

struct QuantizeResult {
    EkgTrace trace;
    long saturated_count = 0;  // samples clamped to the code range
};

/// Deterministic given the seed. Length is round(sample_rate * duration).
ContinuousTrace synthesize(const EkgModelParams& params, double duration_s,
                           double sample_rate_hz = 500.0);

/// Round-to-nearest quantization; out-of-range samples clamp and are counted.
QuantizeResult quantize(const ContinuousTrace& trace, double volts_per_lsb);

std::vector<double> dequantize(const EkgTrace& trace);

// CSV import/export, rows of "time,code,volts".
void write_csv(const EkgTrace& trace, const std::string& path);
EkgTrace read_csv(const std::string& path);

}  // namespace abclink::ekg
