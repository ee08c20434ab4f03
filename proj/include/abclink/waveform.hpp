#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "abclink/errors.hpp"

namespace abclink {

/// Uniformly sampled real-valued voltage signal.
/// Samples are stored as float32 (the on-disk format); all arithmetic that
/// accumulates over samples is done in double.
struct Waveform {
    double sample_rate_hz = 0.0;
    double start_time_s = 0.0;
    std::vector<float> samples;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
    double time_at(std::size_t i) const {
        return start_time_s + static_cast<double>(i) / sample_rate_hz;
    }

    void check_valid() const {
        if (!(sample_rate_hz > 0.0)) throw Error("waveform: sample_rate must be > 0");
        for (float v : samples) {
            if (!std::isfinite(v)) throw Error("waveform: non-finite sample");
        }
    }
};

}  // namespace abclink
