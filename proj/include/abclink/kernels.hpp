#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace abclink::kernels {

// ---------------------------------------------------------------------------
// Counter-based RNG.
//
// Every random value is a pure function of (seed, index), so parallel loops
// produce the same stream for any thread count and schedule. Gaussian draws
// use Box-Muller on two hashed uniforms.
// ---------------------------------------------------------------------------

std::uint64_t mix64(std::uint64_t x);

// uniform in (0, 1]
double uniform_at(std::uint64_t seed, std::uint64_t index);

// standard normal
double gaussian_at(std::uint64_t seed, std::uint64_t index);

// ---------------------------------------------------------------------------
// Deterministic reductions.
//
// Sums are accumulated per fixed-size block and the block partials are
// combined in block order, so the result does not depend on the thread count.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kReductionBlock = 8192;

double block_sum(std::span<const float> x);
double block_sum_sq(std::span<const float> x);

struct TwoMeans {
    double low = 0.0;
    double high = 0.0;
};

// 2-means clustering of non-negative envelope samples. Initial centers are the
// min/max of the data; fixed iteration count keeps the result deterministic.
TwoMeans two_means(std::span<const float> x, int iterations = 32);

// Exact k-th order statistic (used for the noise-floor median).
float order_statistic(std::span<const float> x, std::size_t k);

// ---------------------------------------------------------------------------
// Signal kernels (OpenMP). Each output sample is computed independently with
// a fixed-order inner accumulation, so results are thread-count invariant.
// The serial twins in kernels::reference are the oracles for these.
// ---------------------------------------------------------------------------

// y[i] = sum_j taps[j] * x[i-j], zero-padded history (causal FIR).
void fir_apply(std::span<const float> x, std::span<const double> taps, std::span<float> y);

// y[i] = mean(|x[i-window+1 .. i]|), zero-padded history.
void rectified_moving_average(std::span<const float> x, int window, std::span<float> y);

// x[i] += rms * gaussian_at(seed, index0 + i)
void add_gaussian_noise(std::span<float> x, double rms, std::uint64_t seed,
                        std::uint64_t index0 = 0);

struct GainSegment {
    std::size_t begin = 0;  // sample range [begin, end)
    std::size_t end = 0;
    double gain = 1.0;
};

// x[i] *= gain of the segment containing i. Segments must be disjoint,
// ordered, and cover [0, x.size()).
void scale_by_segments(std::span<float> x, std::span<const GainSegment> segments);

// ---------------------------------------------------------------------------
// Serial reference implementations, kept for tests and the benchmark target.
// ---------------------------------------------------------------------------
namespace reference {

double block_sum(std::span<const float> x);
double block_sum_sq(std::span<const float> x);
TwoMeans two_means(std::span<const float> x, int iterations = 32);
void fir_apply(std::span<const float> x, std::span<const double> taps, std::span<float> y);
void rectified_moving_average(std::span<const float> x, int window, std::span<float> y);
void add_gaussian_noise(std::span<float> x, double rms, std::uint64_t seed,
                        std::uint64_t index0 = 0);
void scale_by_segments(std::span<float> x, std::span<const GainSegment> segments);

}  // namespace reference

}  // namespace abclink::kernels
