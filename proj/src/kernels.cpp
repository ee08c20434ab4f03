#include "abclink/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace abclink::kernels {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform_at(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t h = mix64(seed ^ mix64(index));
    // 53 significant bits, shifted into (0, 1]
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

double gaussian_at(std::uint64_t seed, std::uint64_t index) {
    const double u1 = uniform_at(seed, 2 * index);
    const double u2 = uniform_at(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// ---------------------------------------------------------------------------
// blocked reductions
// ---------------------------------------------------------------------------

namespace {

template <class BlockFn>
double blocked_reduce(std::size_t n, BlockFn&& fn) {
    const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t hi = std::min(lo + kReductionBlock, n);
        partial[static_cast<std::size_t>(b)] = fn(lo, hi);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

struct ClusterSums {
    double sum_lo = 0.0, sum_hi = 0.0;
    std::size_t n_lo = 0, n_hi = 0;
};

template <bool Parallel>
TwoMeans two_means_impl(std::span<const float> x, int iterations) {
    if (x.empty()) return {};
    double lo = x[0], hi = x[0];
    for (float v : x) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
    }
    if (lo == hi) return {lo, hi};

    double c_lo = lo, c_hi = hi;
    const std::size_t n = x.size();
    const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<ClusterSums> partial(nblocks);

    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (c_lo + c_hi);
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
            const std::size_t blo = static_cast<std::size_t>(b) * kReductionBlock;
            const std::size_t bhi = std::min(blo + kReductionBlock, n);
            ClusterSums s;
            for (std::size_t i = blo; i < bhi; ++i) {
                const double v = x[i];
                if (v < mid) {
                    s.sum_lo += v;
                    ++s.n_lo;
                } else {
                    s.sum_hi += v;
                    ++s.n_hi;
                }
            }
            partial[static_cast<std::size_t>(b)] = s;
        }
        ClusterSums total;
        for (const ClusterSums& s : partial) {
            total.sum_lo += s.sum_lo;
            total.sum_hi += s.sum_hi;
            total.n_lo += s.n_lo;
            total.n_hi += s.n_hi;
        }
        const double next_lo = total.n_lo ? total.sum_lo / static_cast<double>(total.n_lo) : c_lo;
        const double next_hi = total.n_hi ? total.sum_hi / static_cast<double>(total.n_hi) : c_hi;
        if (next_lo == c_lo && next_hi == c_hi) break;
        c_lo = next_lo;
        c_hi = next_hi;
    }
    return {c_lo, c_hi};
}

}  // namespace

double block_sum(std::span<const float> x) {
    return blocked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        return s;
    });
}

double block_sum_sq(std::span<const float> x) {
    return blocked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += static_cast<double>(x[i]) * x[i];
        return s;
    });
}

TwoMeans two_means(std::span<const float> x, int iterations) {
    return two_means_impl<true>(x, iterations);
}

float order_statistic(std::span<const float> x, std::size_t k) {
    assert(k < x.size());
    std::vector<float> tmp(x.begin(), x.end());
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k), tmp.end());
    return tmp[k];
}

// ---------------------------------------------------------------------------
// signal kernels
// ---------------------------------------------------------------------------

void fir_apply(std::span<const float> x, std::span<const double> taps, std::span<float> y) {
    assert(y.size() == x.size());
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const std::int64_t nt = static_cast<std::int64_t>(taps.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t jmax = std::min<std::int64_t>(nt - 1, i);
        double acc = 0.0;
        for (std::int64_t j = 0; j <= jmax; ++j) {
            acc += taps[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(i - j)];
        }
        y[static_cast<std::size_t>(i)] = static_cast<float>(acc);
    }
}

void rectified_moving_average(std::span<const float> x, int window, std::span<float> y) {
    assert(window > 0);
    assert(y.size() == x.size());
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const double inv = 1.0 / window;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t jmin = std::max<std::int64_t>(0, i - window + 1);
        double acc = 0.0;
        for (std::int64_t j = jmin; j <= i; ++j) {
            acc += std::fabs(static_cast<double>(x[static_cast<std::size_t>(j)]));
        }
        y[static_cast<std::size_t>(i)] = static_cast<float>(acc * inv);
    }
}

void add_gaussian_noise(std::span<float> x, double rms, std::uint64_t seed,
                        std::uint64_t index0) {
    if (rms == 0.0) return;
    const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] += static_cast<float>(
            rms * gaussian_at(seed, index0 + static_cast<std::uint64_t>(i)));
    }
}

void scale_by_segments(std::span<float> x, std::span<const GainSegment> segments) {
    for (const GainSegment& seg : segments) {
        assert(seg.end <= x.size());
        const std::int64_t lo = static_cast<std::int64_t>(seg.begin);
        const std::int64_t hi = static_cast<std::int64_t>(seg.end);
        const float g = static_cast<float>(seg.gain);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = lo; i < hi; ++i) {
            x[static_cast<std::size_t>(i)] *= g;
        }
    }
}

// ---------------------------------------------------------------------------
// serial reference twins
// ---------------------------------------------------------------------------

namespace reference {

double block_sum(std::span<const float> x) {
    // same block order as the parallel kernel so results match exactly
    double total = 0.0;
    for (std::size_t lo = 0; lo < x.size(); lo += kReductionBlock) {
        const std::size_t hi = std::min(lo + kReductionBlock, x.size());
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        total += s;
    }
    return total;
}

double block_sum_sq(std::span<const float> x) {
    double total = 0.0;
    for (std::size_t lo = 0; lo < x.size(); lo += kReductionBlock) {
        const std::size_t hi = std::min(lo + kReductionBlock, x.size());
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += static_cast<double>(x[i]) * x[i];
        total += s;
    }
    return total;
}

TwoMeans two_means(std::span<const float> x, int iterations) {
    return two_means_impl<false>(x, iterations);
}

void fir_apply(std::span<const float> x, std::span<const double> taps, std::span<float> y) {
    assert(y.size() == x.size());
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const std::int64_t nt = static_cast<std::int64_t>(taps.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t jmax = std::min<std::int64_t>(nt - 1, i);
        double acc = 0.0;
        for (std::int64_t j = 0; j <= jmax; ++j) {
            acc += taps[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(i - j)];
        }
        y[static_cast<std::size_t>(i)] = static_cast<float>(acc);
    }
}

void rectified_moving_average(std::span<const float> x, int window, std::span<float> y) {
    assert(window > 0);
    assert(y.size() == x.size());
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const double inv = 1.0 / window;
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t jmin = std::max<std::int64_t>(0, i - window + 1);
        double acc = 0.0;
        for (std::int64_t j = jmin; j <= i; ++j) {
            acc += std::fabs(static_cast<double>(x[static_cast<std::size_t>(j)]));
        }
        y[static_cast<std::size_t>(i)] = static_cast<float>(acc * inv);
    }
}

void add_gaussian_noise(std::span<float> x, double rms, std::uint64_t seed,
                        std::uint64_t index0) {
    if (rms == 0.0) return;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += static_cast<float>(rms * gaussian_at(seed, index0 + i));
    }
}

void scale_by_segments(std::span<float> x, std::span<const GainSegment> segments) {
    for (const GainSegment& seg : segments) {
        assert(seg.end <= x.size());
        const float g = static_cast<float>(seg.gain);
        for (std::size_t i = seg.begin; i < seg.end; ++i) x[i] *= g;
    }
}

}  // namespace reference

}  // namespace abclink::kernels
