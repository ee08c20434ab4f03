// Benchmarks the OpenMP kernels against their serial reference twins.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "abclink/kernels.hpp"

using namespace abclink;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-26s serial %8.1f ms   omp %8.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    constexpr std::size_t n = 8'000'000;
    std::printf("kernel benchmark: %zu samples, %d threads\n", n, omp_get_max_threads());

    std::vector<float> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = static_cast<float>(kernels::gaussian_at(42, i));

    // FIR
    std::vector<double> taps(301);
    for (std::size_t i = 0; i < taps.size(); ++i)
        taps[i] = 1.0 / static_cast<double>(taps.size());
    std::vector<float> y_ref(n), y_omp(n);
    const double fir_s = time_ms([&] { kernels::reference::fir_apply(x, taps, y_ref); });
    const double fir_p = time_ms([&] { kernels::fir_apply(x, taps, y_omp); });
    report("fir_apply (301 taps)", fir_s, fir_p);

    // envelope
    const double env_s =
        time_ms([&] { kernels::reference::rectified_moving_average(x, 16, y_ref); });
    const double env_p = time_ms([&] { kernels::rectified_moving_average(x, 16, y_omp); });
    report("rectified_moving_average", env_s, env_p);

    // noise
    std::vector<float> n_ref(x), n_omp(x);
    const double awgn_s =
        time_ms([&] { kernels::reference::add_gaussian_noise(n_ref, 1e-3, 7); });
    const double awgn_p = time_ms([&] { kernels::add_gaussian_noise(n_omp, 1e-3, 7); });
    report("add_gaussian_noise", awgn_s, awgn_p);

    // clustering
    kernels::TwoMeans tm_ref{}, tm_omp{};
    const double km_s = time_ms([&] { tm_ref = kernels::reference::two_means(y_ref); });
    const double km_p = time_ms([&] { tm_omp = kernels::two_means(y_omp); });
    report("two_means", km_s, km_p);

    std::printf("two_means agreement: ref(%.6g, %.6g) omp(%.6g, %.6g)\n", tm_ref.low,
                tm_ref.high, tm_omp.low, tm_omp.high);
    return 0;
}
