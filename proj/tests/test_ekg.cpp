#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "abclink/ekg.hpp"
#include "oracle.hpp"

using namespace abclink;

TEST_CASE("null source yields a flat zero trace") {
    ekg::EkgModelParams p;
    p.p.amplitude_v = p.q.amplitude_v = p.r.amplitude_v = p.s.amplitude_v = p.t.amplitude_v = 0.0;
    p.baseline_noise_v = 0.0;
    const ekg::ContinuousTrace t = ekg::synthesize(p, 1.0);
    for (double v : t.volts) CHECK(v == 0.0);
}

TEST_CASE("same seed reproduces the trace, different seed does not") {
    ekg::EkgModelParams p;
    const ekg::ContinuousTrace a = ekg::synthesize(p, 1.0);
    const ekg::ContinuousTrace b = ekg::synthesize(p, 1.0);
    CHECK(a.volts == b.volts);

    ekg::EkgModelParams q = p;
    q.seed = p.seed + 1;
    const ekg::ContinuousTrace c = ekg::synthesize(q, 1.0);
    CHECK(a.volts != c.volts);
}

TEST_CASE("360 bpm over 5 s gives exactly 30 R peaks") {
    ekg::EkgModelParams p;
    p.baseline_noise_v = 0.0;  // peak counting oracle wants a clean trace
    const ekg::ContinuousTrace t = ekg::synthesize(p, 5.0);
    REQUIRE(t.volts.size() == 2500);
    // threshold halfway up the R wave, peaks at least half a beat apart
    const int peaks = oracle::count_peaks(t.volts, 0.5e-3, 500 / 6 / 2);
    CHECK(peaks == 30);
}

TEST_CASE("trace length is round(rate * duration)") {
    ekg::EkgModelParams p;
    CHECK(ekg::synthesize(p, 5.0).volts.size() == 2500);
    CHECK(ekg::synthesize(p, 0.5).volts.size() == 250);
}

TEST_CASE("quantizer basics") {
    ekg::ContinuousTrace t;
    t.sample_rate_hz = 500;
    t.volts = {0.0, 100e-9, -100e-9, 250e-9};
    const ekg::QuantizeResult q = ekg::quantize(t, 100e-9);
    CHECK(q.trace.codes[0] == 0);
    CHECK(q.trace.codes[1] == 1);
    CHECK(q.trace.codes[2] == -1);
    CHECK(q.trace.codes[3] == 3);  // round half away from zero
    CHECK(q.saturated_count == 0);
}

TEST_CASE("1 mV sine at 100 nV per LSB peaks at code 10000") {
    // 125 Hz at 500 S/s hits the sine extrema exactly
    ekg::ContinuousTrace t;
    t.sample_rate_hz = 500;
    t.volts.resize(2500);
    for (std::size_t i = 0; i < t.volts.size(); ++i)
        t.volts[i] = 1e-3 * std::sin(2.0 * std::numbers::pi * 125.0 * static_cast<double>(i) / 500.0);
    const ekg::QuantizeResult q = ekg::quantize(t, 100e-9);
    std::int32_t max_code = 0;
    for (std::int32_t c : q.trace.codes) max_code = std::max(max_code, c);
    CHECK(max_code == 10000);
}

TEST_CASE("dequantization error stays within half an LSB") {
    ekg::EkgModelParams p;
    const ekg::ContinuousTrace t = ekg::synthesize(p, 2.0);
    const double lsb = 3e-10;
    const ekg::QuantizeResult q = ekg::quantize(t, lsb);
    REQUIRE(q.saturated_count == 0);
    const std::vector<double> back = ekg::dequantize(q.trace);
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(std::fabs(back[i] - t.volts[i]) <= lsb / 2 + 1e-18);
}

TEST_CASE("saturation clamps and is counted") {
    ekg::ContinuousTrace t;
    t.sample_rate_hz = 500;
    t.volts = {1.0, -1.0, 0.0};  // far beyond 24-bit range at 1 nV/LSB
    const ekg::QuantizeResult q = ekg::quantize(t, 1e-9);
    CHECK(q.saturated_count == 2);
    CHECK(q.trace.codes[0] == ekg::kCodeMax);
    CHECK(q.trace.codes[1] == ekg::kCodeMin);
}

TEST_CASE("csv round trip preserves codes") {
    ekg::EkgModelParams p;
    const ekg::QuantizeResult q = ekg::quantize(ekg::synthesize(p, 0.2), 3e-10);
    const std::string path = "ekg_roundtrip_test.csv";
    ekg::write_csv(q.trace, path);
    const ekg::EkgTrace back = ekg::read_csv(path);
    CHECK(back.codes == q.trace.codes);
    CHECK(back.sample_rate_hz == doctest::Approx(500.0));
    std::remove(path.c_str());
}
