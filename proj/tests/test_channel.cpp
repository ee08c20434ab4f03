#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "abclink/channel.hpp"
#include "abclink/txchain.hpp"
#include "oracle.hpp"

using namespace abclink;

namespace {

Waveform alternating_burst(int n_bits) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_bits));
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = i % 2 == 0 ? 1 : 0;
    return tx::ook_modulate(bits, tx::ModemParams{});
}

channel::ImpairmentConfig clean_impairments() {
    channel::ImpairmentConfig imp;
    imp.awgn_rms_v = 0.0;
    return imp;
}

}  // namespace

TEST_CASE("noiseless contact channel is a pure gain") {
    const Waveform txw = alternating_burst(64);
    const circuit::ChannelParams params;
    const channel::ImpairmentConfig imp = clean_impairments();

    const Waveform rxw = channel::propagate(txw, params, imp);
    const auto gain = static_cast<float>(
        std::abs(circuit::full_transfer(params, params.f_carrier_hz)));
    REQUIRE(rxw.samples.size() == txw.samples.size());
    for (std::size_t i = 0; i < txw.samples.size(); ++i)
        CHECK(rxw.samples[i] == gain * txw.samples[i]);
}

TEST_CASE("zero-gain burst silences exactly its span") {
    const Waveform txw = alternating_burst(100);
    channel::ImpairmentConfig imp = clean_impairments();
    const double t1 = 20 * 156 / 3.9e6, t2 = 40 * 156 / 3.9e6;
    imp.bursts.push_back({t1, t2 - t1, 0.0});

    const Waveform rxw = channel::propagate(txw, circuit::ChannelParams{}, imp);
    const auto i1 = static_cast<std::size_t>(t1 * 3.9e6);
    const auto i2 = static_cast<std::size_t>(t2 * 3.9e6);
    for (std::size_t i = i1; i < i2; ++i) CHECK(rxw.samples[i] == 0.0f);
    double outside = 0.0;
    for (std::size_t i = 0; i < i1; ++i) outside += std::fabs(rxw.samples[i]);
    CHECK(outside > 0.0);
}

TEST_CASE("per-segment rms follows the transfer magnitudes across a distance sweep") {
    const Waveform txw = alternating_burst(600);  // 100 bits per segment
    channel::ImpairmentConfig imp = clean_impairments();
    const double seg_s = 100 * 156 / 3.9e6;
    const std::vector<double> dists{0.0, 1e-3, 2e-3, 4e-3, 8e-3, 16e-3};  // pos 6 -> 1
    for (std::size_t i = 0; i < dists.size(); ++i)
        imp.distance_schedule.push_back({static_cast<double>(i) * seg_s, dists[i]});

    const circuit::ChannelParams params;
    const Waveform rxw = channel::propagate(txw, params, imp);

    double prev_rms = std::numeric_limits<double>::infinity();
    const auto seg_n = static_cast<std::size_t>(seg_s * 3.9e6);
    for (std::size_t s = 0; s < dists.size(); ++s) {
        double acc = 0.0;
        for (std::size_t i = s * seg_n; i < (s + 1) * seg_n; ++i)
            acc += static_cast<double>(rxw.samples[i]) * rxw.samples[i];
        const double rms = std::sqrt(acc / static_cast<double>(seg_n));
        CHECK(rms < prev_rms);
        prev_rms = rms;

        // oracle: circuit transfer magnitude for this segment's foot state
        const circuit::ChannelParams seg_params =
            circuit::with_foot_distance(params, imp.foot, dists[s]);
        const double gain = std::abs(circuit::full_transfer(seg_params, params.f_carrier_hz));
        const double expected_rms = gain * 1.65;  // carrier is +/-A/2
        CHECK(rms == doctest::Approx(expected_rms).epsilon(2e-2));
    }
}

TEST_CASE("propagation is reproducible per seed and linear in the input") {
    const Waveform txw = alternating_burst(50);
    circuit::ChannelParams params;
    channel::ImpairmentConfig imp;
    imp.awgn_rms_v = 1e-3;
    imp.seed = 77;

    const Waveform a = channel::propagate(txw, params, imp);
    const Waveform b = channel::propagate(txw, params, imp);
    CHECK(a.samples == b.samples);

    // linearity with the noise subtracted (same seed reuses the same draws)
    Waveform tx2 = txw;
    for (float& v : tx2.samples) v *= 2.0f;
    const Waveform a2 = channel::propagate(tx2, params, imp);
    const Waveform clean = channel::propagate(txw, params, clean_impairments());
    const Waveform clean2 = channel::propagate(tx2, params, clean_impairments());
    for (std::size_t i = 0; i < a.samples.size(); i += 37) {
        CHECK(clean2.samples[i] == doctest::Approx(2.0 * clean.samples[i]).epsilon(1e-6));
        CHECK(a2.samples[i] - clean2.samples[i] ==
              doctest::Approx(a.samples[i] - clean.samples[i]).epsilon(1e-4));
    }
}

TEST_CASE("snr sentinel and the 6.02 dB doubling law") {
    const Waveform txw = alternating_burst(40);
    const circuit::ChannelParams params;

    channel::ImpairmentConfig imp = clean_impairments();
    CHECK(std::isinf(channel::snr_at_receiver_db(txw, params, imp)));

    imp.awgn_rms_v = 1e-3;
    const double snr1 = channel::snr_at_receiver_db(txw, params, imp);
    imp.awgn_rms_v = 2e-3;
    const double snr2 = channel::snr_at_receiver_db(txw, params, imp);
    CHECK(snr1 - snr2 == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("snr is undefined without ON bits") {
    Waveform silent;
    silent.sample_rate_hz = 3.9e6;
    silent.samples.assign(10000, 0.0f);
    channel::ImpairmentConfig imp;
    CHECK_THROWS_AS(
        (void)channel::snr_at_receiver_db(silent, circuit::ChannelParams{}, imp),
        UndefinedSnrError);
}

TEST_CASE("snr agrees with an FFT band-power oracle") {
    // all-ON carrier so the spectrum is clean; 2^18 samples for the FFT
    std::vector<std::uint8_t> bits(432, 1);
    const Waveform txw = tx::ook_modulate(bits, tx::ModemParams{});
    circuit::ChannelParams params;
    channel::ImpairmentConfig imp;
    imp.awgn_rms_v = 2e-3;
    imp.seed = 5;

    const double snr_claimed = channel::snr_at_receiver_db(txw, params, imp);

    // oracle: measure signal band power on the clean waveform and noise band
    // power on a noise-only waveform, both via the periodogram
    const Waveform clean = channel::propagate(txw, params, clean_impairments());
    const double p_signal = oracle::band_power(clean.samples, 3.9e6, 400e3, 600e3);

    Waveform silent;
    silent.sample_rate_hz = 3.9e6;
    silent.start_time_s = 0.0;
    silent.samples.assign(txw.samples.size(), 0.0f);
    const Waveform noise = channel::propagate(silent, params, imp);
    const double p_noise = oracle::band_power(noise.samples, 3.9e6, 400e3, 600e3);

    const double snr_oracle = 10.0 * std::log10(p_signal / p_noise);
    CHECK(snr_claimed == doctest::Approx(snr_oracle).epsilon(0.02));
}

TEST_CASE("awgn_rms_for_snr_db hits the requested operating point") {
    const Waveform txw = alternating_burst(60);
    const circuit::ChannelParams params;
    channel::ImpairmentConfig imp = clean_impairments();
    for (double target : {5.0, 15.0, 25.0}) {
        imp.awgn_rms_v = channel::awgn_rms_for_snr_db(txw, params, imp, target);
        CHECK(channel::snr_at_receiver_db(txw, params, imp) ==
              doctest::Approx(target).epsilon(1e-9));
    }
}

TEST_CASE("impairment validation rejects bad values") {
    channel::ImpairmentConfig imp;
    imp.bursts.push_back({0.0, 1.0, 1.5});
    CHECK_THROWS_AS(imp.check_valid(), ConfigError);

    channel::ImpairmentConfig imp2;
    imp2.distance_schedule = {{1.0, 0.0}, {0.5, 1e-3}};  // unsorted
    CHECK_THROWS_AS(imp2.check_valid(), ConfigError);
}
