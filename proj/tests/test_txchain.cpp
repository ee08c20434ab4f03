#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "abclink/txchain.hpp"
#include "oracle.hpp"

using namespace abclink;

TEST_CASE("cycle layout: sense [0,5), abc [5,10), ble [5,15)") {
    const tx::TdmSchedule s;
    const tx::CycleIntervals c0 = tx::schedule_cycle(s, 0);
    CHECK(c0.sense.begin_s == 0.0);
    CHECK(c0.sense.end_s == 5.0);
    CHECK(c0.abc_tx.begin_s == 5.0);
    CHECK(c0.abc_tx.end_s == 10.0);
    CHECK(c0.ble_tx.begin_s == 5.0);
    CHECK(c0.ble_tx.end_s == 15.0);

    const tx::CycleIntervals c2 = tx::schedule_cycle(s, 2);
    CHECK(c2.sense.begin_s == 30.0);
    CHECK(c2.sense.end_s == 35.0);
}

TEST_CASE("sensing never overlaps transmission across many cycles") {
    const tx::TdmSchedule s;
    for (long k = 0; k < 100; ++k) {
        const tx::CycleIntervals c = tx::schedule_cycle(s, k);
        CHECK_FALSE(c.sense.overlaps(c.abc_tx));
        CHECK_FALSE(c.sense.overlaps(c.ble_tx));
    }
}

TEST_CASE("oversized transmit window is rejected") {
    tx::TdmSchedule s;
    s.abc_tx_s = 11.0;  // > cycle - sense
    CHECK_THROWS_AS((void)tx::schedule_cycle(s, 0), ScheduleError);
}

TEST_CASE("frame layout: start bits, MSB-first payload, stop bits") {
    const std::vector<std::uint8_t> zero = tx::frame_bits(0x000000);
    REQUIRE(zero.size() == 28);
    CHECK(zero[0] == 1);
    CHECK(zero[1] == 1);
    for (std::size_t i = 2; i < 26; ++i) CHECK(zero[i] == 0);
    CHECK(zero[26] == 1);
    CHECK(zero[27] == 1);

    const std::vector<std::uint8_t> ones = tx::frame_bits(0xFFFFFF);
    for (std::uint8_t b : ones) CHECK(b == 1);

    // MSB first: payload bit 23 right after the start bits
    const std::vector<std::uint8_t> msb = tx::frame_bits(0x800001);
    CHECK(msb[2] == 1);
    CHECK(msb[24] == 0);
    CHECK(msb[25] == 1);
}

TEST_CASE("deframe inverts frame for random payloads and rejects bad framing") {
    oracle::Rng rng(17);
    const ecc::EccConfig none;
    for (int i = 0; i < 1000; ++i) {
        const auto payload = static_cast<std::uint32_t>(rng.next() & 0xFFFFFFu);
        CHECK(tx::deframe_bits(tx::frame_bits(payload), none) == payload);
    }

    std::vector<std::uint8_t> bits = tx::frame_bits(0x13579Bu);
    bits[27] = 0;  // corrupt a stop bit
    CHECK_THROWS_AS((void)tx::deframe_bits(bits, none), FrameError);
    bits = tx::frame_bits(0x13579Bu);
    bits[0] = 0;
    CHECK_THROWS_AS((void)tx::deframe_bits(bits, none), FrameError);
}

TEST_CASE("one ON bit carries 20 carrier cycles in 156 samples") {
    const tx::ModemParams m;
    CHECK(m.samples_per_bit() == 156);
    const std::vector<std::uint8_t> one{1};
    const Waveform w = tx::ook_modulate(one, m);
    REQUIRE(w.samples.size() == 156);

    int high_runs = 0;  // one per carrier cycle
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        if (w.samples[i] > 0 && (i == 0 || w.samples[i - 1] < 0)) ++high_runs;
    CHECK(high_runs == 20);

    for (float v : w.samples) CHECK(std::fabs(v) == doctest::Approx(1.65));
}

TEST_CASE("OFF bits and empty bit strings produce silence") {
    const tx::ModemParams m;
    const std::vector<std::uint8_t> zero{0};
    const Waveform w = tx::ook_modulate(zero, m);
    REQUIRE(w.samples.size() == 156);
    for (float v : w.samples) CHECK(v == 0.0f);

    const Waveform empty = tx::ook_modulate({}, m);
    CHECK(empty.samples.empty());
}

TEST_CASE("carrier phase continues across bit boundaries") {
    const tx::ModemParams m;
    const std::vector<std::uint8_t> both{1, 1};
    const Waveform joint = tx::ook_modulate(both, m);

    const std::vector<std::uint8_t> one{1};
    const Waveform first = tx::ook_modulate(one, m, 0.0, 0);
    const Waveform second = tx::ook_modulate(one, m, 0.0, 156);
    for (std::size_t i = 0; i < 156; ++i) {
        CHECK(joint.samples[i] == first.samples[i]);
        CHECK(joint.samples[156 + i] == second.samples[i]);
    }
}

TEST_CASE("non-integer samples-per-bit is a config error") {
    tx::ModemParams m;
    m.bit_rate_bps = 24000;  // 3.9e6 / 24000 = 162.5
    CHECK_THROWS_AS((void)m.samples_per_bit(), ConfigError);
}

TEST_CASE("default burst paces 2500 frames at 2 ms across the 5 s window") {
    std::vector<std::int32_t> codes(2500);
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<std::int32_t>(i) - 1250;

    const tx::TdmSchedule s;
    const tx::ModemParams m;
    const tx::Burst burst = tx::build_burst(codes, s, m, ecc::EccConfig::none_config(), 5.0);

    CHECK(burst.frame_bits == 28);
    CHECK(burst.frame_times_s.size() == 2500);
    CHECK(burst.wave.samples.size() == 19'500'000);
    CHECK(burst.wave.start_time_s == 5.0);
    CHECK(burst.frame_period_s == doctest::Approx(2e-3));
    CHECK(burst.frame_times_s[0] == doctest::Approx(5.0));
    CHECK(burst.frame_times_s[1] == doctest::Approx(5.002));
    CHECK(burst.frame_times_s[2499] == doctest::Approx(5.0 + 2499 * 2e-3));

    // airtime bookkeeping from the wire constants
    CHECK(2500.0 * 28.0 / 25000.0 == doctest::Approx(2.8));
    CHECK(2500.0 * 28.0 / 5.0 < 25000.0);             // required bandwidth vs capacity
    CHECK(m.ble_min_bandwidth_bps > m.bit_rate_bps);  // reference-channel headroom

    // energy only inside frame airtime; inter-frame gaps are silent
    const int spb = m.samples_per_bit();
    const auto frame_samples = static_cast<std::size_t>(28 * spb);
    const auto period_samples = static_cast<std::size_t>(7800);
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{1249}}) {
        const std::size_t base = k * period_samples;
        double frame_energy = 0.0;
        for (std::size_t i = base; i < base + frame_samples; ++i)
            frame_energy += std::fabs(burst.wave.samples[i]);
        CHECK(frame_energy > 0.0);
        for (std::size_t i = base + frame_samples; i < base + period_samples; ++i)
            CHECK(burst.wave.samples[i] == 0.0f);
    }
}

TEST_CASE("empty payload set gives a silent window") {
    const tx::Burst burst = tx::build_burst({}, tx::TdmSchedule{}, tx::ModemParams{},
                                            ecc::EccConfig::none_config(), 5.0);
    CHECK(burst.frame_times_s.empty());
    CHECK(burst.wave.samples.size() == 19'500'000);
    for (std::size_t i = 0; i < burst.wave.samples.size(); i += 9973)
        CHECK(burst.wave.samples[i] == 0.0f);
}

TEST_CASE("airtime overflow is rejected") {
    std::vector<std::int32_t> codes(4500, 42);
    CHECK(4500.0 * 2 * 28.0 / 25000.0 == doctest::Approx(10.08));  // > 5 s window
    CHECK_THROWS_AS((void)tx::build_burst(codes, tx::TdmSchedule{}, tx::ModemParams{},
                                          ecc::EccConfig::repetition(2), 5.0),
                    WindowOverflowError);
}

TEST_CASE("repetition doubles the emitted frames in consecutive slots") {
    const std::vector<std::int32_t> codes{10, -20};
    const tx::Burst burst = tx::build_burst(codes, tx::TdmSchedule{}, tx::ModemParams{},
                                            ecc::EccConfig::repetition(2), 0.0);
    REQUIRE(burst.frame_payloads.size() == 4);
    CHECK(burst.frame_payloads[0] == burst.frame_payloads[1]);
    CHECK(burst.frame_payloads[2] == burst.frame_payloads[3]);
    CHECK(burst.frame_payloads[0] == 10u);
    CHECK(burst.frame_payloads[2] == (static_cast<std::uint32_t>(-20) & 0xFFFFFFu));
}

TEST_CASE("hamming frames are 46 bits and still pace at the default period") {
    std::vector<std::int32_t> codes(100, 7);
    const tx::Burst burst = tx::build_burst(codes, tx::TdmSchedule{}, tx::ModemParams{},
                                            ecc::EccConfig::hamming74(), 0.0);
    CHECK(burst.frame_bits == 46);
    CHECK(burst.frame_period_s == doctest::Approx(2e-3));
}

TEST_CASE("ble reference string round trip") {
    const std::vector<std::int32_t> codes{1, -2, 3};
    const std::string text = tx::ble_reference_encode(codes);
    CHECK(text == "1,-2,3");
    CHECK(tx::ble_reference_decode(text) == codes);

    CHECK(tx::ble_reference_encode({}).empty());
    CHECK(tx::ble_reference_decode("").empty());

    CHECK_THROWS_AS((void)tx::ble_reference_decode("1,x,3"), ParseError);
    CHECK_THROWS_AS((void)tx::ble_reference_decode("1,,3"), ParseError);
    CHECK_THROWS_AS((void)tx::ble_reference_decode("1,2,"), ParseError);

    oracle::Rng rng(23);
    std::vector<std::int32_t> random_codes;
    for (int i = 0; i < 500; ++i)
        random_codes.push_back(static_cast<std::int32_t>(rng.next() % 0x1000000u) - 0x800000);
    CHECK(tx::ble_reference_decode(tx::ble_reference_encode(random_codes)) == random_codes);
}
