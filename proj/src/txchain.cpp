#include "abclink/txchain.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace abclink::tx {

void TdmSchedule::check_valid() const {
    if (!(sense_s > 0) || !(abc_tx_s > 0) || !(cycle_s > 0))
        throw ScheduleError("schedule: durations must be > 0");
    if (abc_tx_s > cycle_s - sense_s + 1e-12)
        throw ScheduleError("schedule: abc_tx_duration exceeds cycle minus sense window");
    if (!(packet_period_s > 0)) throw ScheduleError("schedule: packet_period must be > 0");
}

CycleIntervals schedule_cycle(const TdmSchedule& s, long cycle_index) {
    s.check_valid();
    const double t0 = static_cast<double>(cycle_index) * s.cycle_s;
    CycleIntervals c;
    c.sense = {t0, t0 + s.sense_s};
    c.abc_tx = {t0 + s.sense_s, t0 + s.sense_s + s.abc_tx_s};
    c.ble_tx = {t0 + s.sense_s, t0 + s.cycle_s};
    if (c.sense.overlaps(c.abc_tx) || c.sense.overlaps(c.ble_tx))
        throw ScheduleError("schedule: sensing overlaps a transmit window");
    return c;
}

int ModemParams::samples_per_bit() const {
    const double ratio = sim_sample_rate_hz / bit_rate_bps;
    const double rounded = std::round(ratio);
    if (!(ratio > 0) || std::fabs(ratio - rounded) > 1e-9 * ratio)
        throw ConfigError("modem: sim_sample_rate / bit_rate must be an integer");
    return static_cast<int>(rounded);
}

void ModemParams::check_valid() const {
    if (!(carrier_hz > 0)) throw ConfigError("modem: carrier_freq must be > 0");
    if (!(duty > 0.0 && duty < 1.0)) throw ConfigError("modem: duty must be in (0,1)");
    if (!(bit_rate_bps > 0)) throw ConfigError("modem: bit_rate must be > 0");
    if (!(tx_amplitude_v > 0)) throw ConfigError("modem: tx_amplitude must be > 0");
    if (!(sim_sample_rate_hz > 0)) throw ConfigError("modem: sim_sample_rate must be > 0");
    (void)samples_per_bit();
    if (sim_sample_rate_hz < 2.0 * carrier_hz)
        throw ConfigError("modem: sim_sample_rate below Nyquist for the carrier");
}

int frame_bit_count(const ecc::EccConfig& cfg) {
    return 2 * kStartStopBits + cfg.coded_payload_bits(kPayloadBits);
}

std::vector<std::uint8_t> frame_bits(std::uint32_t payload24, const ecc::EccConfig& cfg) {
    if (payload24 > 0xFFFFFFu) throw FrameError("frame: payload exceeds 24 bits");

    std::vector<std::uint8_t> payload(kPayloadBits);
    for (int b = 0; b < kPayloadBits; ++b) {
        // MSB first on the wire
        payload[static_cast<std::size_t>(b)] =
            static_cast<std::uint8_t>((payload24 >> (kPayloadBits - 1 - b)) & 1u);
    }
    const std::vector<std::uint8_t> coded = ecc::encode(payload, cfg);

    std::vector<std::uint8_t> bits;
    bits.reserve(coded.size() + 4);
    bits.insert(bits.end(), {1, 1});
    bits.insert(bits.end(), coded.begin(), coded.end());
    bits.insert(bits.end(), {1, 1});
    return bits;
}

std::uint32_t deframe_bits(std::span<const std::uint8_t> bits, const ecc::EccConfig& cfg,
                           int* corrections, int* uncorrectable) {
    const int expected = frame_bit_count(cfg);
    if (static_cast<int>(bits.size()) != expected)
        throw FrameError("deframe: wrong frame length");
    if (!(bits[0] && bits[1])) throw FrameError("deframe: bad start bits");
    if (!(bits[bits.size() - 2] && bits[bits.size() - 1]))
        throw FrameError("deframe: bad stop bits");

    const std::span<const std::uint8_t> coded = bits.subspan(2, bits.size() - 4);
    const ecc::DecodeResult dec = ecc::decode(coded, cfg);
    if (corrections) *corrections += dec.corrections;
    if (uncorrectable) *uncorrectable += dec.uncorrectable;
    if (static_cast<int>(dec.bits.size()) != kPayloadBits)
        throw FrameError("deframe: decoded payload length mismatch");

    std::uint32_t payload = 0;
    for (int b = 0; b < kPayloadBits; ++b) {
        payload |= static_cast<std::uint32_t>(dec.bits[static_cast<std::size_t>(b)])
                   << (kPayloadBits - 1 - b);
    }
    return payload;
}

Waveform ook_modulate(std::span<const std::uint8_t> bits, const ModemParams& m,
                      double start_time_s, std::int64_t phase_origin) {
    m.check_valid();
    const int spb = m.samples_per_bit();
    const double half = 0.5 * m.tx_amplitude_v;
    const double cycles_per_sample = m.carrier_hz / m.sim_sample_rate_hz;

    Waveform w;
    w.sample_rate_hz = m.sim_sample_rate_hz;
    w.start_time_s = start_time_s;
    w.samples.assign(bits.size() * static_cast<std::size_t>(spb), 0.0f);
    for (std::size_t bi = 0; bi < bits.size(); ++bi) {
        if (!bits[bi]) continue;
        const std::size_t base = bi * static_cast<std::size_t>(spb);
        for (int k = 0; k < spb; ++k) {
            const auto n = static_cast<double>(phase_origin) +
                           static_cast<double>(base) + static_cast<double>(k);
            const double phase = n * cycles_per_sample;
            const double frac = phase - std::floor(phase);
            w.samples[base + static_cast<std::size_t>(k)] =
                static_cast<float>(frac < m.duty ? half : -half);
        }
    }
    return w;
}

Burst build_burst(std::span<const std::int32_t> payload_codes, const TdmSchedule& s,
                  const ModemParams& m, const ecc::EccConfig& cfg, double window_start_s) {
    s.check_valid();
    m.check_valid();
    cfg.check_valid();

    const int fbits = frame_bit_count(cfg);
    const int spb = m.samples_per_bit();
    const double bit_s = 1.0 / m.bit_rate_bps;
    const double frame_airtime_s = fbits * bit_s;
    const double min_period_s = frame_airtime_s + 2.0 * bit_s;  // >= 2 idle bits between frames
    const std::size_t copies = static_cast<std::size_t>(cfg.copies());
    const std::size_t n_frames = payload_codes.size() * copies;

    Burst burst;
    burst.frame_bits = fbits;
    burst.wave.sample_rate_hz = m.sim_sample_rate_hz;
    burst.wave.start_time_s = window_start_s;
    burst.wave.samples.assign(
        static_cast<std::size_t>(std::llround(s.abc_tx_s * m.sim_sample_rate_hz)), 0.0f);

    if (n_frames == 0) {
        burst.frame_period_s = s.packet_period_s;
        return burst;
    }

    const double airtime_s = static_cast<double>(n_frames) * frame_airtime_s;
    if (airtime_s > s.abc_tx_s * (1.0 + 1e-12))
        throw WindowOverflowError("burst: payload airtime exceeds the transmit window");
    if (s.packet_period_s < min_period_s - 1e-12)
        throw ScheduleError("schedule: packet_period below frame airtime plus 2-bit gap");

    // pacing in integer samples so the last frame provably fits
    const auto window_samples = static_cast<std::int64_t>(burst.wave.samples.size());
    const std::int64_t frame_samples = static_cast<std::int64_t>(fbits) * spb;
    const std::int64_t min_samples = frame_samples + 2 * spb;
    auto period_samples =
        static_cast<std::int64_t>(std::llround(s.packet_period_s * m.sim_sample_rate_hz));
    if (static_cast<std::int64_t>(n_frames - 1) * period_samples + frame_samples >
        window_samples) {
        // pack tighter than the configured pacing, keeping the minimum gap
        period_samples = n_frames > 1 ? (window_samples - frame_samples) /
                                            static_cast<std::int64_t>(n_frames - 1)
                                      : window_samples;
        if (period_samples < min_samples)
            throw WindowOverflowError("burst: frames plus minimum gaps exceed the window");
    }
    burst.frame_period_s = static_cast<double>(period_samples) / m.sim_sample_rate_hz;

    burst.frame_times_s.reserve(n_frames);
    burst.frame_payloads.reserve(n_frames);
    for (std::size_t k = 0; k < n_frames; ++k) {
        const std::int32_t code = payload_codes[k / copies];
        const auto payload = static_cast<std::uint32_t>(code) & 0xFFFFFFu;
        const std::vector<std::uint8_t> bits = frame_bits(payload, cfg);

        const std::int64_t offset = static_cast<std::int64_t>(k) * period_samples;
        const Waveform fw = ook_modulate(bits, m, 0.0, offset);
        if (static_cast<std::size_t>(offset) + fw.samples.size() > burst.wave.samples.size())
            throw WindowOverflowError("burst: frame does not fit the window");  // paranoia
        for (std::size_t i = 0; i < fw.samples.size(); ++i) {
            burst.wave.samples[static_cast<std::size_t>(offset) + i] = fw.samples[i];
        }
        burst.frame_times_s.push_back(window_start_s +
                                      static_cast<double>(offset) / m.sim_sample_rate_hz);
        burst.frame_payloads.push_back(payload);
    }
    return burst;
}

std::string ble_reference_encode(std::span<const std::int32_t> codes) {
    std::string out;
    out.reserve(codes.size() * 8);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(codes[i]);
    }
    return out;
}

std::vector<std::int32_t> ble_reference_decode(std::string_view text) {
    std::vector<std::int32_t> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view tok =
            text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                             : comma - pos);
        if (tok.empty()) throw ParseError("ble decode: empty token");
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError(std::string("ble decode: non-numeric token '") + std::string(tok) +
                             "'");
        if (value > 0x7FFFFF || value < -0x800000)
            throw ParseError("ble decode: code outside 24-bit range");
        out.push_back(static_cast<std::int32_t>(value));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
        if (pos == text.size()) throw ParseError("ble decode: trailing delimiter");
    }
    return out;
}

}  // namespace abclink::tx
