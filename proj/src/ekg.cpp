#include "abclink/ekg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "abclink/kernels.hpp"

namespace abclink::ekg {

namespace {

double wrap_pi(double x) {
    // wrap to [-pi, pi)
    constexpr double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x + std::numbers::pi, two_pi);
    if (x < 0) x += two_pi;
    return x - std::numbers::pi;
}

}  // namespace

void EkgModelParams::check_valid() const {
    if (!(heart_rate_bpm > 0)) throw ConfigError("ekg: heart_rate must be > 0");
    for (const WaveComponent* w : {&p, &q, &r, &s, &t}) {
        if (!(w->width_rad > 0)) throw ConfigError("ekg: wave widths must be > 0");
    }
    if (baseline_noise_v < 0) throw ConfigError("ekg: baseline_noise must be >= 0");
}

ContinuousTrace synthesize(const EkgModelParams& params, double duration_s,
                           double sample_rate_hz) {
    params.check_valid();
    if (!(duration_s > 0)) throw ConfigError("ekg: duration must be > 0");
    if (!(sample_rate_hz > 0)) throw ConfigError("ekg: sample_rate must be > 0");

    const auto n = static_cast<std::size_t>(std::llround(sample_rate_hz * duration_s));
    const double beat_hz = params.heart_rate_bpm / 60.0;
    const std::array<WaveComponent, 5> waves{params.p, params.q, params.r, params.s, params.t};

    ContinuousTrace out;
    out.sample_rate_hz = sample_rate_hz;
    out.volts.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        const double phase = 2.0 * std::numbers::pi * beat_hz * t + params.phase_offset_rad;
        double v = 0.0;
        for (const WaveComponent& w : waves) {
            const double d = wrap_pi(phase - w.center_rad);
            v += w.amplitude_v * std::exp(-0.5 * (d / w.width_rad) * (d / w.width_rad));
        }
        if (params.baseline_noise_v > 0) {
            v += params.baseline_noise_v * kernels::gaussian_at(params.seed, i);
        }
        out.volts[i] = v;
    }
    return out;
}

QuantizeResult quantize(const ContinuousTrace& trace, double volts_per_lsb) {
    if (!(volts_per_lsb > 0)) throw ConfigError("ekg: volts_per_lsb must be > 0");
    QuantizeResult res;
    res.trace.sample_rate_hz = trace.sample_rate_hz;
    res.trace.volts_per_lsb = volts_per_lsb;
    res.trace.codes.reserve(trace.volts.size());
    for (double v : trace.volts) {
        long long code = std::llround(v / volts_per_lsb);
        if (code > kCodeMax) {
            code = kCodeMax;
            ++res.saturated_count;
        } else if (code < kCodeMin) {
            code = kCodeMin;
            ++res.saturated_count;
        }
        res.trace.codes.push_back(static_cast<std::int32_t>(code));
    }
    return res;
}

std::vector<double> dequantize(const EkgTrace& trace) {
    std::vector<double> out;
    out.reserve(trace.codes.size());
    for (std::int32_t c : trace.codes) out.push_back(c * trace.volts_per_lsb);
    return out;
}

void write_csv(const EkgTrace& trace, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("ekg: cannot open " + path + " for writing");
    f << "time_s,code,volts\n";
    char buf[96];
    for (std::size_t i = 0; i < trace.codes.size(); ++i) {
        const double t = static_cast<double>(i) / trace.sample_rate_hz;
        std::snprintf(buf, sizeof buf, "%.9f,%d,%.12g\n", t, trace.codes[i],
                      trace.codes[i] * trace.volts_per_lsb);
        f << buf;
    }
}

EkgTrace read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("ekg: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError("ekg csv: empty file");

    EkgTrace trace;
    double prev_t = 0.0, first_t = 0.0;
    std::size_t rows = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        double t;
        long code;
        if (!std::getline(ss, tok, ',')) throw ParseError("ekg csv: missing time column");
        try {
            t = std::stod(tok);
        } catch (...) {
            throw ParseError("ekg csv: bad time value '" + tok + "'");
        }
        if (!std::getline(ss, tok, ',')) throw ParseError("ekg csv: missing code column");
        try {
            code = std::stol(tok);
        } catch (...) {
            throw ParseError("ekg csv: bad code value '" + tok + "'");
        }
        if (code > kCodeMax || code < kCodeMin)
            throw ParseError("ekg csv: code outside 24-bit range");
        if (rows == 0) first_t = t;
        if (rows == 1 && t > first_t) trace.sample_rate_hz = 1.0 / (t - first_t);
        trace.codes.push_back(static_cast<std::int32_t>(code));
        prev_t = t;
        ++rows;
    }
    (void)prev_t;
    if (trace.codes.empty()) throw ParseError("ekg csv: no samples");
    return trace;
}

}  // namespace abclink::ekg
