#include "abclink/wavio.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace abclink::io {

static_assert(std::endian::native == std::endian::little,
              "raw waveform io assumes a little-endian host");

void write_raw(const Waveform& w, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("wavio: cannot open " + path + " for writing");
    char header[128];
    std::snprintf(header, sizeof header, "abclink-wave v1 sample_rate=%.12g start_time=%.12g count=%zu\n",
                  w.sample_rate_hz, w.start_time_s, w.samples.size());
    f << header;
    f.write(reinterpret_cast<const char*>(w.samples.data()),
            static_cast<std::streamsize>(w.samples.size() * sizeof(float)));
    if (!f) throw Error("wavio: write failed for " + path);
}

Waveform read_raw(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("wavio: cannot open " + path);
    std::string header;
    if (!std::getline(f, header)) throw ParseError("wavio: missing header line");

    Waveform w;
    std::size_t count = 0;
    {
        std::istringstream ss(header);
        std::string magic, version, kv;
        ss >> magic >> version;
        if (magic != "abclink-wave" || version != "v1")
            throw ParseError("wavio: not an abclink-wave v1 file");
        bool have_rate = false, have_count = false;
        while (ss >> kv) {
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos) throw ParseError("wavio: malformed header field " + kv);
            const std::string key = kv.substr(0, eq);
            const std::string val = kv.substr(eq + 1);
            try {
                if (key == "sample_rate") {
                    w.sample_rate_hz = std::stod(val);
                    have_rate = true;
                } else if (key == "start_time") {
                    w.start_time_s = std::stod(val);
                } else if (key == "count") {
                    count = std::stoul(val);
                    have_count = true;
                }
            } catch (...) {
                throw ParseError("wavio: bad header value " + kv);
            }
        }
        if (!have_rate || !have_count) throw ParseError("wavio: header missing sample_rate/count");
    }
    w.samples.resize(count);
    f.read(reinterpret_cast<char*>(w.samples.data()),
           static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(f.gcount()) != count * sizeof(float))
        throw ParseError("wavio: truncated sample data");
    w.check_valid();
    return w;
}

void write_csv(const Waveform& w, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("wavio: cannot open " + path + " for writing");
    f << "time_s,volts\n";
    char buf[64];
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9f,%.9g\n", w.time_at(i),
                      static_cast<double>(w.samples[i]));
        f << buf;
    }
}

}  // namespace abclink::io
