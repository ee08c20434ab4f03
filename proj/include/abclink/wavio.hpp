#pragma once

#include <string>

#include "abclink/waveform.hpp"

namespace abclink::io {

// Raw waveform file: one text header line
//   "abclink-wave v1 sample_rate=<hz> start_time=<s> count=<n>\n"
// followed by count little-endian float32 samples.
void write_raw(const Waveform& w, const std::string& path);
Waveform read_raw(const std::string& path);  // throws ParseError

// CSV twin: "time_s,volts" rows.
void write_csv(const Waveform& w, const std::string& path);

}  // namespace abclink::io
