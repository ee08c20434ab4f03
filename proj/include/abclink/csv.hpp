#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "abclink/errors.hpp"

namespace abclink::io {

inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Minimal CSV writer. Fields containing commas or quotes are quoted; float
/// formatting is fixed so equal runs produce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : f_(path) {
        if (!f_) throw Error("csv: cannot open " + path + " for writing");
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) f_ << ',';
            write_field(fields[i]);
        }
        f_ << '\n';
    }

private:
    void write_field(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) {
            f_ << s;
            return;
        }
        f_ << '"';
        for (char c : s) {
            if (c == '"') f_ << '"';
            f_ << c;
        }
        f_ << '"';
    }

    std::ofstream f_;
};

}  // namespace abclink::io
