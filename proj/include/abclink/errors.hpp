#pragma once

#include <stdexcept>
#include <string>

namespace abclink {

// Base for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// circuit: all three divider capacitances are zero.
struct DegenerateDividerError : Error {
    using Error::Error;
};

// circuit: nodal matrix not invertible at the requested frequency.
struct SingularNetworkError : Error {
    using Error::Error;
};

// txchain: burst airtime does not fit the transmit window.
struct WindowOverflowError : Error {
    using Error::Error;
};

// txchain: sensing/transmission intervals overlap or are inconsistent.
struct ScheduleError : Error {
    using Error::Error;
};

// txchain/rxchain: malformed frame (bad start/stop bits on deframe).
struct FrameError : Error {
    using Error::Error;
};

// ble reference string / waveform header could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

// rxchain: no burst rises above the noise floor.
struct NoSignalError : Error {
    using Error::Error;
};

// rxchain: filter spec cannot be met at the given sample rate.
struct InfeasibleFilterError : Error {
    using Error::Error;
};

// channel: SNR requested but the waveform carries no ON bits.
struct UndefinedSnrError : Error {
    using Error::Error;
};

// metrics: Pearson correlation of a constant sequence.
struct ZeroVarianceError : Error {
    using Error::Error;
};

// metrics: decoded/reference sequences cannot be reconciled.
struct AlignmentError : Error {
    using Error::Error;
};

// config/scenario validation failure; message carries field-level diagnostics.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace abclink
