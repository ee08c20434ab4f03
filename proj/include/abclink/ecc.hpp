#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abclink/errors.hpp"

namespace abclink::ecc {

/// Dense GF(2) matrix, one uint32 bitmask per row (LSB = column 0).
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint32_t> row_bits;

    bool bit(int r, int c) const { return (row_bits[static_cast<std::size_t>(r)] >> c) & 1u; }
};

enum class Scheme { none, repetition, linear_block };

struct EccConfig {
    Scheme scheme = Scheme::none;
    int repetition_k = 2;

    // linear block code: G is k x n in standard form [I_k | P], H is (n-k) x n
    BitMatrix generator;
    BitMatrix parity_check;

    static EccConfig none_config() { return {}; }
    static EccConfig repetition(int k);
    static EccConfig hamming74();

    int message_len() const { return generator.rows; }
    int codeword_len() const { return generator.cols; }

    /// Frame copies emitted per payload (repetition only).
    int copies() const { return scheme == Scheme::repetition ? repetition_k : 1; }

    /// Payload bit count on the wire after block encoding.
    int coded_payload_bits(int payload_bits) const;

    void check_valid() const;  // G*H^T = 0 over GF(2), k >= 2, divisibility
};

/// Block-encode payload bits (Scheme::none and ::repetition pass through —
/// repetition redundancy is frame-level, applied by the burst builder).
std::vector<std::uint8_t> encode(std::span<const std::uint8_t> payload_bits,
                                 const EccConfig& cfg);

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    int corrections = 0;     // single-bit corrections applied
    int uncorrectable = 0;   // blocks whose syndrome matched no single-bit error
};

/// Syndrome decode of block-coded bits (pass-through for none/repetition).
DecodeResult decode(std::span<const std::uint8_t> coded_bits, const EccConfig& cfg);

/// Receiver policy for bi-modular (repetition) redundancy.
struct FrameCopy {
    bool valid = false;       // framing (start/stop bits) checked out
    std::uint32_t payload = 0;
};

struct MergeResult {
    bool decoded = false;
    std::uint32_t payload = 0;
    bool recovered_by_redundancy = false;  // a copy after the first one won
};

/// First valid copy wins; all-invalid marks the frame lost.
MergeResult merge_repetition_copies(std::span<const FrameCopy> copies);

}  // namespace abclink::ecc
