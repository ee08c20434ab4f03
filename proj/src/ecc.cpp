#include "abclink/ecc.hpp"

namespace abclink::ecc {

EccConfig EccConfig::repetition(int k) {
    EccConfig cfg;
    cfg.scheme = Scheme::repetition;
    cfg.repetition_k = k;
    cfg.check_valid();
    return cfg;
}

EccConfig EccConfig::hamming74() {
    // systematic (7,4): codeword = [d0 d1 d2 d3 p0 p1 p2]
    //   p0 = d0+d1+d2, p1 = d1+d2+d3, p2 = d0+d1+d3
    EccConfig cfg;
    cfg.scheme = Scheme::linear_block;
    cfg.generator.rows = 4;
    cfg.generator.cols = 7;
    cfg.generator.row_bits = {
        0b1010001u,  // d0 -> d0, p0, p2
        0b1110010u,  // d1 -> d1, p0, p1, p2
        0b0110100u,  // d2 -> d2, p0, p1
        0b1101000u,  // d3 -> d3, p1, p2
    };
    cfg.parity_check.rows = 3;
    cfg.parity_check.cols = 7;
    cfg.parity_check.row_bits = {
        0b0010111u,  // p0 row: d0+d1+d2+p0
        0b0101110u,  // p1 row: d1+d2+d3+p1
        0b1001011u,  // p2 row: d0+d1+d3+p2
    };
    cfg.check_valid();
    return cfg;
}

int EccConfig::coded_payload_bits(int payload_bits) const {
    if (scheme != Scheme::linear_block) return payload_bits;
    return payload_bits / message_len() * codeword_len();
}

void EccConfig::check_valid() const {
    switch (scheme) {
        case Scheme::none:
            return;
        case Scheme::repetition:
            if (repetition_k < 2) throw ConfigError("ecc: repetition k must be >= 2");
            return;
        case Scheme::linear_block:
            break;
    }
    const int k = generator.rows, n = generator.cols;
    if (k <= 0 || n <= k) throw ConfigError("ecc: generator must be k x n with n > k");
    if (n > 31) throw ConfigError("ecc: codeword length limited to 31 bits");
    if (parity_check.rows != n - k || parity_check.cols != n)
        throw ConfigError("ecc: parity-check must be (n-k) x n");
    // G * H^T = 0 over GF(2)
    for (int r = 0; r < k; ++r) {
        for (int h = 0; h < parity_check.rows; ++h) {
            const std::uint32_t overlap =
                generator.row_bits[static_cast<std::size_t>(r)] &
                parity_check.row_bits[static_cast<std::size_t>(h)];
            if (__builtin_popcount(overlap) & 1)
                throw ConfigError("ecc: generator and parity-check are inconsistent (G*H^T != 0)");
        }
    }
}

namespace {

std::uint32_t encode_block(std::uint32_t message, const EccConfig& cfg) {
    std::uint32_t cw = 0;
    for (int r = 0; r < cfg.generator.rows; ++r) {
        if ((message >> r) & 1u) cw ^= cfg.generator.row_bits[static_cast<std::size_t>(r)];
    }
    return cw;
}

std::uint32_t syndrome_of(std::uint32_t word, const EccConfig& cfg) {
    std::uint32_t s = 0;
    for (int r = 0; r < cfg.parity_check.rows; ++r) {
        const std::uint32_t m = word & cfg.parity_check.row_bits[static_cast<std::size_t>(r)];
        s |= static_cast<std::uint32_t>(__builtin_popcount(m) & 1) << r;
    }
    return s;
}

}  // namespace

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> payload_bits,
                                 const EccConfig& cfg) {
    if (cfg.scheme != Scheme::linear_block)
        return {payload_bits.begin(), payload_bits.end()};

    cfg.check_valid();
    const int k = cfg.message_len(), n = cfg.codeword_len();
    if (payload_bits.size() % static_cast<std::size_t>(k) != 0)
        throw ConfigError("ecc: payload length not divisible by message length");

    std::vector<std::uint8_t> out;
    out.reserve(payload_bits.size() / static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
    for (std::size_t off = 0; off < payload_bits.size(); off += static_cast<std::size_t>(k)) {
        std::uint32_t msg = 0;
        for (int b = 0; b < k; ++b) msg |= static_cast<std::uint32_t>(payload_bits[off + b]) << b;
        const std::uint32_t cw = encode_block(msg, cfg);
        for (int b = 0; b < n; ++b) out.push_back(static_cast<std::uint8_t>((cw >> b) & 1u));
    }
    return out;
}

DecodeResult decode(std::span<const std::uint8_t> coded_bits, const EccConfig& cfg) {
    DecodeResult res;
    if (cfg.scheme != Scheme::linear_block) {
        res.bits.assign(coded_bits.begin(), coded_bits.end());
        return res;
    }

    cfg.check_valid();
    const int k = cfg.message_len(), n = cfg.codeword_len();
    if (coded_bits.size() % static_cast<std::size_t>(n) != 0)
        throw ConfigError("ecc: coded length not divisible by codeword length");

    // syndrome -> single-bit error position
    std::vector<int> flip_of(1u << cfg.parity_check.rows, -1);
    for (int b = 0; b < n; ++b) {
        const std::uint32_t s = syndrome_of(1u << b, cfg);
        flip_of[s] = b;
    }

    for (std::size_t off = 0; off < coded_bits.size(); off += static_cast<std::size_t>(n)) {
        std::uint32_t word = 0;
        for (int b = 0; b < n; ++b) word |= static_cast<std::uint32_t>(coded_bits[off + b]) << b;
        const std::uint32_t s = syndrome_of(word, cfg);
        if (s != 0) {
            const int flip = flip_of[s];
            if (flip >= 0) {
                word ^= 1u << flip;
                ++res.corrections;
            } else {
                ++res.uncorrectable;
            }
        }
        // systematic code: message occupies the low k bits
        for (int b = 0; b < k; ++b) res.bits.push_back(static_cast<std::uint8_t>((word >> b) & 1u));
    }
    return res;
}

MergeResult merge_repetition_copies(std::span<const FrameCopy> copies) {
    MergeResult res;
    for (std::size_t i = 0; i < copies.size(); ++i) {
        if (copies[i].valid) {
            res.decoded = true;
            res.payload = copies[i].payload;
            res.recovered_by_redundancy = (i > 0);
            return res;
        }
    }
    return res;
}

}  // namespace abclink::ecc
