#pragma once

#include <array>
#include <cstdint>

namespace occ {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).
// A (key, stream, block) triple maps to 128 output bits by a fixed bijection,
// so any (seed, stream) pair names an independent reproducible substream
// regardless of scheduling or thread count.
class Philox {
public:
    using Block = std::array<std::uint32_t, 4>;

    static Block round10(Block ctr, std::uint32_t k0, std::uint32_t k1) {
        for (int i = 0; i < 10; ++i) {
            ctr = single_round(ctr, k0, k1);
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return ctr;
    }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                        std::uint32_t& lo) {
        std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    static Block single_round(const Block& c, std::uint32_t k0, std::uint32_t k1) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(0xD2511F53u, c[0], hi0, lo0);
        mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
        return {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }
};

// Sequential view over one Philox substream. Cheap to construct; all state
// is local, so streams are safe to use concurrently.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe to feed into logarithms.
    double next_double_pos() { return 1.0 - next_double(); }

private:
    void refill() {
        Philox::Block ctr = {stream_lo_, stream_hi_,
                             static_cast<std::uint32_t>(block_),
                             static_cast<std::uint32_t>(block_ >> 32)};
        buf_ = Philox::round10(ctr, key0_, key1_);
        ++block_;
        pos_ = 0;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    Philox::Block buf_{};
    int pos_ = 4;
};

}  // namespace occ
