#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace votemart {

// Identifies one independent random stream.  Streams are keyed, not seeded:
// any (master_seed, stream_id) pair can be opened at any time, in any order,
// on any thread, and always yields the same sequence.  Ensemble code assigns
// stream_id by path index, which is what makes results independent of the
// thread count.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

// Philox 4x64, 10 rounds. Counter-based: block j of a stream is a pure
// function of (key, j), so there is no state to advance or skip.
struct Philox4x64 {
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static inline void mulwide(std::uint64_t a, std::uint64_t b,
                               std::uint64_t& hi, std::uint64_t& lo) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static std::array<std::uint64_t, 4> block(const SeedSpec& seed,
                                              std::uint64_t counter) {
        std::uint64_t c0 = counter, c1 = 0, c2 = 0, c3 = 0;
        std::uint64_t k0 = seed.master_seed, k1 = seed.stream_id;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, lo0, hi1, lo1;
            mulwide(kMul0, c0, hi0, lo0);
            mulwide(kMul1, c2, hi1, lo1);
            const std::uint64_t n0 = hi1 ^ c1 ^ k0;
            const std::uint64_t n1 = lo1;
            const std::uint64_t n2 = hi0 ^ c3 ^ k1;
            const std::uint64_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {c0, c1, c2, c3};
    }
};

// Uniform in (0, 1]: take the top 53 bits, flip so 0 is excluded (the log in
// Box-Muller needs a nonzero argument).
inline double to_open_unit(std::uint64_t u) {
    return 1.0 - static_cast<double>(u >> 11) * 0x1p-53;
}

} // namespace detail

// Buffered stream of standard normal deviates over one Philox stream.
// Each 256-bit block becomes four normals via Box-Muller, so draw j of a
// stream is reproducible regardless of who else is drawing.
class GaussianStream {
public:
    explicit GaussianStream(SeedSpec seed) : seed_(seed) {}

    double next() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    const SeedSpec& seed() const { return seed_; }

private:
    void refill() {
        const auto b = detail::Philox4x64::block(seed_, counter_++);
        const double u1 = detail::to_open_unit(b[0]);
        const double t1 = 2.0 * M_PI * detail::to_open_unit(b[1]);
        const double u2 = detail::to_open_unit(b[2]);
        const double t2 = 2.0 * M_PI * detail::to_open_unit(b[3]);
        const double r1 = std::sqrt(-2.0 * std::log(u1));
        const double r2 = std::sqrt(-2.0 * std::log(u2));
        buf_ = {r1 * std::cos(t1), r1 * std::sin(t1),
                r2 * std::cos(t2), r2 * std::sin(t2)};
        pos_ = 0;
    }

    SeedSpec seed_;
    std::uint64_t counter_ = 0;
    std::array<double, 4> buf_{};
    int pos_ = 4;
};

inline GaussianStream gaussian_stream(const SeedSpec& seed) {
    return GaussianStream(seed);
}

} // namespace votemart
