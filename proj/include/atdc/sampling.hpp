#ifndef ATDC_SAMPLING_HPP
#define ATDC_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace atdc {

/// Stream tags keep the random draws of different run phases independent.
enum class stream_tag : std::uint64_t {
    stage1_refs = 1,
    stage2_ant = 2,
    generator = 3,
};

/// 64-bit engine seeded from (seed, tag) through splitmix64, so distinct
/// tags give unrelated streams for the same user seed.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t tag);

inline std::mt19937_64 make_engine(std::uint64_t seed, stream_tag tag) {
    return make_engine(seed, static_cast<std::uint64_t>(tag));
}

/// Unbiased integer in [0, bound) by rejection; bound must be positive.
/// Used instead of std::uniform_int_distribution, whose output differs
/// between standard libraries.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

/// Uniform real in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& engine);

/// `count` distinct indices from [0, pool_size), uniformly without
/// replacement, in draw order. A longer draw with the same arguments
/// extends a shorter one. Throws config_error unless 1 <= count <= pool_size.
std::vector<std::size_t> draw_sample(std::size_t pool_size, std::size_t count,
                                     std::uint64_t seed, std::uint64_t tag);

inline std::vector<std::size_t> draw_sample(std::size_t pool_size, std::size_t count,
                                            std::uint64_t seed, stream_tag tag) {
    return draw_sample(pool_size, count, seed, static_cast<std::uint64_t>(tag));
}

/// floor(rate * pool + 0.5), clamped to [floor_at, pool].
std::size_t sample_size(double rate, std::size_t pool, std::size_t floor_at);

} // namespace atdc

#endif // ATDC_SAMPLING_HPP
