#include "atdc/sampling.hpp"

#include "atdc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace atdc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64(state);
    state ^= tag * 0xd1b54a32d192ed03ULL;
    std::uint64_t b = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
    // largest multiple of bound representable; values above it are rejected
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> draw_sample(std::size_t pool_size, std::size_t count,
                                     std::uint64_t seed, std::uint64_t tag) {
    if (count < 1 || count > pool_size)
        throw config_error("sample count " + std::to_string(count) + " outside [1, " +
                           std::to_string(pool_size) + "]");
    auto engine = make_engine(seed, tag);
    std::vector<std::size_t> pool(pool_size);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // partial Fisher-Yates: position i receives a uniform pick from the tail
    for (std::size_t i = 0; i < count; ++i) {
        auto j = i + static_cast<std::size_t>(uniform_below(engine, pool_size - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

std::size_t sample_size(double rate, std::size_t pool, std::size_t floor_at) {
    auto n = static_cast<std::size_t>(std::floor(rate * static_cast<double>(pool) + 0.5));
    return std::min(pool, std::max(n, floor_at));
}

} // namespace atdc
