#ifndef ATDC_PRESETS_HPP
#define ATDC_PRESETS_HPP

#include "atdc/generator.hpp"
#include "atdc/scoring.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace atdc {

/// Size and class mix of one reference dataset (counts in label order).
struct dataset_preset {
    std::string_view name;
    std::size_t n;
    std::array<std::size_t, class_count> counts;
};

/// The six taxi datasets: t1 .. t6.
inline constexpr std::array<dataset_preset, 6> dataset_presets{{
    {"t1", 1093, {16, 24, 950, 100, 3}},
    {"t2", 311, {5, 4, 285, 15, 2}},
    {"t3", 1720, {25, 20, 1597, 73, 5}},
    {"t4", 425, {2, 7, 402, 12, 2}},
    {"t5", 1409, {21, 38, 1166, 171, 13}},
    {"t6", 1567, {21, 68, 1212, 241, 25}},
}};

std::optional<dataset_preset> find_dataset_preset(std::string_view name);

/// Generator spec reproducing a preset's size and exact class counts.
generator_spec preset_spec(const dataset_preset& preset, std::uint64_t seed);

/// Per-dataset tuned thresholds for t1 .. t6.
std::optional<thresholds> find_theta_preset(std::string_view name);

} // namespace atdc

#endif // ATDC_PRESETS_HPP
