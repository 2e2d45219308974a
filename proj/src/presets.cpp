#include "atdc/presets.hpp"

#include <string>

namespace atdc {

std::optional<dataset_preset> find_dataset_preset(std::string_view name) {
    for (const auto& p : dataset_presets)
        if (p.name == name)
            return p;
    return std::nullopt;
}

generator_spec preset_spec(const dataset_preset& preset, std::uint64_t seed) {
    generator_spec spec;
    spec.name = std::string(preset.name);
    spec.n = preset.n;
    spec.counts = preset.counts;
    for (std::size_t c = 0; c < class_count; ++c)
        spec.probs[c] = static_cast<double>(preset.counts[c]) / static_cast<double>(preset.n);
    spec.seed = seed;
    return spec;
}

std::optional<thresholds> find_theta_preset(std::string_view name) {
    // theta1 and theta4 stay at 0.5 / -0.5; theta2 and theta3 are tuned per dataset
    if (name == "t1" || name == "t3")
        return thresholds{0.5, 0.1, -0.11, -0.5};
    if (name == "t2" || name == "t5")
        return thresholds{0.5, 0.11, -0.13, -0.5};
    if (name == "t4")
        return thresholds{0.5, 0.075, -0.085, -0.5};
    if (name == "t6")
        return thresholds{0.5, 0.09, -0.135, -0.5};
    return std::nullopt;
}

} // namespace atdc
