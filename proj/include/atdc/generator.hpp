#ifndef ATDC_GENERATOR_HPP
#define ATDC_GENERATOR_HPP

#include "atdc/trajectory.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atdc {

/// Settings of the synthetic gridded-trajectory generator.
///
/// All trajectories travel between the same two corner regions of a square
/// block inside the grid. Normal trajectories follow a main staircase route
/// or, with probability `variant_share`, an alternate route that leaves the
/// main one around its middle corner for roughly `variant_frac` of its
/// length. Each class is derived from one of these routes:
///   NT  the route with up to two cells added or removed
///   LD  a contiguous `detour_frac` segment pushed sideways into a detour at
///       least twice as long
///   LS  a contiguous `shortcut_frac` segment across a corner replaced by a
///       diagonal at most half as long
///   GD  a long loop around the block, sharing only a few end cells
///   GS  a diagonal between the corner regions, about half the route length
struct generator_spec {
    std::string name = "synthetic";
    std::size_t n = 1000;
    /// Class probabilities in label order (GD, LD, NT, LS, GS); labels are
    /// drawn i.i.d. from them.
    std::array<double, class_count> probs{0.015, 0.022, 0.869, 0.091, 0.003};
    /// Exact per-class counts. When set, they replace the i.i.d. draw: the
    /// multiset of labels is fixed and only their order is shuffled.
    std::optional<std::array<std::size_t, class_count>> counts;
    std::uint32_t grid_w = 48;
    std::uint32_t grid_h = 48;
    std::size_t route_len = 40;
    double detour_frac = 0.3;
    double shortcut_frac = 0.3;
    double variant_share = 0.3;
    double variant_frac = 0.25;
    std::uint64_t seed = 0;

    /// Throws config_error on invalid settings, including a grid too small
    /// for the routes (the message names the minimum size).
    void validate() const;
};

/// Smallest square grid side that hosts routes of the spec's length.
std::uint32_t minimum_grid_side(const generator_spec& spec);

/// Cells of the main and alternate normal routes, in travel order.
std::array<std::vector<cell_id>, 2> reference_routes(const generator_spec& spec);

/// Deterministic in the spec (seed included). Trajectory ids are 0..n-1.
dataset generate(const generator_spec& spec);

} // namespace atdc

#endif // ATDC_GENERATOR_HPP
