#include "atdc/trajectory.hpp"

#include "atdc/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_set>

namespace atdc {

namespace {
constexpr std::array<std::string_view, class_count> label_names{"GD", "LD", "NT", "LS", "GS"};
} // namespace

std::string_view to_string(class_label c) { return label_names.at(index_of(c)); }

std::optional<class_label> label_from_code(std::int64_t code) {
    if (code < 0 || code >= static_cast<std::int64_t>(class_count))
        return std::nullopt;
    return static_cast<class_label>(code);
}

std::optional<class_label> label_from_name(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    for (std::size_t i = 0; i < class_count; ++i)
        if (label_names[i] == upper)
            return static_cast<class_label>(i);
    return std::nullopt;
}

trajectory::trajectory(trajectory_id id, std::vector<cell_id> cells,
                       std::optional<class_label> label)
    : id_(id), cells_(std::move(cells)), sorted_(cells_), label_(label) {
    if (cells_.empty())
        throw data_error("trajectory " + std::to_string(id_) + " has no cells");
    std::sort(sorted_.begin(), sorted_.end());
    auto dup = std::adjacent_find(sorted_.begin(), sorted_.end());
    if (dup != sorted_.end())
        throw data_error("trajectory " + std::to_string(id_) + " repeats cell " +
                         std::to_string(*dup));
}

void dataset::validate() const {
    if (grid_w == 0 || grid_h == 0)
        throw data_error("grid dimensions must be positive");
    const std::uint64_t cell_limit = std::uint64_t{grid_w} * grid_h;
    std::unordered_set<trajectory_id> seen;
    seen.reserve(trajectories.size());
    for (const auto& t : trajectories) {
        if (!seen.insert(t.id()).second)
            throw data_error("duplicate trajectory id " + std::to_string(t.id()));
        // sorted_cells() is ascending, so the last entry is the maximum
        if (t.sorted_cells().back() >= cell_limit)
            throw data_error("trajectory " + std::to_string(t.id()) + " has cell " +
                             std::to_string(t.sorted_cells().back()) + " outside the " +
                             std::to_string(grid_w) + "x" + std::to_string(grid_h) + " grid");
    }
}

bool dataset::fully_labeled() const {
    return std::all_of(trajectories.begin(), trajectories.end(),
                       [](const trajectory& t) { return t.label().has_value(); });
}

} // namespace atdc
