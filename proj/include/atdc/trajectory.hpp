#ifndef ATDC_TRAJECTORY_HPP
#define ATDC_TRAJECTORY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atdc {

/// Row-major index of a cell in a W x H grid.
using cell_id = std::uint32_t;

using trajectory_id = std::uint64_t;

/// Trajectory classes. The integer codes are part of every file format.
enum class class_label : int { gd = 0, ld = 1, nt = 2, ls = 3, gs = 4 };

inline constexpr std::size_t class_count = 5;

inline constexpr std::array<class_label, class_count> all_classes{
    class_label::gd, class_label::ld, class_label::nt, class_label::ls, class_label::gs};

/// The four anomaly classes, in label order.
inline constexpr std::array<class_label, 4> anomaly_classes{
    class_label::gd, class_label::ld, class_label::ls, class_label::gs};

constexpr std::size_t index_of(class_label c) { return static_cast<std::size_t>(c); }

std::string_view to_string(class_label c);

/// Maps an integer code to a label; nullopt outside [0, 4].
std::optional<class_label> label_from_code(std::int64_t code);

/// Parses "GD", "ld", ... (case-insensitive).
std::optional<class_label> label_from_name(std::string_view name);

/// A gridded trajectory. Cells keep their travel order but are unique, and
/// every similarity computation treats them as a set.
class trajectory {
public:
    /// Throws data_error if `cells` is empty or repeats a cell.
    trajectory(trajectory_id id, std::vector<cell_id> cells,
               std::optional<class_label> label = std::nullopt);

    trajectory_id id() const { return id_; }
    std::span<const cell_id> cells() const { return cells_; }
    /// Ascending copy of cells(), used for merge-based intersection.
    std::span<const cell_id> sorted_cells() const { return sorted_; }
    std::size_t size() const { return cells_.size(); }
    const std::optional<class_label>& label() const { return label_; }

    void set_label(std::optional<class_label> label) { label_ = label; }

    friend bool operator==(const trajectory& a, const trajectory& b) {
        return a.id_ == b.id_ && a.cells_ == b.cells_ && a.label_ == b.label_;
    }

private:
    trajectory_id id_;
    std::vector<cell_id> cells_;
    std::vector<cell_id> sorted_;
    std::optional<class_label> label_;
};

struct dataset {
    std::string name;
    std::uint32_t grid_w = 1;
    std::uint32_t grid_h = 1;
    std::vector<trajectory> trajectories;

    std::size_t size() const { return trajectories.size(); }

    /// Throws data_error on duplicate ids, out-of-range cells or a
    /// non-positive grid.
    void validate() const;

    /// True when every trajectory carries a ground-truth label.
    bool fully_labeled() const;

    friend bool operator==(const dataset&, const dataset&) = default;
};

} // namespace atdc

#endif // ATDC_TRAJECTORY_HPP
