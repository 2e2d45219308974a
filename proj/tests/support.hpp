#ifndef ATDC_TESTS_SUPPORT_HPP
#define ATDC_TESTS_SUPPORT_HPP

#include "atdc/trajectory.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

inline atdc::trajectory traj(atdc::trajectory_id id, std::vector<atdc::cell_id> cells,
                             std::optional<atdc::class_label> label = std::nullopt) {
    return atdc::trajectory(id, std::move(cells), label);
}

inline std::vector<atdc::cell_id> range_cells(atdc::cell_id first, atdc::cell_id count) {
    std::vector<atdc::cell_id> out(count);
    for (atdc::cell_id i = 0; i < count; ++i) out[i] = first + i;
    return out;
}

// Set intersection through std::set, independent of the merge used by the library.
inline std::size_t naive_intersection(const atdc::trajectory& a, const atdc::trajectory& b) {
    std::set<atdc::cell_id> sa(a.cells().begin(), a.cells().end());
    std::size_t n = 0;
    for (auto c : b.cells()) n += sa.count(c);
    return n;
}

// Ratio of sums in long double; nullopt-like NaN when nothing is shared.
inline double naive_ratio(const atdc::trajectory& subject,
                          const std::vector<const atdc::trajectory*>& refs) {
    long double num = 0, den = 0;
    for (const auto* r : refs) {
        num += static_cast<long double>(subject.size()) - static_cast<long double>(r->size());
        den += static_cast<long double>(naive_intersection(subject, *r));
    }
    if (den == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(num / den);
}

// Random trajectories over a small grid so that most pairs overlap.
inline atdc::dataset random_dataset(std::size_t n, std::uint64_t seed, atdc::cell_id grid = 8,
                                    std::size_t min_len = 3, std::size_t max_len = 20) {
    std::mt19937_64 rng(seed);
    atdc::dataset ds;
    ds.name = "random";
    ds.grid_w = grid;
    ds.grid_h = grid;
    std::vector<atdc::cell_id> all(grid * grid);
    for (atdc::cell_id c = 0; c < all.size(); ++c) all[c] = c;
    for (std::size_t i = 0; i < n; ++i) {
        std::shuffle(all.begin(), all.end(), rng);
        const std::size_t len = min_len + rng() % (max_len - min_len + 1);
        ds.trajectories.emplace_back(i, std::vector<atdc::cell_id>(all.begin(), all.begin() + len),
                                     static_cast<atdc::class_label>(rng() % 5));
    }
    return ds;
}

// Confusion matrix (rows true, columns predicted) whose per-class F1 for
// each anomaly class rounds to the target at 4 decimals. Errors are placed
// in the NT row and column. Supports start at `support` and grow until an
// integer (TP, FP, FN) triple hits the target.
inline std::array<std::array<std::uint64_t, 5>, 5>
confusion_for_f1(const std::array<double, 4>& targets, const std::array<std::uint64_t, 4>& support,
                 std::uint64_t nt_correct) {
    std::array<std::array<std::uint64_t, 5>, 5> m{};
    const std::array<std::size_t, 4> cls{0, 1, 3, 4};
    m[2][2] = nt_correct;
    for (std::size_t k = 0; k < 4; ++k) {
        const double f = targets[k];
        bool found = false;
        for (std::uint64_t s = std::max<std::uint64_t>(support[k], 1); !found && s < 100000; ++s) {
            for (std::uint64_t tp = s; tp > 0 && !found; --tp) {
                const std::uint64_t fn = s - tp;
                const double fp_real = 2.0 * static_cast<double>(tp) / f - 2.0 * static_cast<double>(tp) -
                                       static_cast<double>(fn);
                if (fp_real < -0.5) continue;
                const auto fp = static_cast<std::uint64_t>(std::max(0.0, std::llround(fp_real) * 1.0));
                const double got = 2.0 * static_cast<double>(tp) /
                                   static_cast<double>(2 * tp + fp + fn);
                if (std::abs(got - f) <= 5e-5) {
                    m[cls[k]][cls[k]] = tp;
                    m[cls[k]][2] = fn;
                    m[2][cls[k]] = fp;
                    found = true;
                }
            }
        }
        if (!found) throw std::runtime_error("no confusion matrix for target F1");
    }
    return m;
}

struct temp_dir {
    std::filesystem::path path;
    explicit temp_dir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("atdc_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~temp_dir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

} // namespace testing

#endif
