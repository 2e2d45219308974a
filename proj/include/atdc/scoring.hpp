#ifndef ATDC_SCORING_HPP
#define ATDC_SCORING_HPP

#include "atdc/trajectory.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace atdc {

/// Segmentation thresholds, strictly decreasing: gd_min > ld_min > 0 > ls_max > gs_max.
struct thresholds {
    double gd_min = 0.5;   // score >= gd_min                 -> GD
    double ld_min = 0.11;  // ld_min <= score < gd_min        -> LD
    double ls_max = -0.11; // gs_max < score <= ls_max        -> LS
    double gs_max = -0.5;  // score <= gs_max                 -> GS

    std::array<double, 4> as_array() const { return {gd_min, ld_min, ls_max, gs_max}; }
    static thresholds from_array(const std::array<double, 4>& v) {
        return {v[0], v[1], v[2], v[3]};
    }
    friend bool operator==(const thresholds&, const thresholds&) = default;
};

/// Hyperparameters of a detection run.
struct detection_config {
    std::uint32_t k = 10;       // nearest ANT used by the second stage
    double phi = 0.04;          // ANT half-interval
    thresholds theta;
    double r1 = 1.0;            // stage-1 reference sampling rate
    double r2 = 1.0;            // stage-2 ANT sampling rate
    std::uint64_t seed = 0;

    /// Throws config_error when an invariant is violated.
    void validate() const;

    friend bool operator==(const detection_config&, const detection_config&) = default;
};

enum class stage : int { stage1 = 1, stage2 = 2 };

struct score_record {
    trajectory_id id = 0;
    double score = 0.0;
    stage from = stage::stage1;
    class_label predicted = class_label::nt;
    bool is_ant = false;

    friend bool operator==(const score_record&, const score_record&) = default;
};

/// Size of the set intersection of two trajectories' cells.
std::size_t intersection_size(const trajectory& a, const trajectory& b);

/// Signed difference-and-intersection distance (|a| - |b|) / |a n b|.
/// Throws zero_denominator_error when the trajectories share no cell.
double dis(const trajectory& a, const trajectory& b);

/// Numerator and denominator of a ratio-of-sums anomaly score, kept as
/// exact integers so that summation order never changes the result.
struct score_terms {
    std::int64_t length_difference = 0;
    std::int64_t shared_cells = 0;

    void add(const trajectory& subject, const trajectory& reference);
    /// Throws zero_denominator_error when shared_cells is zero.
    double ratio() const;
};

/// Sum over refs of (|i| - |j|) divided by the sum of |i n j|. The caller
/// keeps `subject` out of `refs`.
double stage1_score(const trajectory& subject,
                    std::span<const std::reference_wrapper<const trajectory>> refs);
double stage1_score(const trajectory& subject, std::span<const trajectory> refs);

/// Same functional form as stage1_score, evaluated over the subject's
/// nearest ANT.
double stage2_score(const trajectory& subject,
                    std::span<const std::reference_wrapper<const trajectory>> neighbors);
double stage2_score(const trajectory& subject, std::span<const trajectory> neighbors);

/// Ids whose stage-1 score lies in the closed interval [-phi, phi].
std::vector<trajectory_id> select_ant(const std::unordered_map<trajectory_id, double>& scores,
                                      double phi);

/// True when -phi <= score <= phi.
inline bool in_ant_interval(double score, double phi) { return -phi <= score && score <= phi; }

/// The min(k, |pool|) pool members sharing the most cells with `subject`,
/// by descending intersection and then ascending id.
std::vector<std::reference_wrapper<const trajectory>>
k_nearest_ant(const trajectory& subject,
              std::span<const std::reference_wrapper<const trajectory>> pool, std::size_t k);
std::vector<std::reference_wrapper<const trajectory>>
k_nearest_ant(const trajectory& subject, std::span<const trajectory> pool, std::size_t k);

/// Segmentation of the score line into the five classes, using exact
/// floating-point comparisons.
class_label classify(double score, const thresholds& theta);

} // namespace atdc

#endif // ATDC_SCORING_HPP
