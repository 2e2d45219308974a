#ifndef ATDC_EVAL_HPP
#define ATDC_EVAL_HPP

#include "atdc/trajectory.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace atdc {

/// Rows are true labels, columns predicted labels, both in label order.
using confusion_matrix = std::array<std::array<std::uint64_t, class_count>, class_count>;

/// Throws data_error on empty input or mismatched lengths.
confusion_matrix make_confusion(std::span<const class_label> truth,
                                std::span<const class_label> predicted);

struct f1_summary {
    std::array<double, class_count> per_class{};
    /// Classes with neither support nor predictions; their F1 is 0.
    std::array<bool, class_count> undefined{};
    /// Unweighted mean of F1 over GD, LD, LS and GS (NT excluded).
    double macro_anomaly = 0.0;
};

/// F1 = 2TP / (2TP + FP + FN) per class.
f1_summary f1_scores(const confusion_matrix& m);

/// Binary F1 of the positive class; 0 when there is nothing to score.
double binary_f1(const std::vector<bool>& truth, const std::vector<bool>& predicted);

/// All four anomaly classes are anomalous.
std::vector<bool> collapse_case1(std::span<const class_label> labels);
/// Only the global anomalies (GD, GS) are anomalous.
std::vector<bool> collapse_case2(std::span<const class_label> labels);

struct metrics_report {
    std::string dataset;
    std::string method;
    confusion_matrix confusion{};
    f1_summary f1;
    double case1_f1 = 0.0;
    double case2_f1 = 0.0;
    double seconds_per_100 = 0.0;
    std::size_t labeled = 0;
};

metrics_report evaluate(std::span<const class_label> truth, std::span<const class_label> predicted);

/// The binary-case entries are written only when requested.
void write_metrics_json(const metrics_report& r, std::ostream& out, bool with_case1 = true,
                        bool with_case2 = true);

/// Header matching write_metrics_csv_row.
std::string metrics_csv_header();
void write_metrics_csv_row(const metrics_report& r, std::ostream& out);

} // namespace atdc

#endif // ATDC_EVAL_HPP
