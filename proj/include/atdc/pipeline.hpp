#ifndef ATDC_PIPELINE_HPP
#define ATDC_PIPELINE_HPP

#include "atdc/scoring.hpp"
#include "atdc/trajectory.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace atdc {

enum class method { atdc, fastatdc };

std::string_view to_string(method m);

struct run_timings {
    double stage1_seconds = 0.0;
    double stage2_seconds = 0.0;
    double total_seconds = 0.0;
    double seconds_per_100_trajectories = 0.0;
};

struct run_result {
    std::string dataset_name;
    method used = method::fastatdc;
    detection_config config;
    /// One record per trajectory, in dataset order.
    std::vector<score_record> records;
    /// Stage-1 score of every trajectory, in dataset order. Trajectories
    /// with no shared cell against their references carry +/-infinity.
    std::vector<double> stage1_scores;
    /// The ANT set, ascending.
    std::vector<trajectory_id> ant_ids;
    std::size_t stage1_sample_size = 0;
    std::size_t stage2_sample_size = 0;
    /// Pairwise intersections evaluated across both stages.
    std::uint64_t intersection_ops = 0;
    run_timings timings;
};

struct run_options {
    /// Worker threads for per-trajectory scoring; 0 means hardware concurrency.
    unsigned threads = 1;
};

struct stage1_result {
    /// Aligned with ds.trajectories; +/-infinity where the subject shares no
    /// cell with its references.
    std::vector<double> scores;
    std::size_t sample_size = 0;
    std::uint64_t intersection_ops = 0;
};

/// Stage 1 alone: every trajectory against all others (atdc) or against
/// the shared reference sample (fastatdc).
stage1_result stage1_scores(const dataset& ds, const detection_config& cfg, method m,
                            const run_options& opts = {});

/// Sampled two-stage detection. Stage 1 scores every trajectory against one
/// shared reference sample of max(1, round(r1 N)) trajectories; stage 2
/// scores each non-ANT trajectory against its k nearest members of one
/// shared ANT sample of max(k, round(r2 |ANT|)) (capped at |ANT|).
///
/// Throws dataset_too_small_error for N < 2, config_error for an invalid
/// config and empty_ant_error when no stage-1 score lands in [-phi, phi].
run_result run_fastatdc(const dataset& ds, const detection_config& cfg,
                        const run_options& opts = {});

/// Exhaustive two-stage detection: stage 1 over all j != i, stage 2 over
/// the whole ANT set. The echoed config has r1 = r2 = 1.
run_result run_atdc(const dataset& ds, const detection_config& cfg,
                    const run_options& opts = {});

run_result run(method m, const dataset& ds, const detection_config& cfg,
               const run_options& opts = {});

/// Score records, labels and ANT set equal; timings ignored.
bool same_outcome(const run_result& a, const run_result& b);

// Run file: one JSON object per trajectory
//   {"id": int, "score": number|"inf"|"-inf", "stage": 1|2, "predicted": int, "is_ant": bool}
// followed by a single {"summary": {...}} line with timings and the config echo.
void write_run(const run_result& r, std::ostream& out);

/// Reads back what write_run produced. Summary fields are restored; the
/// per-trajectory stage-1 scores are not part of the file.
run_result read_run(std::istream& in);

} // namespace atdc

#endif // ATDC_PIPELINE_HPP
