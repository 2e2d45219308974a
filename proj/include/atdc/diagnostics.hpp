#ifndef ATDC_DIAGNOSTICS_HPP
#define ATDC_DIAGNOSTICS_HPP

#include "atdc/trajectory.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace atdc {

/// Sum of |DIS(candidate, m)| over members; +infinity as soon as a member
/// shares no cell with the candidate.
double prototype_objective(const trajectory& candidate, std::span<const trajectory> members);

/// The member with the smallest prototype_objective, lowest id on ties.
/// Throws data_error on an empty class.
const trajectory& prototype(std::span<const trajectory> members, unsigned threads = 1);

struct class_stats {
    class_label label = class_label::nt;
    trajectory_id prototype_id = 0;
    /// Mean and population variance over the finite stage-1 scores.
    double mean_s1 = 0.0;
    double var_s1 = 0.0;
    std::size_t count = 0;
};

/// Per-class statistics for every class present, in label order.
/// `s1` is aligned with ds.trajectories. Throws data_error when a
/// trajectory is unlabeled or the score count differs from N.
std::vector<class_stats> class_score_statistics(const dataset& ds, std::span<const double> s1,
                                                unsigned threads = 1);

struct ordering_report {
    bool gs_below_ls = false;
    bool ls_below_nt = false;
    bool nt_below_ld = false;
    bool ld_below_gd = false;
    bool nt_near_zero = false;

    bool all() const {
        return gs_below_ls && ls_below_nt && nt_below_ld && ld_below_gd && nt_near_zero;
    }
};

/// Checks mean S1 ordering GS < LS < NT < LD < GD and |mean S1(NT)| <= phi.
/// Throws data_error naming the classes absent from `stats`.
ordering_report ordering_check(std::span<const class_stats> stats, double phi);

/// CSV with header class,prototype_id,mean_s1,var_s1,count.
void write_stats_csv(std::span<const class_stats> stats, std::ostream& out);

} // namespace atdc

#endif // ATDC_DIAGNOSTICS_HPP
