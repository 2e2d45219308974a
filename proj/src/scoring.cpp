#include "atdc/scoring.hpp"

#include "atdc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace atdc {

void detection_config::validate() const {
    if (k == 0)
        throw config_error("k must be positive");
    if (!std::isfinite(phi) || phi < 0.0)
        throw config_error("phi must be a finite non-negative number");
    const auto& t = theta;
    for (double v : t.as_array())
        if (!std::isfinite(v))
            throw config_error("theta entries must be finite");
    if (!(t.gd_min > t.ld_min && t.ld_min > 0.0 && 0.0 > t.ls_max && t.ls_max > t.gs_max))
        throw config_error("theta must satisfy theta1 > theta2 > 0 > theta3 > theta4");
    if (!(phi < t.ld_min && -phi > t.ls_max))
        throw config_error("phi must satisfy phi < theta2 and -phi > theta3");
    if (!(r1 > 0.0 && r1 <= 1.0))
        throw config_error("r1 must lie in (0, 1]");
    if (!(r2 > 0.0 && r2 <= 1.0))
        throw config_error("r2 must lie in (0, 1]");
}

std::size_t intersection_size(const trajectory& a, const trajectory& b) {
    auto x = a.sorted_cells();
    auto y = b.sorted_cells();
    std::size_t i = 0, j = 0, count = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j]) {
            ++i;
        } else if (y[j] < x[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

double dis(const trajectory& a, const trajectory& b) {
    const auto shared = intersection_size(a, b);
    if (shared == 0)
        throw zero_denominator_error("trajectories " + std::to_string(a.id()) + " and " +
                                     std::to_string(b.id()) + " share no cells");
    return (static_cast<double>(a.size()) - static_cast<double>(b.size())) /
           static_cast<double>(shared);
}

void score_terms::add(const trajectory& subject, const trajectory& reference) {
    length_difference +=
        static_cast<std::int64_t>(subject.size()) - static_cast<std::int64_t>(reference.size());
    shared_cells += static_cast<std::int64_t>(intersection_size(subject, reference));
}

double score_terms::ratio() const {
    if (shared_cells == 0)
        throw zero_denominator_error("subject shares no cells with any reference");
    return static_cast<double>(length_difference) / static_cast<double>(shared_cells);
}

namespace {

template <typename Range>
double ratio_of_sums(const trajectory& subject, const Range& refs, const char* what) {
    if (refs.empty())
        throw algorithm_error(std::string(what) + ": empty reference set");
    score_terms terms;
    for (const trajectory& r : refs)
        terms.add(subject, r);
    if (terms.shared_cells == 0)
        throw zero_denominator_error(std::string(what) + ": trajectory " +
                                     std::to_string(subject.id()) +
                                     " shares no cells with its references");
    return terms.ratio();
}

template <typename Range>
std::vector<std::reference_wrapper<const trajectory>>
nearest(const trajectory& subject, const Range& pool, std::size_t k) {
    struct candidate {
        std::size_t shared;
        const trajectory* t;
    };
    std::vector<candidate> ranked;
    ranked.reserve(pool.size());
    for (const trajectory& t : pool)
        ranked.push_back({intersection_size(subject, t), &t});
    const auto take = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                      ranked.end(), [](const candidate& a, const candidate& b) {
                          if (a.shared != b.shared)
                              return a.shared > b.shared;
                          return a.t->id() < b.t->id();
                      });
    std::vector<std::reference_wrapper<const trajectory>> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        out.emplace_back(*ranked[i].t);
    return out;
}

} // namespace

double stage1_score(const trajectory& subject,
                    std::span<const std::reference_wrapper<const trajectory>> refs) {
    return ratio_of_sums(subject, refs, "stage-1 score");
}

double stage1_score(const trajectory& subject, std::span<const trajectory> refs) {
    return ratio_of_sums(subject, refs, "stage-1 score");
}

double stage2_score(const trajectory& subject,
                    std::span<const std::reference_wrapper<const trajectory>> neighbors) {
    return ratio_of_sums(subject, neighbors, "stage-2 score");
}

double stage2_score(const trajectory& subject, std::span<const trajectory> neighbors) {
    return ratio_of_sums(subject, neighbors, "stage-2 score");
}

std::vector<trajectory_id> select_ant(const std::unordered_map<trajectory_id, double>& scores,
                                      double phi) {
    std::vector<trajectory_id> ids;
    for (const auto& [id, s] : scores)
        if (in_ant_interval(s, phi))
            ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::reference_wrapper<const trajectory>>
k_nearest_ant(const trajectory& subject,
              std::span<const std::reference_wrapper<const trajectory>> pool, std::size_t k) {
    return nearest(subject, pool, k);
}

std::vector<std::reference_wrapper<const trajectory>>
k_nearest_ant(const trajectory& subject, std::span<const trajectory> pool, std::size_t k) {
    return nearest(subject, pool, k);
}

class_label classify(double score, const thresholds& theta) {
    if (score >= theta.gd_min)
        return class_label::gd;
    if (score >= theta.ld_min)
        return class_label::ld;
    if (score <= theta.gs_max)
        return class_label::gs;
    if (score <= theta.ls_max)
        return class_label::ls;
    return class_label::nt;
}

} // namespace atdc
