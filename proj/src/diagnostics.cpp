#include "atdc/diagnostics.hpp"

#include "atdc/error.hpp"
#include "atdc/parallel.hpp"
#include "atdc/scoring.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace atdc {

double prototype_objective(const trajectory& candidate, std::span<const trajectory> members) {
    double total = 0.0;
    for (const auto& m : members) {
        const auto shared = intersection_size(candidate, m);
        if (shared == 0)
            return std::numeric_limits<double>::infinity();
        total += std::abs(static_cast<double>(candidate.size()) - static_cast<double>(m.size())) /
                 static_cast<double>(shared);
    }
    return total;
}

const trajectory& prototype(std::span<const trajectory> members, unsigned threads) {
    if (members.empty())
        throw data_error("prototype of an empty class");
    std::vector<double> objective(members.size());
    parallel_for(members.size(), threads,
                 [&](std::size_t i) { objective[i] = prototype_objective(members[i], members); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (objective[i] < objective[best] ||
            (objective[i] == objective[best] && members[i].id() < members[best].id()))
            best = i;
    }
    return members[best];
}

std::vector<class_stats> class_score_statistics(const dataset& ds, std::span<const double> s1,
                                                unsigned threads) {
    if (s1.size() != ds.size())
        throw data_error("expected " + std::to_string(ds.size()) + " stage-1 scores, got " +
                         std::to_string(s1.size()));
    std::array<std::vector<trajectory>, class_count> members;
    std::array<std::vector<double>, class_count> scores;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& t = ds.trajectories[i];
        if (!t.label())
            throw data_error("trajectory " + std::to_string(t.id()) + " has no label");
        members[index_of(*t.label())].push_back(t);
        if (std::isfinite(s1[i]))
            scores[index_of(*t.label())].push_back(s1[i]);
    }
    std::vector<class_stats> out;
    for (auto c : all_classes) {
        const auto& group = members[index_of(c)];
        if (group.empty())
            continue;
        class_stats st;
        st.label = c;
        st.count = group.size();
        st.prototype_id = prototype(group, threads).id();
        const auto& v = scores[index_of(c)];
        if (!v.empty()) {
            double sum = 0.0;
            for (double x : v)
                sum += x;
            st.mean_s1 = sum / static_cast<double>(v.size());
            double sq = 0.0;
            for (double x : v)
                sq += (x - st.mean_s1) * (x - st.mean_s1);
            st.var_s1 = sq / static_cast<double>(v.size());
        } else {
            st.mean_s1 = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(st);
    }
    return out;
}

ordering_report ordering_check(std::span<const class_stats> stats, double phi) {
    std::array<const class_stats*, class_count> by_class{};
    for (const auto& s : stats)
        by_class[index_of(s.label)] = &s;
    std::string missing;
    for (auto c : all_classes) {
        if (by_class[index_of(c)] == nullptr) {
            if (!missing.empty())
                missing += ", ";
            missing += to_string(c);
        }
    }
    if (!missing.empty())
        throw data_error("ordering check needs all five classes; missing " + missing);
    auto mean = [&](class_label c) { return by_class[index_of(c)]->mean_s1; };
    ordering_report r;
    r.gs_below_ls = mean(class_label::gs) < mean(class_label::ls);
    r.ls_below_nt = mean(class_label::ls) < mean(class_label::nt);
    r.nt_below_ld = mean(class_label::nt) < mean(class_label::ld);
    r.ld_below_gd = mean(class_label::ld) < mean(class_label::gd);
    r.nt_near_zero = std::abs(mean(class_label::nt)) <= phi;
    return r;
}

void write_stats_csv(std::span<const class_stats> stats, std::ostream& out) {
    std::ostringstream os;
    os << "class,prototype_id,mean_s1,var_s1,count\n" << std::setprecision(10);
    for (const auto& s : stats)
        os << to_string(s.label) << ',' << s.prototype_id << ',' << s.mean_s1 << ',' << s.var_s1
           << ',' << s.count << '\n';
    out << os.str();
}

} // namespace atdc
