#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atdc/diagnostics.hpp"
#include "atdc/error.hpp"
#include "atdc/generator.hpp"
#include "atdc/pipeline.hpp"
#include "atdc/presets.hpp"
#include "atdc/scoring.hpp"
#include "support.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

using namespace atdc;
using testing::traj;

namespace {

// Exhaustive argmin of the prototype objective with the lowest-id tie rule.
trajectory_id brute_prototype(const std::vector<trajectory>& members) {
    double best = std::numeric_limits<double>::infinity();
    trajectory_id best_id = std::numeric_limits<trajectory_id>::max();
    for (const auto& c : members) {
        double sum = 0;
        for (const auto& m : members) {
            const auto shared = testing::naive_intersection(c, m);
            if (shared == 0) {
                sum = std::numeric_limits<double>::infinity();
                break;
            }
            sum += std::abs((static_cast<double>(c.size()) - static_cast<double>(m.size())) /
                            static_cast<double>(shared));
        }
        if (sum < best || (sum == best && c.id() < best_id)) {
            best = sum;
            best_id = c.id();
        }
    }
    return best_id;
}

class_stats stat(class_label c, double mean) {
    class_stats s;
    s.label = c;
    s.mean_s1 = mean;
    s.count = 1;
    return s;
}

std::vector<class_stats> five(double gs, double ls, double nt, double ld, double gd) {
    return {stat(class_label::gd, gd), stat(class_label::ld, ld), stat(class_label::nt, nt),
            stat(class_label::ls, ls), stat(class_label::gs, gs)};
}

} // namespace

TEST_CASE("prototype of trivial classes") {
    const std::vector<trajectory> one{traj(5, {1, 2})};
    CHECK(prototype(one).id() == 5);
    const std::vector<trajectory> same{traj(9, {1, 2, 3}), traj(3, {3, 2, 1}), traj(4, {1, 2, 3})};
    CHECK(prototype(same).id() == 3);
    CHECK_THROWS_AS(prototype(std::span<const trajectory>{}), data_error);
}

TEST_CASE("prototype of three members matches brute force") {
    const std::vector<trajectory> members{traj(0, {1, 2, 3, 4, 5, 6}), traj(1, {2, 3, 4, 5}),
                                          traj(2, {3, 4})};
    CHECK(prototype(members).id() == brute_prototype(members));
    CHECK(prototype(members).id() == 1);
}

TEST_CASE("zero-intersection members are never prototypes when avoidable") {
    const std::vector<trajectory> members{traj(0, {1, 2, 3}), traj(1, {2, 3, 4}),
                                          traj(2, {100})};
    CHECK(prototype_objective(members[2], members) == std::numeric_limits<double>::infinity());
}

TEST_CASE("prototype is optimal and order independent") {
    std::mt19937_64 rng(12);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto ds = testing::random_dataset(2 + seed % 49, seed, 6, 3, 15);
        std::vector<trajectory> members = ds.trajectories;
        const auto& best = prototype(members);
        const double best_value = prototype_objective(best, members);
        for (const auto& c : members) CHECK(best_value <= prototype_objective(c, members));
        CHECK(best.id() == brute_prototype(members));
        const auto id = best.id();
        std::shuffle(members.begin(), members.end(), rng);
        CHECK(prototype(members).id() == id);
        CHECK(prototype(members, 4).id() == id);
    }
}

TEST_CASE("class statistics") {
    dataset ds;
    ds.grid_w = ds.grid_h = 100;
    ds.trajectories = {traj(0, {1, 2}, class_label::nt), traj(1, {1, 2}, class_label::nt),
                       traj(2, {1, 2, 3}, class_label::gd), traj(3, {5}, class_label::gd)};
    const std::vector<double> s1{0.25, 0.25, 1.0, 3.0};
    const auto stats = class_score_statistics(ds, s1);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].label == class_label::gd);
    CHECK(stats[0].mean_s1 == 2.0);
    CHECK(stats[0].var_s1 == 1.0);
    CHECK(stats[0].count == 2);
    CHECK(stats[1].label == class_label::nt);
    CHECK(stats[1].var_s1 == 0.0);
    CHECK(stats[1].prototype_id == 0);

    const std::vector<double> short_scores{0.0};
    CHECK_THROWS_AS(class_score_statistics(ds, short_scores), data_error);
    ds.trajectories[3].set_label(std::nullopt);
    CHECK_THROWS_AS(class_score_statistics(ds, s1), data_error);
}

TEST_CASE("single-class statistics equal dataset statistics") {
    auto ds = testing::random_dataset(40, 3);
    for (auto& t : ds.trajectories) t.set_label(class_label::ls);
    const auto s1 = stage1_scores(ds, detection_config{}, method::atdc).scores;
    double sum = 0;
    std::size_t n = 0;
    for (double v : s1)
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    const auto stats = class_score_statistics(ds, s1);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].mean_s1 == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-12));
    CHECK(stats[0].var_s1 >= 0.0);
}

TEST_CASE("ordering check") {
    const auto ok = ordering_check(five(-0.8, -0.3, 0.01, 0.3, 0.9), 0.04);
    CHECK(ok.all());
    const auto off = ordering_check(five(-0.8, -0.3, 0.2, 0.3, 0.9), 0.04);
    CHECK_FALSE(off.nt_near_zero);
    CHECK(off.nt_below_ld);
    CHECK_FALSE(off.all());
    const auto swapped = ordering_check(five(-0.2, -0.3, 0.0, 0.3, 0.9), 0.04);
    CHECK_FALSE(swapped.gs_below_ls);
    CHECK(swapped.ls_below_nt);

    auto missing = five(-0.8, -0.3, 0.01, 0.3, 0.9);
    missing.erase(missing.begin() + 4);
    missing.erase(missing.begin());
    try {
        ordering_check(missing, 0.04);
        FAIL("missing classes accepted");
    } catch (const data_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("GD") != std::string::npos);
        CHECK(msg.find("GS") != std::string::npos);
    }
}

TEST_CASE("generated T-1 data satisfies the expectation ordering") {
    const auto ds = generate(preset_spec(*find_dataset_preset("t1"), 0));
    const auto s1 = stage1_scores(ds, detection_config{}, method::atdc).scores;
    const auto stats = class_score_statistics(ds, s1);
    CHECK(ordering_check(stats, 0.04).all());
    std::ostringstream csv;
    write_stats_csv(stats, csv);
    CHECK(csv.str().rfind("class,prototype_id,mean_s1,var_s1,count\n", 0) == 0);
}

TEST_CASE("the ordering survives stage-1 sampling") {
    // default mix; the first seed whose i.i.d. draw contains every class
    generator_spec spec;
    dataset ds;
    for (spec.seed = 0;; ++spec.seed) {
        ds = generate(spec);
        std::set<class_label> seen;
        for (const auto& t : ds.trajectories) seen.insert(*t.label());
        if (seen.size() == class_count) break;
    }
    detection_config cfg;
    CHECK(ordering_check(class_score_statistics(ds, stage1_scores(ds, cfg, method::atdc).scores),
                         cfg.phi)
              .all());
    cfg.r1 = 0.1;
    int pass = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        cfg.seed = seed;
        const auto s1 = stage1_scores(ds, cfg, method::fastatdc).scores;
        pass += ordering_check(class_score_statistics(ds, s1), cfg.phi).all() ? 1 : 0;
    }
    CAPTURE(pass);
    CHECK(pass >= 95);
}
