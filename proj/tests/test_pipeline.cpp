#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atdc/error.hpp"
#include "atdc/generator.hpp"
#include "atdc/pipeline.hpp"
#include "atdc/presets.hpp"
#include "support.hpp"

#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

using namespace atdc;
using testing::traj;

namespace {

dataset preset_data(const char* name, std::uint64_t seed) {
    return generate(preset_spec(*find_dataset_preset(name), seed));
}

dataset from(std::vector<trajectory> ts) {
    dataset ds;
    ds.name = "toy";
    ds.grid_w = ds.grid_h = 1000;
    ds.trajectories = std::move(ts);
    return ds;
}

void check_invariants(const dataset& ds, const run_result& r) {
    REQUIRE(r.records.size() == ds.size());
    std::set<trajectory_id> ant(r.ant_ids.begin(), r.ant_ids.end());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& rec = r.records[i];
        CHECK(rec.id == ds.trajectories[i].id());
        CHECK(rec.predicted == classify(rec.score, r.config.theta));
        CHECK((rec.from == stage::stage1) == rec.is_ant);
        CHECK(rec.is_ant == (ant.count(rec.id) == 1));
        if (rec.is_ant) CHECK(in_ant_interval(rec.score, r.config.phi));
    }
    CHECK(r.timings.seconds_per_100_trajectories ==
          doctest::Approx(r.timings.total_seconds * 100.0 / static_cast<double>(ds.size())));
}

} // namespace

TEST_CASE("full sampling reproduces exhaustive detection bit for bit") {
    for (const char* name : {"t2", "t4"}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto ds = preset_data(name, seed);
            detection_config cfg;
            cfg.r1 = cfg.r2 = 1.0;
            cfg.seed = seed * 17 + 1;
            const auto fast = run_fastatdc(ds, cfg);
            const auto exact = run_atdc(ds, cfg);
            CHECK(same_outcome(fast, exact));
            for (std::size_t i = 0; i < ds.size(); ++i)
                CHECK(std::memcmp(&fast.records[i].score, &exact.records[i].score, sizeof(double)) == 0);
            check_invariants(ds, fast);
        }
    }
}

TEST_CASE("runs are deterministic in the seed and independent of thread count") {
    const auto ds = preset_data("t2", 4);
    detection_config cfg;
    cfg.r1 = 0.1;
    cfg.r2 = 0.3;
    cfg.seed = 8;
    const auto a = run_fastatdc(ds, cfg);
    const auto b = run_fastatdc(ds, cfg);
    const auto c = run_fastatdc(ds, cfg, run_options{8});
    CHECK(same_outcome(a, b));
    CHECK(same_outcome(a, c));
    std::ostringstream x, y;
    auto strip = [](run_result r) {
        r.timings = {};
        return r;
    };
    write_run(strip(a), x);
    write_run(strip(c), y);
    CHECK(x.str() == y.str());
    const auto exact1 = run_atdc(ds, cfg);
    const auto exact8 = run_atdc(ds, cfg, run_options{8});
    CHECK(same_outcome(exact1, exact8));
}

TEST_CASE("lowest sampling rate on a T-2-sized dataset draws one reference") {
    const auto ds = preset_data("t2", 0);
    REQUIRE(ds.size() == 311);
    detection_config cfg;
    cfg.r1 = 0.004;
    const auto s1 = stage1_scores(ds, cfg, method::fastatdc);
    CHECK(s1.sample_size == 1);
    // every trajectory but the sampled one is scored against it alone
    CHECK(s1.intersection_ops == 311);
}

TEST_CASE("three-trajectory toy matches a naive evaluation") {
    const auto ds = from({traj(0, {1, 2, 3, 4}), traj(1, {2, 3}), traj(2, {3, 4, 5})});
    const auto r = run_atdc(ds, detection_config{});
    const auto& t = ds.trajectories;
    CHECK(r.stage1_scores[0] == testing::naive_ratio(t[0], {&t[1], &t[2]}));
    CHECK(r.stage1_scores[1] == testing::naive_ratio(t[1], {&t[0], &t[2]}));
    CHECK(r.stage1_scores[2] == testing::naive_ratio(t[2], {&t[0], &t[1]}));
    CHECK(r.stage1_scores[0] == 0.75);
    CHECK(r.stage1_scores[1] == -1.0);
    CHECK(r.stage1_scores[2] == 0.0);
    CHECK(r.ant_ids == std::vector<trajectory_id>{2});
    // stage 2 against the single ANT member
    CHECK(r.records[0].score == testing::naive_ratio(t[0], {&t[2]}));
    CHECK(r.records[0].predicted == class_label::gd);
    CHECK(r.records[1].score == -1.0);
    CHECK(r.records[1].predicted == class_label::gs);
    CHECK(r.records[2].predicted == class_label::nt);
    check_invariants(ds, r);
}

TEST_CASE("identical trajectories are all ANT and normal") {
    std::vector<trajectory> ts;
    for (trajectory_id i = 0; i < 6; ++i) ts.push_back(traj(i, {5, 6, 7}));
    const auto ds = from(ts);
    for (auto m : {method::atdc, method::fastatdc}) {
        detection_config cfg;
        cfg.r1 = 0.5;
        const auto r = run(m, ds, cfg);
        CHECK(r.ant_ids.size() == 6);
        for (const auto& rec : r.records) {
            CHECK(rec.score == 0.0);
            CHECK(rec.predicted == class_label::nt);
        }
    }
}

TEST_CASE("a trajectory disjoint from all others falls back on its length") {
    // enough normals that the outlier barely moves their scores
    std::vector<trajectory> ts;
    for (trajectory_id i = 0; i < 30; ++i) ts.push_back(traj(i, testing::range_cells(1, 10)));
    SUBCASE("longer than the normals") {
        ts.push_back(traj(30, testing::range_cells(100, 20)));
        const auto r = run_atdc(from(ts), detection_config{});
        CHECK(r.stage1_scores[30] == std::numeric_limits<double>::infinity());
        CHECK(r.records[30].score == std::numeric_limits<double>::infinity());
        CHECK(r.records[30].predicted == class_label::gd);
    }
    SUBCASE("shorter than the normals") {
        ts.push_back(traj(30, {100, 101}));
        const auto r = run_atdc(from(ts), detection_config{});
        CHECK(r.stage1_scores[30] == -std::numeric_limits<double>::infinity());
        CHECK(r.records[30].score == -std::numeric_limits<double>::infinity());
        CHECK(r.records[30].predicted == class_label::gs);
    }
}

TEST_CASE("stage-2 fallback when the ANT shares nothing with a subject") {
    // 40 and 41 overlap only each other; the ANT is 0..39
    std::vector<trajectory> ts;
    for (trajectory_id i = 0; i < 40; ++i) ts.push_back(traj(i, testing::range_cells(1, 10)));
    ts.push_back(traj(40, testing::range_cells(100, 30)));
    ts.push_back(traj(41, {100, 101}));
    const auto r = run_atdc(from(ts), detection_config{});
    CHECK(r.ant_ids.size() == 40);
    CHECK(std::isfinite(r.stage1_scores[40]));
    CHECK(r.records[40].from == stage::stage2);
    CHECK(r.records[40].score == std::numeric_limits<double>::infinity());
    CHECK(r.records[40].predicted == class_label::gd);
    CHECK(r.records[41].score == -std::numeric_limits<double>::infinity());
    CHECK(r.records[41].predicted == class_label::gs);
}

TEST_CASE("error conditions") {
    CHECK_THROWS_AS(run_atdc(from({traj(0, {1})}), detection_config{}), dataset_too_small_error);
    CHECK_THROWS_AS(run_fastatdc(from({}), detection_config{}), dataset_too_small_error);
    const auto spread = from({traj(0, {1, 2, 3, 4}), traj(1, {2, 3})});
    try {
        run_atdc(spread, detection_config{});
        FAIL("expected an empty ANT");
    } catch (const empty_ant_error& e) {
        CHECK(std::string(e.what()).find("min") != std::string::npos);
    }
    detection_config bad;
    bad.r1 = 0;
    CHECK_THROWS_AS(run_fastatdc(spread, bad), config_error);
}

TEST_CASE("exhaustive runs echo full sampling rates") {
    const auto ds = preset_data("t4", 0);
    detection_config cfg;
    cfg.r1 = 0.1;
    cfg.r2 = 0.2;
    const auto r = run_atdc(ds, cfg);
    CHECK(r.config.r1 == 1.0);
    CHECK(r.config.r2 == 1.0);
    CHECK(r.stage1_sample_size == ds.size());
    CHECK(r.stage2_sample_size == r.ant_ids.size());
}

TEST_CASE("sampled detection does far less work") {
    const auto ds = preset_data("t1", 2);
    const double n = static_cast<double>(ds.size());
    detection_config cfg;
    cfg.r1 = 0.004;
    cfg.r2 = 0.3;
    const auto fast = run_fastatdc(ds, cfg);
    const double ant = static_cast<double>(fast.ant_ids.size());
    const double bound = n * (cfg.r1 * n + cfg.r2 * ant) + (2.0 * cfg.k + 2.0) * n;
    CHECK(static_cast<double>(fast.intersection_ops) <= bound);
    CHECK(static_cast<double>(fast.intersection_ops) * 10.0 <= n * n);
    const auto exact = run_atdc(ds, cfg);
    CHECK(exact.intersection_ops >= ds.size() * (ds.size() - 1));
    check_invariants(ds, fast);
    check_invariants(ds, exact);
}

TEST_CASE("sampled stage-1 scores are unbiased") {
    const auto ds = preset_data("t2", 1);
    const std::size_t n = ds.size();
    detection_config cfg;
    const auto full = stage1_scores(ds, cfg, method::atdc).scores;
    constexpr int seeds = 200;
    std::vector<double> sum(n, 0), sq(n, 0);
    std::vector<int> finite(n, 0);
    cfg.r1 = 0.1;
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = static_cast<std::uint64_t>(s);
        const auto sampled = stage1_scores(ds, cfg, method::fastatdc).scores;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(sampled[i])) continue;
            sum[i] += sampled[i];
            sq[i] += sampled[i] * sampled[i];
            ++finite[i];
        }
    }
    std::size_t within = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = sum[i] / finite[i];
        const double var = std::max(0.0, sq[i] / finite[i] - m * m);
        const double se = std::sqrt(var / finite[i]);
        if (finite[i] == seeds && std::abs(m - full[i]) <= 3 * se + 1e-12) ++within;
    }
    CAPTURE(within);
    CHECK(static_cast<double>(within) >= 0.95 * static_cast<double>(n));
}

TEST_CASE("run files round trip") {
    std::vector<trajectory> ts;
    for (trajectory_id i = 0; i < 30; ++i) ts.push_back(traj(i, testing::range_cells(1, 10)));
    ts.push_back(traj(30, testing::range_cells(100, 20)));
    ts.push_back(traj(31, {1, 2, 3, 4, 5}));
    const auto ds = from(ts);
    const auto r = run_atdc(ds, detection_config{});
    std::stringstream io;
    write_run(r, io);
    CHECK(io.str().find("\"inf\"") != std::string::npos);
    const auto back = read_run(io);
    CHECK(back.records == r.records);
    CHECK(back.ant_ids == r.ant_ids);
    CHECK(back.config == r.config);
    CHECK(back.dataset_name == r.dataset_name);
    CHECK(back.used == r.used);
    CHECK(back.intersection_ops == r.intersection_ops);
    CHECK(back.timings.total_seconds == r.timings.total_seconds);
}

TEST_CASE("malformed run files are rejected") {
    std::istringstream in("{\"id\": 0, \"score\": \"abc\"}\n");
    CHECK_THROWS_AS(read_run(in), data_error);
}
