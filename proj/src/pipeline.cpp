#include "atdc/pipeline.hpp"

#include "atdc/error.hpp"
#include "atdc/parallel.hpp"
#include "atdc/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace atdc {

using nlohmann::json;

std::string_view to_string(method m) { return m == method::atdc ? "atdc" : "fastatdc"; }

namespace {

using clock_type = std::chrono::steady_clock;
using ref_list = std::vector<std::reference_wrapper<const trajectory>>;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

constexpr double infinity = std::numeric_limits<double>::infinity();

/// Zero total overlap: +inf when the subject is longer than the mean
/// reference, -inf otherwise. Compared in integers to stay exact.
double fallback_score(const trajectory& subject, std::uint64_t reference_length_sum,
                      std::size_t reference_count) {
    const auto lhs = static_cast<std::uint64_t>(subject.size()) * reference_count;
    return lhs > reference_length_sum ? infinity : -infinity;
}

double score_or_fallback(const trajectory& subject, const ref_list& refs) {
    score_terms terms;
    std::uint64_t length_sum = 0;
    for (const trajectory& r : refs) {
        terms.add(subject, r);
        length_sum += r.size();
    }
    if (terms.shared_cells == 0)
        return fallback_score(subject, length_sum, refs.size());
    return terms.ratio();
}

std::string describe_scores(const std::vector<double>& s1) {
    std::vector<double> finite;
    for (double v : s1)
        if (std::isfinite(v))
            finite.push_back(v);
    std::ostringstream os;
    os << "stage-1 scores: " << s1.size() << " total, " << finite.size() << " finite";
    if (!finite.empty()) {
        std::sort(finite.begin(), finite.end());
        os << ", min " << finite.front() << ", median " << finite[finite.size() / 2] << ", max "
           << finite.back();
    }
    return os.str();
}

stage1_result stage1_pass(const dataset& ds, const detection_config& cfg, method m,
                          const run_options& opts) {
    const std::size_t n = ds.size();
    const auto& all = ds.trajectories;
    stage1_result out;
    out.scores.assign(n, 0.0);

    // The reference draw happens before any parallel work.
    std::vector<std::size_t> refs_idx;
    std::optional<std::size_t> backup_ref;
    if (m == method::fastatdc) {
        const auto count = sample_size(cfg.r1, n, 1);
        refs_idx = draw_sample(n, std::min(count + 1, n), cfg.seed, stream_tag::stage1_refs);
        if (refs_idx.size() > count) {
            backup_ref = refs_idx.back();
            refs_idx.pop_back();
        }
    } else {
        refs_idx.resize(n);
        std::iota(refs_idx.begin(), refs_idx.end(), std::size_t{0});
    }
    out.sample_size = refs_idx.size();

    std::vector<std::uint64_t> ops(n, 0);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        ref_list refs;
        refs.reserve(refs_idx.size());
        for (auto j : refs_idx)
            if (j != i)
                refs.emplace_back(all[j]);
        // only possible when the single sampled reference is i itself
        if (refs.empty())
            refs.emplace_back(all[*backup_ref]);
        ops[i] = refs.size();
        out.scores[i] = score_or_fallback(all[i], refs);
    });
    out.intersection_ops = std::accumulate(ops.begin(), ops.end(), std::uint64_t{0});
    return out;
}

run_result detect(const dataset& ds, detection_config cfg, const run_options& opts,
                  method m) {
    cfg.validate();
    const std::size_t n = ds.size();
    if (n < 2)
        throw dataset_too_small_error("detection needs at least 2 trajectories, got " +
                                      std::to_string(n));
    if (m == method::atdc) {
        cfg.r1 = 1.0;
        cfg.r2 = 1.0;
    }
    const auto& all = ds.trajectories;

    run_result result;
    result.dataset_name = ds.name;
    result.used = m;
    result.config = cfg;

    const auto run_start = clock_type::now();

    auto first = stage1_pass(ds, cfg, m, opts);
    result.stage1_scores = std::move(first.scores);
    result.stage1_sample_size = first.sample_size;
    result.timings.stage1_seconds = seconds_since(run_start);

    // ANT selection and stage-2 pool.
    const auto stage2_start = clock_type::now();
    std::vector<std::size_t> ant;
    std::vector<char> is_ant(n, 0);
    std::uint64_t ant_length_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_ant_interval(result.stage1_scores[i], cfg.phi)) {
            ant.push_back(i);
            is_ant[i] = 1;
            ant_length_sum += all[i].size();
        }
    }
    if (ant.empty())
        throw empty_ant_error("no trajectory scored within [-" + std::to_string(cfg.phi) + ", " +
                              std::to_string(cfg.phi) + "]; " +
                              describe_scores(result.stage1_scores));

    ref_list pool;
    if (m == method::fastatdc) {
        const auto count = sample_size(cfg.r2, ant.size(), cfg.k);
        for (auto pick : draw_sample(ant.size(), count, cfg.seed, stream_tag::stage2_ant))
            pool.emplace_back(all[ant[pick]]);
    } else {
        for (auto i : ant)
            pool.emplace_back(all[i]);
    }
    result.stage2_sample_size = pool.size();

    result.records.resize(n);
    std::vector<std::uint64_t> stage2_ops(n, 0);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        score_record& rec = result.records[i];
        rec.id = all[i].id();
        if (is_ant[i]) {
            rec.score = result.stage1_scores[i];
            rec.from = stage::stage1;
            rec.is_ant = true;
        } else {
            auto neighbors = k_nearest_ant(all[i], pool, cfg.k);
            stage2_ops[i] = pool.size() + neighbors.size();
            score_terms terms;
            for (const trajectory& t : neighbors)
                terms.add(all[i], t);
            rec.score = terms.shared_cells == 0
                            ? fallback_score(all[i], ant_length_sum, ant.size())
                            : terms.ratio();
            rec.from = stage::stage2;
            rec.is_ant = false;
        }
        rec.predicted = classify(rec.score, cfg.theta);
    });
    result.timings.stage2_seconds = seconds_since(stage2_start);
    result.timings.total_seconds = seconds_since(run_start);
    result.timings.seconds_per_100_trajectories =
        result.timings.total_seconds * 100.0 / static_cast<double>(n);

    for (auto i : ant)
        result.ant_ids.push_back(all[i].id());
    std::sort(result.ant_ids.begin(), result.ant_ids.end());
    result.intersection_ops =
        first.intersection_ops +
        std::accumulate(stage2_ops.begin(), stage2_ops.end(), std::uint64_t{0});
    return result;
}

json score_to_json(double s) {
    if (std::isinf(s))
        return s > 0 ? "inf" : "-inf";
    return s;
}

double score_from_json(const json& v) {
    if (v.is_string()) {
        const auto& text = v.get_ref<const std::string&>();
        if (text == "inf")
            return infinity;
        if (text == "-inf")
            return -infinity;
        throw data_error("bad score value \"" + text + "\"");
    }
    if (!v.is_number())
        throw data_error("score must be a number");
    return v.get<double>();
}

} // namespace

stage1_result stage1_scores(const dataset& ds, const detection_config& cfg, method m,
                            const run_options& opts) {
    cfg.validate();
    if (ds.size() < 2)
        throw dataset_too_small_error("stage-1 scoring needs at least 2 trajectories, got " +
                                      std::to_string(ds.size()));
    return stage1_pass(ds, cfg, m, opts);
}

run_result run_fastatdc(const dataset& ds, const detection_config& cfg,
                        const run_options& opts) {
    return detect(ds, cfg, opts, method::fastatdc);
}

run_result run_atdc(const dataset& ds, const detection_config& cfg, const run_options& opts) {
    return detect(ds, cfg, opts, method::atdc);
}

run_result run(method m, const dataset& ds, const detection_config& cfg,
               const run_options& opts) {
    return detect(ds, cfg, opts, m);
}

bool same_outcome(const run_result& a, const run_result& b) {
    return a.records == b.records && a.ant_ids == b.ant_ids &&
           a.stage1_scores == b.stage1_scores;
}

void write_run(const run_result& r, std::ostream& out) {
    for (const auto& rec : r.records) {
        json row = {{"id", rec.id},
                    {"score", score_to_json(rec.score)},
                    {"stage", static_cast<int>(rec.from)},
                    {"predicted", static_cast<int>(rec.predicted)},
                    {"is_ant", rec.is_ant}};
        out << row.dump() << '\n';
    }
    const auto& c = r.config;
    json summary = {
        {"dataset", r.dataset_name},
        {"method", std::string(to_string(r.used))},
        {"n", r.records.size()},
        {"ant_count", r.ant_ids.size()},
        {"stage1_sample_size", r.stage1_sample_size},
        {"stage2_sample_size", r.stage2_sample_size},
        {"intersection_ops", r.intersection_ops},
        {"timings",
         {{"stage1_seconds", r.timings.stage1_seconds},
          {"stage2_seconds", r.timings.stage2_seconds},
          {"total_seconds", r.timings.total_seconds},
          {"seconds_per_100_trajectories", r.timings.seconds_per_100_trajectories}}},
        {"config",
         {{"k", c.k},
          {"phi", c.phi},
          {"theta", c.theta.as_array()},
          {"r1", c.r1},
          {"r2", c.r2},
          {"seed", c.seed}}}};
    out << json{{"summary", summary}}.dump() << '\n';
}

run_result read_run(std::istream& in) {
    run_result r;
    std::string text;
    std::size_t line = 0;
    bool have_summary = false;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const auto obj = json::parse(text);
            if (have_summary)
                throw data_error("content after the summary line");
            if (auto s = obj.find("summary"); s != obj.end()) {
                const auto& sum = *s;
                r.dataset_name = sum.at("dataset").get<std::string>();
                r.used = sum.at("method").get<std::string>() == "atdc" ? method::atdc
                                                                       : method::fastatdc;
                r.stage1_sample_size = sum.value("stage1_sample_size", std::size_t{0});
                r.stage2_sample_size = sum.value("stage2_sample_size", std::size_t{0});
                r.intersection_ops = sum.value("intersection_ops", std::uint64_t{0});
                const auto& t = sum.at("timings");
                r.timings = {t.at("stage1_seconds").get<double>(),
                             t.at("stage2_seconds").get<double>(),
                             t.at("total_seconds").get<double>(),
                             t.at("seconds_per_100_trajectories").get<double>()};
                const auto& c = sum.at("config");
                r.config.k = c.at("k").get<std::uint32_t>();
                r.config.phi = c.at("phi").get<double>();
                r.config.theta = thresholds::from_array(c.at("theta").get<std::array<double, 4>>());
                r.config.r1 = c.at("r1").get<double>();
                r.config.r2 = c.at("r2").get<double>();
                r.config.seed = c.at("seed").get<std::uint64_t>();
                have_summary = true;
                continue;
            }
            score_record rec;
            rec.id = obj.at("id").get<trajectory_id>();
            rec.score = score_from_json(obj.at("score"));
            const int st = obj.at("stage").get<int>();
            if (st != 1 && st != 2)
                throw data_error("stage must be 1 or 2");
            rec.from = static_cast<stage>(st);
            auto label = label_from_code(obj.at("predicted").get<std::int64_t>());
            if (!label)
                throw data_error("predicted label out of range");
            rec.predicted = *label;
            rec.is_ant = obj.at("is_ant").get<bool>();
            if (rec.is_ant)
                r.ant_ids.push_back(rec.id);
            r.records.push_back(rec);
        } catch (const json::exception& e) {
            throw data_error("run file line " + std::to_string(line) + ": " + e.what());
        } catch (const data_error& e) {
            throw data_error("run file line " + std::to_string(line) + ": " + e.what());
        }
    }
    if (!have_summary)
        throw data_error("run file has no summary line");
    std::sort(r.ant_ids.begin(), r.ant_ids.end());
    return r;
}

} // namespace atdc
