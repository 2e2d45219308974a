#include "atdc/cli.hpp"

#include "atdc/dataset_io.hpp"
#include "atdc/diagnostics.hpp"
#include "atdc/error.hpp"
#include "atdc/eval.hpp"
#include "atdc/generator.hpp"
#include "atdc/parallel.hpp"
#include "atdc/pipeline.hpp"
#include "atdc/presets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace atdc {

namespace {

using nlohmann::json;

struct global_flags {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string output;
    std::string format;
};

struct detection_flags {
    std::string method = "fastatdc";
    std::uint32_t k = 10;
    double phi = 0.04;
    std::vector<double> theta;
    std::string theta_preset;
    double r1 = 0.004;
    double r2 = 0.30;
};

void add_detection_flags(CLI::App& cmd, detection_flags& f, bool with_method,
                         bool with_rates = true) {
    if (with_method)
        cmd.add_option("--method", f.method, "Detector: atdc or fastatdc")
            ->check(CLI::IsMember({"atdc", "fastatdc"}))
            ->capture_default_str();
    cmd.add_option("--k", f.k, "Nearest ANT per stage-2 subject")->capture_default_str();
    cmd.add_option("--phi", f.phi, "ANT half-interval")->capture_default_str();
    cmd.add_option("--theta", f.theta, "Thresholds theta1,theta2,theta3,theta4 "
                                       "(default 0.5,0.11,-0.11,-0.5)")
        ->delimiter(',')
        ->allow_extra_args(false);
    cmd.add_option("--theta-preset", f.theta_preset, "Tuned thresholds of dataset t1..t6")
        ->check(CLI::IsMember({"t1", "t2", "t3", "t4", "t5", "t6"}));
    if (!with_rates)
        return;
    cmd.add_option("--r1", f.r1, "Stage-1 sampling rate in (0, 1]")->capture_default_str();
    cmd.add_option("--r2", f.r2, "Stage-2 sampling rate in (0, 1]")->capture_default_str();
}

detection_config make_config(const detection_flags& f, std::uint64_t seed) {
    detection_config cfg;
    cfg.k = f.k;
    cfg.phi = f.phi;
    cfg.r1 = f.r1;
    cfg.r2 = f.r2;
    cfg.seed = seed;
    if (!f.theta_preset.empty() && !f.theta.empty())
        throw config_error("--theta and --theta-preset are mutually exclusive");
    if (!f.theta_preset.empty())
        cfg.theta = *find_theta_preset(f.theta_preset);
    if (!f.theta.empty()) {
        if (f.theta.size() != 4)
            throw config_error("--theta needs exactly four comma-separated values");
        cfg.theta = thresholds::from_array({f.theta[0], f.theta[1], f.theta[2], f.theta[3]});
    }
    cfg.validate();
    return cfg;
}

method parse_method(const std::string& name) {
    return name == "atdc" ? method::atdc : method::fastatdc;
}

/// Sends `write` to the --output file when one is set, otherwise to `out`.
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw io_error("cannot write " + path);
    write(file);
    file.flush();
    if (!file)
        throw io_error("write failed for " + path);
}

std::string format_or(const global_flags& g, const char* fallback) {
    return g.format.empty() ? fallback : g.format;
}

std::string fmt(double v) {
    if (std::isnan(v))
        return "";
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::vector<class_label> truth_labels(const dataset& ds) {
    std::vector<class_label> out;
    out.reserve(ds.size());
    for (const auto& t : ds.trajectories) {
        if (!t.label())
            throw data_error("dataset " + ds.name + " is not fully labeled (trajectory " +
                             std::to_string(t.id()) + ")");
        out.push_back(*t.label());
    }
    return out;
}

std::vector<class_label> predicted_labels(const run_result& r) {
    std::vector<class_label> out;
    out.reserve(r.records.size());
    for (const auto& rec : r.records)
        out.push_back(rec.predicted);
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------- gen

struct gen_flags {
    std::string preset;
    bool iid = false;
    std::size_t n = 0;
    std::vector<double> probs;
    std::vector<std::uint32_t> grid;
    std::size_t route_len = 40;
    double detour_frac = 0.3;
    double shortcut_frac = 0.3;
    double variant_share = 0.3;
    double variant_frac = 0.25;
    std::string name;
};

int cmd_gen(const global_flags& g, const gen_flags& f, std::ostream& out, std::ostream& err) {
    generator_spec spec;
    if (!f.preset.empty()) {
        spec = preset_spec(*find_dataset_preset(f.preset), g.seed);
        if (f.iid)
            spec.counts.reset();
    }
    if (f.n != 0) {
        if (spec.counts)
            throw config_error("--n conflicts with the exact counts of --preset (add --iid)");
        spec.n = f.n;
    }
    if (!f.probs.empty()) {
        if (f.probs.size() != class_count)
            throw config_error("--probs needs five values (GD,LD,NT,LS,GS)");
        std::copy(f.probs.begin(), f.probs.end(), spec.probs.begin());
        spec.counts.reset();
    }
    if (!f.grid.empty()) {
        if (f.grid.size() != 2)
            throw config_error("--grid needs W,H");
        spec.grid_w = f.grid[0];
        spec.grid_h = f.grid[1];
    }
    spec.route_len = f.route_len;
    spec.detour_frac = f.detour_frac;
    spec.shortcut_frac = f.shortcut_frac;
    spec.variant_share = f.variant_share;
    spec.variant_frac = f.variant_frac;
    spec.seed = g.seed;
    if (!f.name.empty())
        spec.name = f.name;

    const auto ds = generate(spec);
    emit(g.output, out, [&](std::ostream& os) { write_dataset(ds, os); });

    std::array<std::size_t, class_count> counts{};
    for (const auto& t : ds.trajectories)
        ++counts[index_of(*t.label())];
    auto& report = g.output.empty() ? err : out;
    report << ds.name << ": " << ds.size() << " trajectories";
    for (auto c : all_classes)
        report << ' ' << to_string(c) << '=' << counts[index_of(c)];
    report << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- detect

int cmd_detect(const global_flags& g, const detection_flags& f, const std::string& input,
               std::ostream& out) {
    const auto cfg = make_config(f, g.seed);
    const auto ds = load_dataset(input);
    const auto result = run(parse_method(f.method), ds, cfg, {g.threads});
    emit(g.output, out, [&](std::ostream& os) { write_run(result, os); });
    return exit_ok;
}

// ---------------------------------------------------------------- eval

metrics_report evaluate_run(const dataset& ds, const run_result& r) {
    const auto truth = truth_labels(ds);
    std::unordered_map<trajectory_id, class_label> predicted;
    for (const auto& rec : r.records)
        predicted.emplace(rec.id, rec.predicted);
    std::vector<class_label> pred;
    pred.reserve(ds.size());
    for (const auto& t : ds.trajectories) {
        auto it = predicted.find(t.id());
        if (it == predicted.end())
            throw data_error("run has no record for trajectory " + std::to_string(t.id()));
        pred.push_back(it->second);
    }
    if (predicted.size() != ds.size()) {
        std::unordered_map<trajectory_id, bool> known;
        for (const auto& t : ds.trajectories)
            known.emplace(t.id(), true);
        for (const auto& rec : r.records)
            if (!known.count(rec.id))
                throw data_error("run record " + std::to_string(rec.id) +
                                 " has no trajectory in the dataset");
    }
    auto report = evaluate(truth, pred);
    report.dataset = ds.name;
    report.method = std::string(to_string(r.used));
    report.seconds_per_100 = r.timings.seconds_per_100_trajectories;
    return report;
}

int cmd_eval(const global_flags& g, const std::string& run_path, const std::string& data_path,
             const std::vector<int>& cases, std::ostream& out) {
    std::ifstream run_in(run_path);
    if (!run_in)
        throw io_error("cannot open run file " + run_path);
    const auto r = read_run(run_in);
    const auto ds = load_dataset(data_path);
    const auto report = evaluate_run(ds, r);
    const bool c1 = std::find(cases.begin(), cases.end(), 1) != cases.end();
    const bool c2 = std::find(cases.begin(), cases.end(), 2) != cases.end();
    const auto format = format_or(g, "json");
    emit(g.output, out, [&](std::ostream& os) {
        if (format == "csv") {
            os << metrics_csv_header() << '\n';
            write_metrics_csv_row(report, os);
        } else {
            write_metrics_json(report, os, c1, c2);
        }
    });
    return exit_ok;
}

// ---------------------------------------------------------------- sweep

struct sweep_flags {
    std::string dataset;
    std::string stage = "stage1";
    std::vector<double> rates;
    std::vector<std::uint64_t> seeds;
    double fixed_r1 = 0.004;
    double fixed_r2 = 1.0;
};

const std::vector<double> default_r1_rates{0.004, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0};
const std::vector<double> default_r2_rates{0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};

struct sweep_row {
    double rate = 0.0;
    std::uint64_t seed = 0;
    detection_config cfg;
    std::optional<metrics_report> metrics;
    double stage1_macro = std::nan("");
    std::size_t ant_count = 0;
    run_timings timings;
    std::string error;
};

sweep_row sweep_cell(const dataset& ds, const std::vector<class_label>& truth,
                     detection_config cfg, double rate, std::uint64_t seed) {
    sweep_row row;
    row.rate = rate;
    row.seed = seed;
    row.cfg = cfg;
    try {
        const auto r = run_fastatdc(ds, cfg);
        auto m = evaluate(truth, predicted_labels(r));
        m.dataset = ds.name;
        m.method = "fastatdc";
        m.seconds_per_100 = r.timings.seconds_per_100_trajectories;
        row.metrics = m;
        std::vector<class_label> s1_only;
        s1_only.reserve(ds.size());
        for (double s : r.stage1_scores)
            s1_only.push_back(classify(s, cfg.theta));
        row.stage1_macro = f1_scores(make_confusion(truth, s1_only)).macro_anomaly;
        row.ant_count = r.ant_ids.size();
        row.timings = r.timings;
    } catch (const empty_ant_error&) {
        row.error = "empty_ant";
    } catch (const zero_denominator_error&) {
        row.error = "zero_denominator";
    } catch (const algorithm_error&) {
        row.error = "algorithm";
    }
    return row;
}

const char* sweep_csv_header =
    "dataset,stage,rate,r1,r2,seed,f1_gd,f1_ld,f1_nt,f1_ls,f1_gs,macro_f1,stage1_macro_f1,"
    "case1_f1,case2_f1,ant_count,stage1_seconds,stage2_seconds,total_seconds,error";

int cmd_sweep(const global_flags& g, const detection_flags& df, const sweep_flags& f,
              std::ostream& out) {
    if (f.stage != "stage1" && f.stage != "both")
        throw config_error("--stage must be stage1 or both");
    auto rates = f.rates;
    if (rates.empty())
        rates = f.stage == "stage1" ? default_r1_rates : default_r2_rates;
    for (double r : rates)
        if (!(r > 0.0 && r <= 1.0))
            throw config_error("sweep rates must lie in (0, 1]");
    auto seeds = f.seeds;
    if (seeds.empty())
        seeds.push_back(g.seed);

    auto base = make_config(df, g.seed);
    if (f.stage == "stage1")
        base.r2 = f.fixed_r2;
    else
        base.r1 = f.fixed_r1;
    base.validate();

    const auto ds = load_dataset(f.dataset);
    const auto truth = truth_labels(ds);

    struct cell {
        double rate;
        std::uint64_t seed;
    };
    std::vector<cell> cells;
    for (double r : rates)
        for (auto s : seeds)
            cells.push_back({r, s});
    std::vector<sweep_row> rows(cells.size());
    parallel_for(cells.size(), g.threads, [&](std::size_t i) {
        auto cfg = base;
        cfg.seed = cells[i].seed;
        (f.stage == "stage1" ? cfg.r1 : cfg.r2) = cells[i].rate;
        rows[i] = sweep_cell(ds, truth, cfg, cells[i].rate, cells[i].seed);
    });

    const auto format = format_or(g, "csv");
    emit(g.output, out, [&](std::ostream& os) {
        if (format == "json") {
            json arr = json::array();
            for (const auto& row : rows) {
                json o = {{"dataset", ds.name}, {"stage", f.stage}, {"rate", row.rate},
                          {"r1", row.cfg.r1},   {"r2", row.cfg.r2},   {"seed", row.seed}};
                if (row.metrics) {
                    o["f1"] = row.metrics->f1.per_class;
                    o["macro_f1"] = row.metrics->f1.macro_anomaly;
                    o["stage1_macro_f1"] = row.stage1_macro;
                    o["case1_f1"] = row.metrics->case1_f1;
                    o["case2_f1"] = row.metrics->case2_f1;
                    o["ant_count"] = row.ant_count;
                    o["stage1_seconds"] = row.timings.stage1_seconds;
                    o["stage2_seconds"] = row.timings.stage2_seconds;
                    o["total_seconds"] = row.timings.total_seconds;
                } else {
                    o["error"] = row.error;
                }
                arr.push_back(o);
            }
            os << arr.dump(2) << '\n';
            return;
        }
        os << sweep_csv_header << '\n';
        for (const auto& row : rows) {
            os << ds.name << ',' << f.stage << ',' << fmt(row.rate) << ',' << fmt(row.cfg.r1)
               << ',' << fmt(row.cfg.r2) << ',' << row.seed;
            if (row.metrics) {
                for (double v : row.metrics->f1.per_class)
                    os << ',' << fmt(v);
                os << ',' << fmt(row.metrics->f1.macro_anomaly) << ',' << fmt(row.stage1_macro)
                   << ',' << fmt(row.metrics->case1_f1) << ',' << fmt(row.metrics->case2_f1)
                   << ',' << row.ant_count << ',' << fmt(row.timings.stage1_seconds) << ','
                   << fmt(row.timings.stage2_seconds) << ',' << fmt(row.timings.total_seconds)
                   << ',';
            } else {
                os << ",,,,,,,,,,,,,," << row.error;
            }
            os << '\n';
        }
    });
    return exit_ok;
}

// ---------------------------------------------------------------- bench

struct bench_row {
    std::string dataset;
    std::string method;
    std::size_t n = 0;
    double seconds_per_100 = 0.0;
    double speedup = 1.0;
};

int cmd_bench(const global_flags& g, const detection_flags& df,
              const std::vector<std::string>& inputs, std::size_t reps, std::ostream& out) {
    if (reps == 0)
        throw config_error("--reps must be positive");
    const auto cfg = make_config(df, g.seed);
    std::vector<bench_row> rows;
    for (const auto& path : inputs) {
        const auto ds = load_dataset(path);
        std::map<method, std::vector<double>> times;
        std::map<method, run_result> first;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            for (auto m : {method::atdc, method::fastatdc}) {
                auto r = run(m, ds, cfg, {g.threads});
                times[m].push_back(r.timings.seconds_per_100_trajectories);
                auto [it, inserted] = first.try_emplace(m, r);
                if (!inserted && !same_outcome(it->second, r))
                    throw algorithm_error("repeated " + std::string(to_string(m)) +
                                          " runs disagree on " + path);
            }
        }
        const double atdc_time = median(times[method::atdc]);
        const double fast_time = median(times[method::fastatdc]);
        rows.push_back({ds.name, "atdc", ds.size(), atdc_time, 1.0});
        rows.push_back({ds.name, "fastatdc", ds.size(), fast_time,
                        fast_time > 0.0 ? atdc_time / fast_time : 0.0});
    }
    const auto format = format_or(g, "csv");
    emit(g.output, out, [&](std::ostream& os) {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"dataset", r.dataset},
                               {"method", r.method},
                               {"n", r.n},
                               {"seconds_per_100", r.seconds_per_100},
                               {"speedup", r.speedup}});
            os << arr.dump(2) << '\n';
            return;
        }
        os << "dataset,method,n,seconds_per_100,speedup\n";
        for (const auto& r : rows)
            os << r.dataset << ',' << r.method << ',' << r.n << ',' << fmt(r.seconds_per_100)
               << ',' << fmt(r.speedup) << '\n';
    });
    return exit_ok;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const global_flags& g, const detection_flags& df, const std::string& input,
              const std::string& s1_mode, std::ostream& out, std::ostream& err) {
    const auto cfg = make_config(df, g.seed);
    const auto ds = load_dataset(input);
    truth_labels(ds);
    const auto m = s1_mode == "sampled" ? method::fastatdc : method::atdc;
    const auto s1 = stage1_scores(ds, cfg, m, {g.threads});
    const auto stats = class_score_statistics(ds, s1.scores, g.threads);

    std::optional<ordering_report> ordering;
    std::string missing;
    try {
        ordering = ordering_check(stats, cfg.phi);
    } catch (const data_error& e) {
        missing = e.what();
    }

    const auto format = format_or(g, "csv");
    emit(g.output, out, [&](std::ostream& os) {
        if (format == "json") {
            json arr = json::array();
            for (const auto& s : stats)
                arr.push_back({{"class", std::string(to_string(s.label))},
                               {"prototype_id", s.prototype_id},
                               {"mean_s1", s.mean_s1},
                               {"var_s1", s.var_s1},
                               {"count", s.count}});
            json doc = {{"dataset", ds.name}, {"s1_mode", s1_mode}, {"stats", arr}};
            if (ordering)
                doc["ordering"] = {{"gs_below_ls", ordering->gs_below_ls},
                                   {"ls_below_nt", ordering->ls_below_nt},
                                   {"nt_below_ld", ordering->nt_below_ld},
                                   {"ld_below_gd", ordering->ld_below_gd},
                                   {"nt_near_zero", ordering->nt_near_zero},
                                   {"pass", ordering->all()}};
            else
                doc["ordering"] = {{"error", missing}};
            os << doc.dump(2) << '\n';
        } else {
            write_stats_csv(stats, os);
        }
    });

    auto& summary = g.output.empty() ? err : out;
    if (!ordering) {
        summary << "ordering check: " << missing << '\n';
    } else {
        auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
        summary << "ordering check: " << (ordering->all() ? "PASS" : "FAIL") << '\n'
                << "  GS < LS       " << mark(ordering->gs_below_ls) << '\n'
                << "  LS < NT       " << mark(ordering->ls_below_nt) << '\n'
                << "  NT < LD       " << mark(ordering->nt_below_ld) << '\n'
                << "  LD < GD       " << mark(ordering->ld_below_gd) << '\n'
                << "  |NT| <= phi   " << mark(ordering->nt_near_zero) << '\n';
    }
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Anomalous trajectory detection and classification (ATDC / FastATDC)", "atdc"};
    app.require_subcommand(1);
    app.fallthrough();

    global_flags g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("-o,--output", g.output, "Output file (default: stdout)");
    app.add_option("--format", g.format, "Output format for eval/sweep/bench/stats")
        ->check(CLI::IsMember({"json", "csv"}));

    gen_flags gf;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic labeled dataset (JSON Lines)");
    gen->add_option("--preset", gf.preset, "Size and class counts of dataset t1..t6")
        ->check(CLI::IsMember({"t1", "t2", "t3", "t4", "t5", "t6"}));
    gen->add_flag("--iid", gf.iid, "With --preset: draw labels i.i.d. instead of exact counts");
    gen->add_option("--n", gf.n, "Number of trajectories");
    gen->add_option("--probs", gf.probs, "Class probabilities GD,LD,NT,LS,GS")->delimiter(',');
    gen->add_option("--grid", gf.grid, "Grid size W,H")->delimiter(',');
    gen->add_option("--route-len", gf.route_len, "Cells of the normal route")
        ->capture_default_str();
    gen->add_option("--detour-frac", gf.detour_frac, "Route fraction replaced by a local detour")
        ->capture_default_str();
    gen->add_option("--shortcut-frac", gf.shortcut_frac,
                    "Route fraction replaced by a local shortcut")
        ->capture_default_str();
    gen->add_option("--variant-share", gf.variant_share,
                    "Share of trajectories built on the alternate normal route")
        ->capture_default_str();
    gen->add_option("--variant-frac", gf.variant_frac,
                    "Route fraction where the alternate route diverges")
        ->capture_default_str();
    gen->add_option("--name", gf.name, "Dataset name");

    detection_flags detect_f;
    std::string detect_input;
    auto* detect = app.add_subcommand("detect", "Score and classify every trajectory");
    detect->add_option("dataset", detect_input, "Dataset file")->required();
    add_detection_flags(*detect, detect_f, true);
    detect->footer("Output: one JSON object per trajectory {id, score, stage, predicted, "
                   "is_ant} followed by a {\"summary\": ...} line.");

    std::string eval_run, eval_data;
    std::vector<int> eval_cases;
    auto* eval = app.add_subcommand("eval", "Compare a run file with ground-truth labels");
    eval->add_option("--run", eval_run, "Run file from detect")->required();
    eval->add_option("--dataset", eval_data, "Labeled dataset file")->required();
    eval->add_option("--case", eval_cases, "Include binary F1 of case 1 and/or 2")
        ->check(CLI::IsMember({1, 2}));
    eval->footer("CSV columns: " + metrics_csv_header());

    detection_flags sweep_df;
    sweep_flags sf;
    auto* sweep = app.add_subcommand("sweep", "F1 versus sampling rate");
    sweep->add_option("--dataset", sf.dataset, "Labeled dataset file")->required();
    sweep->add_option("--stage", sf.stage,
                      "stage1: sweep r1 with r2 = --fixed-r2; both: sweep r2 with r1 = --fixed-r1")
        ->check(CLI::IsMember({"stage1", "both"}))
        ->capture_default_str();
    sweep->add_option("--rates", sf.rates, "Sampling rates to sweep")->delimiter(',');
    sweep->add_option("--seeds", sf.seeds, "Seeds per rate (default: --seed)")->delimiter(',');
    sweep->add_option("--fixed-r1", sf.fixed_r1, "r1 while sweeping r2")->capture_default_str();
    sweep->add_option("--fixed-r2", sf.fixed_r2, "r2 while sweeping r1")->capture_default_str();
    add_detection_flags(*sweep, sweep_df, false, false);
    sweep->footer(std::string("CSV columns: ") + sweep_csv_header);

    detection_flags bench_df;
    std::vector<std::string> bench_inputs;
    std::size_t reps = 5;
    auto* bench = app.add_subcommand("bench", "Time ATDC against FastATDC");
    bench->add_option("datasets", bench_inputs, "Dataset files")->required();
    bench->add_option("--reps", reps, "Repetitions; the median is reported")
        ->capture_default_str();
    add_detection_flags(*bench, bench_df, false);
    bench->footer("CSV columns: dataset,method,n,seconds_per_100,speedup");

    detection_flags stats_df;
    std::string stats_input, s1_mode = "full";
    auto* stats = app.add_subcommand("stats", "Per-class stage-1 statistics and ordering check");
    stats->add_option("--dataset", stats_input, "Labeled dataset file")->required();
    stats->add_option("--s1-mode", s1_mode, "full or sampled stage-1 scores")
        ->check(CLI::IsMember({"full", "sampled"}))
        ->capture_default_str();
    add_detection_flags(*stats, stats_df, false);
    stats->footer("CSV columns: class,prototype_id,mean_s1,var_s1,count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*gen)
            return cmd_gen(g, gf, out, err);
        if (*detect)
            return cmd_detect(g, detect_f, detect_input, out);
        if (*eval)
            return cmd_eval(g, eval_run, eval_data, eval_cases, out);
        if (*sweep)
            return cmd_sweep(g, sweep_df, sf, out);
        if (*bench)
            return cmd_bench(g, bench_df, bench_inputs, reps, out);
        if (*stats)
            return cmd_stats(g, stats_df, stats_input, s1_mode, out, err);
    } catch (const config_error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const data_error& e) {
        err << "data error: " << e.what() << '\n';
        return exit_data;
    } catch (const algorithm_error& e) {
        err << "algorithm error: " << e.what() << '\n';
        return exit_algorithm;
    }
    return exit_usage;
}

} // namespace atdc
