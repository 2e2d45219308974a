#include "atdc/eval.hpp"

#include "atdc/error.hpp"

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace atdc {

confusion_matrix make_confusion(std::span<const class_label> truth,
                                std::span<const class_label> predicted) {
    if (truth.size() != predicted.size())
        throw data_error("label lists differ in length: " + std::to_string(truth.size()) +
                         " vs " + std::to_string(predicted.size()));
    if (truth.empty())
        throw data_error("no labels to evaluate");
    confusion_matrix m{};
    for (std::size_t i = 0; i < truth.size(); ++i)
        ++m[index_of(truth[i])][index_of(predicted[i])];
    return m;
}

f1_summary f1_scores(const confusion_matrix& m) {
    f1_summary out;
    for (std::size_t c = 0; c < class_count; ++c) {
        const auto tp = m[c][c];
        std::uint64_t fp = 0, fn = 0;
        for (std::size_t o = 0; o < class_count; ++o) {
            if (o == c)
                continue;
            fp += m[o][c];
            fn += m[c][o];
        }
        const auto denom = 2 * tp + fp + fn;
        out.undefined[c] = denom == 0;
        out.per_class[c] = denom == 0 ? 0.0 : 2.0 * double(tp) / double(denom);
    }
    double sum = 0.0;
    for (auto c : anomaly_classes)
        sum += out.per_class[index_of(c)];
    out.macro_anomaly = sum / static_cast<double>(anomaly_classes.size());
    return out;
}

double binary_f1(const std::vector<bool>& truth, const std::vector<bool>& predicted) {
    if (truth.size() != predicted.size())
        throw data_error("label lists differ in length");
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        tp += truth[i] && predicted[i];
        fp += !truth[i] && predicted[i];
        fn += truth[i] && !predicted[i];
    }
    const auto denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2.0 * double(tp) / double(denom);
}

std::vector<bool> collapse_case1(std::span<const class_label> labels) {
    std::vector<bool> out;
    out.reserve(labels.size());
    for (auto l : labels)
        out.push_back(l != class_label::nt);
    return out;
}

std::vector<bool> collapse_case2(std::span<const class_label> labels) {
    std::vector<bool> out;
    out.reserve(labels.size());
    for (auto l : labels)
        out.push_back(l == class_label::gd || l == class_label::gs);
    return out;
}


metrics_report evaluate(std::span<const class_label> truth,
                        std::span<const class_label> predicted) {
    metrics_report r;
    r.confusion = make_confusion(truth, predicted);
    r.f1 = f1_scores(r.confusion);
    r.case1_f1 = binary_f1(collapse_case1(truth), collapse_case1(predicted));
    r.case2_f1 = binary_f1(collapse_case2(truth), collapse_case2(predicted));
    r.labeled = truth.size();
    return r;
}

void write_metrics_json(const metrics_report& r, std::ostream& out, bool with_case1,
                        bool with_case2) {
    nlohmann::json per_class = nlohmann::json::object();
    nlohmann::json undefined = nlohmann::json::array();
    for (auto c : all_classes) {
        per_class[std::string(to_string(c))] = r.f1.per_class[index_of(c)];
        if (r.f1.undefined[index_of(c)])
            undefined.push_back(std::string(to_string(c)));
    }
    nlohmann::json doc = {{"dataset", r.dataset},
                          {"method", r.method},
                          {"labeled", r.labeled},
                          {"labels", {"GD", "LD", "NT", "LS", "GS"}},
                          {"confusion", r.confusion},
                          {"f1", per_class},
                          {"f1_undefined", undefined},
                          {"macro_f1_anomaly", r.f1.macro_anomaly},
                          {"seconds_per_100", r.seconds_per_100}};
    if (with_case1)
        doc["case1_f1"] = r.case1_f1;
    if (with_case2)
        doc["case2_f1"] = r.case2_f1;
    out << doc.dump(2) << '\n';
}

std::string metrics_csv_header() {
    return "dataset,method,f1_gd,f1_ld,f1_nt,f1_ls,f1_gs,macro_f1,case1_f1,case2_f1,"
           "seconds_per_100";
}

void write_metrics_csv_row(const metrics_report& r, std::ostream& out) {
    std::ostringstream os;
    os << std::setprecision(6) << r.dataset << ',' << r.method;
    for (double f : r.f1.per_class)
        os << ',' << f;
    os << ',' << r.f1.macro_anomaly << ',' << r.case1_f1 << ',' << r.case2_f1 << ','
       << r.seconds_per_100;
    out << os.str() << '\n';
}

} // namespace atdc
