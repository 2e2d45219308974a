#include "atdc/dataset_io.hpp"

#include "atdc/error.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace atdc {

using nlohmann::json;

namespace {

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
    throw data_error("line " + std::to_string(line) + ": " + what);
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::size_t line) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (auto key : allowed)
            known = known || item.key() == key;
        if (!known)
            fail_at(line, "unknown key \"" + item.key() + "\"");
    }
}

template <typename T>
T require_unsigned(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail_at(line, std::string("missing key \"") + key + "\"");
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
        fail_at(line, std::string("\"") + key + "\" must be a non-negative integer");
    return it->get<T>();
}

dataset parse_header(const json& obj, std::size_t line) {
    if (!obj.is_object())
        fail_at(line, "header must be a JSON object");
    reject_unknown_keys(obj, {"grid_w", "grid_h", "name"}, line);
    dataset ds;
    ds.grid_w = require_unsigned<std::uint32_t>(obj, "grid_w", line);
    ds.grid_h = require_unsigned<std::uint32_t>(obj, "grid_h", line);
    auto name = obj.find("name");
    if (name == obj.end() || !name->is_string())
        fail_at(line, "header needs a string \"name\"");
    ds.name = name->get<std::string>();
    if (ds.grid_w == 0 || ds.grid_h == 0)
        fail_at(line, "grid dimensions must be positive");
    return ds;
}

trajectory parse_trajectory(const json& obj, std::size_t line) {
    if (!obj.is_object())
        fail_at(line, "trajectory must be a JSON object");
    reject_unknown_keys(obj, {"id", "cells", "label"}, line);
    auto id = require_unsigned<trajectory_id>(obj, "id", line);
    auto cells_it = obj.find("cells");
    if (cells_it == obj.end() || !cells_it->is_array())
        fail_at(line, "\"cells\" must be an array");
    std::vector<cell_id> cells;
    cells.reserve(cells_it->size());
    for (const auto& c : *cells_it) {
        if (!c.is_number_integer() || c.get<std::int64_t>() < 0 ||
            c.get<std::uint64_t>() > std::numeric_limits<cell_id>::max())
            fail_at(line, "cell ids must be non-negative 32-bit integers");
        cells.push_back(c.get<cell_id>());
    }
    std::optional<class_label> label;
    if (auto l = obj.find("label"); l != obj.end() && !l->is_null()) {
        if (!l->is_number_integer())
            fail_at(line, "\"label\" must be an integer or null");
        label = label_from_code(l->get<std::int64_t>());
        if (!label)
            fail_at(line, "label code out of range");
    }
    try {
        return trajectory(id, std::move(cells), label);
    } catch (const data_error& e) {
        fail_at(line, e.what());
    }
}

} // namespace

dataset read_dataset(std::istream& in) {
    dataset ds;
    bool have_header = false;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            fail_at(line, std::string("malformed JSON: ") + e.what());
        }
        if (!have_header) {
            ds = parse_header(obj, line);
            have_header = true;
            continue;
        }
        ds.trajectories.push_back(parse_trajectory(obj, line));
    }
    ds.validate();
    return ds;
}

void write_dataset(const dataset& ds, std::ostream& out) {
    json header = {{"grid_w", ds.grid_w}, {"grid_h", ds.grid_h}, {"name", ds.name}};
    out << header.dump() << '\n';
    for (const auto& t : ds.trajectories) {
        json row;
        row["id"] = t.id();
        row["cells"] = std::vector<cell_id>(t.cells().begin(), t.cells().end());
        row["label"] = t.label() ? json(static_cast<int>(*t.label())) : json(nullptr);
        out << row.dump() << '\n';
    }
}

dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open dataset " + path.string());
    try {
        return read_dataset(in);
    } catch (const data_error& e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

void save_dataset(const dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write dataset " + path.string());
    write_dataset(ds, out);
    out.flush();
    if (!out)
        throw io_error("write failed for " + path.string());
}

} // namespace atdc
