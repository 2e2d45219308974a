#include "atdc/generator.hpp"

#include "atdc/error.hpp"
#include "atdc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

namespace atdc {

namespace {

struct point {
    int x = 0;
    int y = 0;
    friend bool operator==(const point&, const point&) = default;
    point operator+(const point& o) const { return {x + o.x, y + o.y}; }
};

using path = std::vector<point>;

/// Derived route geometry, in a frame whose origin is the start corner.
struct geometry {
    int side = 0;          // block side D; routes have 2D + 1 cells
    int first_leg = 0;     // a: the main route is R a, U a, R (D-a), U (D-a)
    int variant_leg = 0;   // m: the alternate route cuts the middle corner by m
    int detour_len = 0;    // s for local detours
    int detour_offset = 0; // sideways displacement h of a local detour
    int shortcut_len = 0;  // s for local shortcuts
    int end_cells = 0;     // e: cells a global detour shares at each end
    int loop_min = 0;      // smallest outward distance g of a global detour
    int margin = 0;        // free cells required around the block

    int route_cells() const { return 2 * side + 1; }
};

constexpr int loop_spread = 2;

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

geometry derive(const generator_spec& spec) {
    geometry g;
    const auto len = static_cast<double>(spec.route_len);
    g.side = static_cast<int>(spec.route_len / 2);
    g.first_leg = std::max(1, g.side / 2);
    const int second_leg = g.side - g.first_leg;
    g.variant_leg = std::clamp(round_half_up(spec.variant_frac * g.route_cells() / 2.0), 1,
                               std::min(g.first_leg, second_leg));
    g.detour_len = std::max(1, round_half_up(spec.detour_frac * len));
    g.detour_offset = (g.detour_len + 1) / 2;
    g.shortcut_len = std::max(2, round_half_up(spec.shortcut_frac * len));
    g.end_cells = std::clamp(static_cast<int>(0.1 * len), 1, 3);
    g.loop_min = static_cast<int>(std::ceil(len / 8.0));
    g.margin = std::max(g.loop_min + loop_spread, g.detour_offset) + 1;
    return g;
}

void append_leg(path& p, point target) {
    point cur = p.back();
    while (cur.x != target.x) {
        cur.x += target.x > cur.x ? 1 : -1;
        p.push_back(cur);
    }
    while (cur.y != target.y) {
        cur.y += target.y > cur.y ? 1 : -1;
        p.push_back(cur);
    }
}

/// Cells strictly between a and b on a Chebyshev (8-connected) line.
path chebyshev_interior(point a, point b) {
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    const int steps = std::max(std::abs(dx), std::abs(dy));
    path out;
    for (int t = 1; t < steps; ++t) {
        out.push_back({a.x + static_cast<int>(std::lround(double(t) * dx / steps)),
                       a.y + static_cast<int>(std::lround(double(t) * dy / steps))});
    }
    return out;
}

path main_route(const geometry& g) {
    path p{{0, 0}};
    const int a = g.first_leg;
    const int d = g.side;
    append_leg(p, {a, 0});
    append_leg(p, {a, a});
    append_leg(p, {d, a});
    append_leg(p, {d, d});
    return p;
}

/// Leaves the main route below its middle corner (a, a) and rejoins it to
/// the right, taking the opposite turn.
path variant_route(const geometry& g) {
    const int a = g.first_leg;
    const int d = g.side;
    const int m = g.variant_leg;
    path p{{0, 0}};
    append_leg(p, {a, 0});
    append_leg(p, {a, a - m});
    append_leg(p, {a + m, a - m});
    append_leg(p, {a + m, a});
    append_leg(p, {d, a});
    append_leg(p, {d, d});
    return p;
}

path dedupe(const path& p) {
    path out;
    out.reserve(p.size());
    for (const auto& c : p)
        if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    return out;
}

/// Removes or adds up to two cells. The first and last three cells are
/// never removed so every class keeps its contact with the end regions.
path jitter(const path& route, std::mt19937_64& rng) {
    path p = route;
    const int delta = static_cast<int>(uniform_below(rng, 5)) - 2;
    const auto interior_lo = std::size_t{3};
    for (int r = 0; r < -delta && p.size() > 2 * interior_lo + 1; ++r) {
        const auto span = p.size() - 2 * interior_lo;
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(interior_lo + uniform_below(rng, span)));
    }
    static constexpr point neighbours[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int added = 0; added < delta;) {
        const auto at = 1 + uniform_below(rng, p.size() - 2);
        const point extra = p[at] + neighbours[uniform_below(rng, 4)];
        if (std::find(p.begin(), p.end(), extra) != p.end())
            continue;
        p.insert(p.begin() + static_cast<std::ptrdiff_t>(at + 1), extra);
        ++added;
    }
    return p;
}

/// Replaces route[lo, lo + s) by the same segment shifted diagonally by
/// h cells, joined to the route by two diagonal legs: s + 2h cells in place
/// of s. A shift across a monotone route never lands back on it.
path local_detour(const path& route, const geometry& g, std::mt19937_64& rng) {
    const int s = g.detour_len;
    const int h = g.detour_offset;
    const auto cells = static_cast<int>(route.size());
    const int lo = 2 + static_cast<int>(uniform_below(rng, cells - 3 - s));
    const point dir = uniform_below(rng, 2) == 0 ? point{1, -1} : point{-1, 1};
    const point shift{dir.x * h, dir.y * h};
    const point a = route[lo - 1];
    const point b = route[lo + s];

    path p(route.begin(), route.begin() + lo);
    for (int t = 1; t <= h; ++t)
        p.push_back({a.x + dir.x * t, a.y + dir.y * t});
    for (int i = lo; i < lo + s; ++i)
        p.push_back(route[i] + shift);
    p.push_back(b + shift);
    for (int t = h - 1; t >= 1; --t)
        p.push_back({b.x + dir.x * t, b.y + dir.y * t});
    p.insert(p.end(), route.begin() + lo + s, route.end());
    return dedupe(p);
}

/// Start indices lo where a diagonal between route[lo - 1] and
/// route[lo + s] needs at most s / 2 interior cells.
std::vector<int> shortcut_starts(const path& route, int s) {
    std::vector<int> starts;
    const auto cells = static_cast<int>(route.size());
    for (int lo = 2; lo + s <= cells - 3; ++lo) {
        const point a = route[lo - 1];
        const point b = route[lo + s];
        const int interior = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)) - 1;
        if (2 * interior <= s)
            starts.push_back(lo);
    }
    return starts;
}

path local_shortcut(const path& route, const geometry& g, std::mt19937_64& rng) {
    const int s = g.shortcut_len;
    const auto starts = shortcut_starts(route, s);
    const int lo = starts[uniform_below(rng, starts.size())];
    path p(route.begin(), route.begin() + lo);
    const auto cut = chebyshev_interior(route[lo - 1], route[lo + s]);
    p.insert(p.end(), cut.begin(), cut.end());
    p.insert(p.end(), route.begin() + lo + s, route.end());
    return dedupe(p);
}

/// Shares e cells with the route at each end and loops around the block at
/// distance g on one of its two outer sides.
path global_detour(const path& route, const geometry& geo, std::mt19937_64& rng) {
    const int e = geo.end_cells;
    const int d = geo.side;
    const int g = geo.loop_min + static_cast<int>(uniform_below(rng, loop_spread + 1));
    const auto cells = static_cast<int>(route.size());
    path p(route.begin(), route.begin() + e);
    const point q = route[cells - e];
    if (uniform_below(rng, 2) == 0) {
        append_leg(p, {p.back().x, -g});
        append_leg(p, {d + g, -g});
        append_leg(p, {d + g, q.y});
        append_leg(p, q);
    } else {
        append_leg(p, {-g, p.back().y});
        append_leg(p, {-g, d + g});
        append_leg(p, {q.x, d + g});
        append_leg(p, q);
    }
    p.insert(p.end(), route.begin() + cells - e + 1, route.end());
    return dedupe(p);
}

/// Diagonal between the second or third cell of the route and the second or
/// third cell from its end.
path global_shortcut(const path& route, std::mt19937_64& rng) {
    const auto cells = route.size();
    const point a = route[1 + uniform_below(rng, 2)];
    const point b = route[cells - 2 - uniform_below(rng, 2)];
    path p{a};
    const auto mid = chebyshev_interior(a, b);
    p.insert(p.end(), mid.begin(), mid.end());
    p.push_back(b);
    return p;
}

std::vector<class_label> draw_labels(const generator_spec& spec, std::mt19937_64& rng) {
    std::vector<class_label> labels;
    labels.reserve(spec.n);
    if (spec.counts) {
        for (std::size_t c = 0; c < class_count; ++c)
            labels.insert(labels.end(), (*spec.counts)[c], static_cast<class_label>(c));
        for (std::size_t i = labels.size(); i > 1; --i)
            std::swap(labels[i - 1], labels[uniform_below(rng, i)]);
        return labels;
    }
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = uniform_unit(rng);
        double acc = 0.0;
        std::size_t c = 0;
        // the last class with positive probability absorbs rounding slack
        std::size_t last = 0;
        for (std::size_t k = 0; k < class_count; ++k)
            if (spec.probs[k] > 0.0)
                last = k;
        for (c = 0; c < last; ++c) {
            acc += spec.probs[c];
            if (u < acc)
                break;
        }
        labels.push_back(static_cast<class_label>(c));
    }
    return labels;
}

} // namespace

std::uint32_t minimum_grid_side(const generator_spec& spec) {
    const auto g = derive(spec);
    return static_cast<std::uint32_t>(g.side + 2 * g.margin + 1);
}

void generator_spec::validate() const {
    if (counts) {
        const auto total = std::accumulate(counts->begin(), counts->end(), std::size_t{0});
        if (total != n)
            throw config_error("class counts sum to " + std::to_string(total) + ", expected n = " +
                               std::to_string(n));
    } else {
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0) || !std::isfinite(p))
                throw config_error("class probabilities must be finite and non-negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw config_error("class probabilities must sum to 1, got " + std::to_string(sum));
    }
    if (route_len < 4)
        throw config_error("route_len must be at least 4");
    for (auto [frac, what] : {std::pair{detour_frac, "detour_frac"},
                              std::pair{shortcut_frac, "shortcut_frac"},
                              std::pair{variant_frac, "variant_frac"}})
        if (!(frac > 0.0 && frac < 1.0))
            throw config_error(std::string(what) + " must lie in (0, 1)");
    if (!(variant_share >= 0.0 && variant_share <= 1.0))
        throw config_error("variant_share must lie in [0, 1]");

    const auto geo = derive(*this);
    const int cells = geo.route_cells();
    if (geo.detour_len > cells - 5)
        throw config_error("detour_frac leaves no room for a local detour on a route of " +
                           std::to_string(cells) + " cells");
    for (const auto& route : {main_route(geo), variant_route(geo)})
        if (shortcut_starts(route, geo.shortcut_len).empty())
            throw config_error("no corner of the route admits a shortcut of " +
                               std::to_string(geo.shortcut_len) +
                               " cells; lower shortcut_frac or raise route_len");
    const auto need = minimum_grid_side(*this);
    if (grid_w < need || grid_h < need)
        throw config_error("grid " + std::to_string(grid_w) + "x" + std::to_string(grid_h) +
                           " is too small for route_len " + std::to_string(route_len) +
                           "; need at least " + std::to_string(need) + "x" +
                           std::to_string(need));
}

namespace {

point block_origin(const generator_spec& spec, const geometry& geo) {
    const int block = geo.side + 1;
    return {static_cast<int>(spec.grid_w - block) / 2, static_cast<int>(spec.grid_h - block) / 2};
}

std::vector<cell_id> to_cells(const path& p, point origin, std::uint32_t grid_w) {
    std::vector<cell_id> cells;
    cells.reserve(p.size());
    for (const auto& c : p) {
        const auto x = static_cast<cell_id>(origin.x + c.x);
        const auto y = static_cast<cell_id>(origin.y + c.y);
        cells.push_back(y * grid_w + x);
    }
    return cells;
}

} // namespace

std::array<std::vector<cell_id>, 2> reference_routes(const generator_spec& spec) {
    spec.validate();
    const auto geo = derive(spec);
    const auto origin = block_origin(spec, geo);
    return {to_cells(main_route(geo), origin, spec.grid_w),
            to_cells(variant_route(geo), origin, spec.grid_w)};
}

dataset generate(const generator_spec& spec) {
    spec.validate();
    const auto geo = derive(spec);
    const path main = main_route(geo);
    const path variant = variant_route(geo);
    const auto origin = block_origin(spec, geo);

    auto rng = make_engine(spec.seed, stream_tag::generator);
    const auto labels = draw_labels(spec, rng);

    dataset ds;
    ds.name = spec.name;
    ds.grid_w = spec.grid_w;
    ds.grid_h = spec.grid_h;
    ds.trajectories.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const bool on_variant = uniform_unit(rng) < spec.variant_share;
        const path& route = on_variant ? variant : main;
        path p;
        switch (labels[i]) {
        case class_label::nt: p = jitter(route, rng); break;
        case class_label::ld: p = local_detour(route, geo, rng); break;
        case class_label::ls: p = local_shortcut(route, geo, rng); break;
        case class_label::gd: p = global_detour(main, geo, rng); break;
        case class_label::gs: p = global_shortcut(main, rng); break;
        }
        ds.trajectories.emplace_back(static_cast<trajectory_id>(i),
                                     to_cells(p, origin, spec.grid_w), labels[i]);
    }
    return ds;
}

} // namespace atdc
