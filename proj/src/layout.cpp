#include "lish/layout.hpp"

#include <algorithm>
#include <numeric>

#include "lish/model.hpp"
#include "lish/validate.hpp"

namespace lish {

namespace {

enum class Axis { x, y };

Axis major_axis(Orientation o) { return o == Orientation::rows ? Axis::y : Axis::x; }

// Track requirements along one axis. A leaf is an undivided run of tracks;
// seq children sit one after another; stack children overlay the same run,
// each sized on its own.
struct Track {
    enum class Kind { leaf, seq, stack };
    Kind kind = Kind::leaf;
    int extent = 1;
    std::vector<Track> kids;
};

Track leaf(int extent) { return Track{Track::Kind::leaf, extent, {}}; }

int natural_extent(const Track& t) {
    if (t.kind == Track::Kind::leaf) return t.extent;
    int total = 0;
    for (const auto& k : t.kids)
        total = t.kind == Track::Kind::seq ? total + k.extent : std::max(total, k.extent);
    return total;
}

Track merge(const Track& a, const Track& b) {
    if (a.kind == b.kind && a.kind != Track::Kind::leaf && a.kids.size() == b.kids.size()) {
        Track t{a.kind, 0, {}};
        t.kids.reserve(a.kids.size());
        for (std::size_t i = 0; i < a.kids.size(); ++i) t.kids.push_back(merge(a.kids[i], b.kids[i]));
        t.extent = std::max({natural_extent(t), a.extent, b.extent});
        return t;
    }
    if (b.kind == Track::Kind::leaf) {
        Track t = a;
        t.extent = std::max(a.extent, b.extent);
        return t;
    }
    if (a.kind == Track::Kind::leaf) {
        Track t = b;
        t.extent = std::max(a.extent, b.extent);
        return t;
    }
    // Incompatible structures (e.g. expansions of different lengths): keep
    // only the size; each side lays itself out inside it.
    return leaf(std::max(a.extent, b.extent));
}

// The allocation to use for a node whose own requirement is `natural`.
Track fit(const Track& alloc, const Track& natural) {
    if (alloc.kind == natural.kind &&
        (alloc.kind == Track::Kind::leaf || alloc.kids.size() == natural.kids.size())) {
        Track t = alloc;
        t.extent = std::max(alloc.extent, natural.extent);
        return t;
    }
    Track t = natural;
    t.extent = std::max(alloc.extent, natural.extent);
    return t;
}

Track with_extent(Track t, int extent) {
    t.extent = extent;
    return t;
}

struct Measured {
    Track x;
    Track y;
    Orientation orientation = Orientation::rows; // meaningful for lishes only
    bool aligned = false;                        // lish with a lish template
    std::vector<Measured> kids;

    const Track& along(Axis a) const { return a == Axis::x ? x : y; }
    Track& along(Axis a) { return a == Axis::x ? x : y; }
};

Measured measure(const Node& node, Orientation inherited) {
    Measured m;
    if (node.is_atom()) {
        m.x = leaf(1);
        m.y = leaf(1);
        return m;
    }
    const Lish& l = node.lish();
    m.orientation = l.orientation.value_or(inherited);
    m.aligned = l.tmpl().is_lish();
    m.kids.reserve(l.size());
    for (const auto& e : l.elements) m.kids.push_back(measure(e, flip(m.orientation)));

    const Axis major = major_axis(m.orientation);
    const Axis cross = major == Axis::x ? Axis::y : Axis::x;

    Track along{Track::Kind::seq, 0, {}};
    for (const auto& k : m.kids) along.kids.push_back(k.along(major));
    along.extent = natural_extent(along);
    m.along(major) = std::move(along);

    if (m.aligned) {
        Track merged = m.kids.front().along(cross);
        for (std::size_t i = 1; i < m.kids.size(); ++i) merged = merge(merged, m.kids[i].along(cross));
        m.along(cross) = std::move(merged);
    } else {
        Track stack{Track::Kind::stack, 0, {}};
        for (const auto& k : m.kids) stack.kids.push_back(k.along(cross));
        stack.extent = natural_extent(stack);
        m.along(cross) = std::move(stack);
    }
    return m;
}

struct Placer {
    const LayoutOptions& opts;
    std::vector<Placement>& out;

    void place(const Node& node, const Measured& m, const LishPath& path, int x, int y, const Track& alloc_x,
               const Track& alloc_y, Orientation container) {
        if (node.is_atom()) {
            out.push_back({path, x, y, alloc_x.extent, alloc_y.extent, static_cast<int>(path.marginality()),
                           container});
            return;
        }
        const Lish& l = node.lish();
        const Axis major = major_axis(m.orientation);
        const Axis cross = major == Axis::x ? Axis::y : Axis::x;
        const Track eff_major = fit(major == Axis::x ? alloc_x : alloc_y, m.along(major));
        const Track eff_cross = fit(cross == Axis::x ? alloc_x : alloc_y, m.along(cross));

        const int major_slack = eff_major.extent - natural_extent(eff_major);
        const int cross_slack = m.aligned ? 0 : eff_cross.extent - natural_extent(eff_cross);
        const bool root_gaps = path.empty() && !m.aligned && opts.gap > 0;

        int offset = 0;
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (root_gaps && i > 0 && l[i - 1].is_lish() && l[i].is_lish()) offset += opts.gap;
            Track along = eff_major.kids[i];
            if (i + 1 == l.size()) along.extent += major_slack;
            Track across = m.aligned ? eff_cross : with_extent(eff_cross.kids[i], eff_cross.kids[i].extent + cross_slack);

            const int cx = major == Axis::x ? x + offset : x;
            const int cy = major == Axis::y ? y + offset : y;
            const Track& ax = major == Axis::x ? along : across;
            const Track& ay = major == Axis::y ? along : across;
            place(l[i], m.kids[i], path.child(i), cx, cy, ax, ay, m.orientation);
            offset += along.extent;
        }
    }
};

std::size_t codepoints(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

std::vector<std::string> split_codepoints(const std::string& s) {
    std::vector<std::string> out;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) == 0x80 && !out.empty()) out.back() += c;
        else out.emplace_back(1, c);
    }
    return out;
}

std::string cell_text(const Atom& a, const Placement& p, const RenderOptions& opts) {
    std::string text;
    if (!is_null(a.value)) text = scalar_text(a.value);
    else if (a.formula) text = a.formula->starts_with("=") ? *a.formula : "=" + *a.formula;
    if (text.empty()) text = "-";
    if (opts.max_width > 0 && codepoints(text) > opts.max_width) {
        auto glyphs = split_codepoints(text);
        glyphs.resize(opts.max_width > 1 ? opts.max_width - 1 : 0);
        text = std::accumulate(glyphs.begin(), glyphs.end(), std::string{}) + "…";
    }
    std::string wrapped;
    for (int d = 0; d < p.depth; ++d) wrapped += opts.margin_open;
    wrapped += text;
    for (int d = 0; d < p.depth; ++d) wrapped += opts.margin_close;
    return wrapped;
}

} // namespace

std::vector<Placement> compute_layout(const Node& root, const LayoutOptions& opts) {
    auto report = validate(root);
    if (!report.ok()) throw ValidationError(std::move(report));
    const Measured m = measure(root, opts.root_orientation);
    std::vector<Placement> out;
    Placer placer{opts, out};
    placer.place(root, m, {}, 0, 0, m.x, m.y, opts.root_orientation);
    return out;
}

std::vector<Placement> compute_layout(const Document& doc, const LayoutOptions& opts) {
    return compute_layout(doc.root, opts);
}

std::string render_text(std::span<const Placement> placements, const Document& doc, const RenderOptions& opts) {
    if (placements.empty()) return {};
    int width = 0, height = 0;
    for (const auto& p : placements) {
        width = std::max(width, p.x + p.col_span);
        height = std::max(height, p.y + p.row_span);
    }
    std::vector<std::string> texts;
    texts.reserve(placements.size());
    for (const auto& p : placements) texts.push_back(cell_text(node_at(doc, p.path).atom(), p, opts));

    std::vector<std::size_t> col_width(static_cast<std::size_t>(width), 0);
    std::vector<std::size_t> order(placements.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return placements[a].col_span < placements[b].col_span; });
    for (auto i : order) {
        const auto& p = placements[i];
        const auto first = static_cast<std::size_t>(p.x);
        const auto last = static_cast<std::size_t>(p.x + p.col_span - 1);
        std::size_t available = static_cast<std::size_t>(p.col_span - 1);
        for (auto c = first; c <= last; ++c) available += col_width[c];
        const auto need = codepoints(texts[i]);
        if (need > available) col_width[last] += need - available;
    }
    std::vector<std::size_t> start(col_width.size() + 1, 0);
    for (std::size_t c = 0; c < col_width.size(); ++c) start[c + 1] = start[c] + col_width[c] + 1;

    std::vector<std::vector<std::string>> canvas(static_cast<std::size_t>(height),
                                                 std::vector<std::string>(start.back(), " "));
    for (std::size_t i = 0; i < placements.size(); ++i) {
        const auto& p = placements[i];
        auto& line = canvas[static_cast<std::size_t>(p.y)];
        auto glyphs = split_codepoints(texts[i]);
        for (std::size_t g = 0; g < glyphs.size(); ++g) line[start[static_cast<std::size_t>(p.x)] + g] = glyphs[g];
    }
    std::string out;
    for (const auto& line : canvas) {
        std::string text = std::accumulate(line.begin(), line.end(), std::string{});
        text.erase(text.find_last_not_of(' ') + 1);
        out += text;
        out += '\n';
    }
    return out;
}

Json placements_to_json(std::span<const Placement> placements) {
    Json arr = Json::array();
    for (const auto& p : placements) {
        Json j = Json::object();
        j["path"] = path_to_json(p.path);
        j["x"] = p.x;
        j["y"] = p.y;
        j["cs"] = p.col_span;
        j["rs"] = p.row_span;
        j["depth"] = p.depth;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace lish
