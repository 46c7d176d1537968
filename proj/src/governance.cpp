#include "lish/governance.hpp"

#include <algorithm>

#include "lish/error.hpp"
#include "lish/model.hpp"

namespace lish {

namespace {

// Depth-first expansion of the fan-out candidates for `margin`.
void fan_out(const Node& node, const LishPath& margin, std::size_t depth, LishPath& current,
             std::vector<LishPath>& out) {
    if (depth == margin.size()) {
        for (const auto& suffix : body_suffixes(node)) out.push_back(current.concat(suffix));
        return;
    }
    if (!node.is_lish()) return;
    const auto& l = node.lish();
    auto descend = [&](std::size_t i) {
        current = current.child(i);
        fan_out(l[i], margin, depth + 1, current, out);
        current = current.parent();
    };
    if (margin[depth] != 0) {
        if (margin[depth] < l.size()) descend(margin[depth]);
    } else {
        for (std::size_t i = 1; i < l.size(); ++i) descend(i);
    }
}

const Node& require_atom(const Node& root, const LishPath& path, const char* op) {
    const Node& n = node_at(root, path);
    if (!n.is_atom())
        throw PathError(std::string(op) + ": [" + path.to_string() + "] addresses a lish, not a cell", path);
    return n;
}

std::size_t slice_extent(const Lish& l) {
    if (l.elements.empty()) return 0;
    if (l.tmpl().is_lish()) return l.tmpl().lish().size();
    std::size_t extent = 0;
    for (std::size_t i = 1; i < l.size(); ++i)
        if (l[i].is_lish()) extent = std::max(extent, l[i].lish().size());
    return extent;
}

std::size_t step(std::size_t value, bool forward, std::size_t lo, std::size_t hi) {
    if (hi < lo) return value;
    if (forward) return value >= hi ? hi : std::max(lo, value + 1);
    return value <= lo ? lo : std::min(hi, value - 1);
}

} // namespace

std::optional<CursorMove> parse_cursor_move(std::string_view text) {
    if (text == "prev_sibling") return CursorMove::prev_sibling;
    if (text == "next_sibling") return CursorMove::next_sibling;
    if (text == "drill_in") return CursorMove::drill_in;
    if (text == "drill_out") return CursorMove::drill_out;
    if (text == "slice_prev") return CursorMove::slice_prev;
    if (text == "slice_next") return CursorMove::slice_next;
    return std::nullopt;
}

std::vector<LishPath> governed_set(const Node& root, const LishPath& margin) {
    require_atom(root, margin, "governed_set");
    std::vector<LishPath> out;
    if (!margin.is_marginal()) return out;
    LishPath current;
    fan_out(root, margin, 0, current, out);
    return out;
}

std::vector<LishPath> governed_set(const Document& doc, const LishPath& margin) {
    return governed_set(doc.root, margin);
}

std::vector<LishPath> governing_margins(const Node& root, const LishPath& cell) {
    require_atom(root, cell, "governing_margins");
    if (cell.is_marginal())
        throw DomainError("governing_margins: [" + cell.to_string() + "] is itself marginal");
    // cell has no zero component, so any zeroed prefix fans back out over it;
    // membership reduces to "the zeroed prefix addresses an atom".
    std::vector<LishPath> out;
    for (std::size_t len = 1; len <= cell.size(); ++len) {
        const std::size_t masks = std::size_t{1} << len;
        for (std::size_t mask = 1; mask < masks; ++mask) {
            std::vector<std::size_t> idx(cell.begin(), cell.begin() + static_cast<std::ptrdiff_t>(len));
            for (std::size_t b = 0; b < len; ++b)
                if (mask & (std::size_t{1} << b)) idx[b] = 0;
            LishPath candidate(std::move(idx));
            const Node* n = find_node(root, candidate);
            if (n && n->is_atom()) out.push_back(std::move(candidate));
        }
    }
    std::sort(out.begin(), out.end(), [](const LishPath& a, const LishPath& b) {
        if (a.marginality() != b.marginality()) return a.marginality() < b.marginality();
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

std::vector<LishPath> governing_margins(const Document& doc, const LishPath& cell) {
    return governing_margins(doc.root, cell);
}

FormulaResolution effective_formula(const Document& doc, const LishPath& cell) {
    const Node& n = node_at(doc, cell);
    if (!n.is_atom()) throw DomainError("effective_formula: [" + cell.to_string() + "] is a lish");
    if (cell.is_marginal()) throw DomainError("effective_formula: [" + cell.to_string() + "] is marginal");

    struct Candidate {
        LishPath source;
        std::string formula;
        std::size_t specificity;
    };
    std::vector<Candidate> candidates;
    if (n.atom().formula) candidates.push_back({cell, *n.atom().formula, 0});
    for (const auto& m : governing_margins(doc.root, cell)) {
        const auto& a = node_at(doc, m).atom();
        if (a.formula) candidates.push_back({m, *a.formula, m.marginality()});
    }

    FormulaResolution r;
    if (candidates.empty()) return r;
    auto winner = std::min_element(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.specificity != b.specificity) return a.specificity < b.specificity;
        return a.source > b.source;
    });
    r.formula = winner->formula;
    r.source = winner->source;
    r.specificity = winner->specificity;
    for (auto it = candidates.begin(); it != candidates.end(); ++it) {
        if (it == winner) continue;
        r.warnings.push_back(
            {it->source, it->specificity == winner->specificity ? "ambiguous" : "overridden"});
    }
    std::sort(r.warnings.begin(), r.warnings.end(), [](const OverrideWarning& a, const OverrideWarning& b) {
        if (a.overridden_source.marginality() != b.overridden_source.marginality())
            return a.overridden_source.marginality() < b.overridden_source.marginality();
        return a.overridden_source < b.overridden_source;
    });
    return r;
}

bool is_valid(const Node& root, const Selection& s) {
    if (s.is_element()) return find_node(root, s.as_element().path) != nullptr;
    const auto& sl = s.as_slice();
    const Node* n = find_node(root, sl.lish);
    if (!n || !n->is_lish()) return false;
    return sl.position >= 1 && sl.position < slice_extent(n->lish());
}

std::vector<LishPath> selection_cells(const Node& root, const Selection& s) {
    if (!is_valid(root, s)) throw PathError("invalid selection", {});
    if (s.is_element()) return atomic_paths(root, s.as_element().path);
    const auto& sl = s.as_slice();
    const Lish& l = node_at(root, sl.lish).lish();
    std::vector<LishPath> out;
    for (std::size_t i = 1; i < l.size(); ++i) {
        if (!l[i].is_lish() || sl.position >= l[i].lish().size()) continue;
        const LishPath base = sl.lish.child(i).child(sl.position);
        for (const auto& suffix : body_suffixes(l[i].lish()[sl.position])) out.push_back(base.concat(suffix));
    }
    return out;
}

std::vector<LishPath> selection_cells(const Document& doc, const Selection& s) {
    return selection_cells(doc.root, s);
}

Selection cursor_move(const Document& doc, const Selection& s, CursorMove move) {
    const Node& root = doc.root;
    if (!is_valid(root, s)) return s;
    const bool forward = move == CursorMove::next_sibling || move == CursorMove::slice_next;

    if (s.is_element()) {
        const LishPath& p = s.as_element().path;
        switch (move) {
        case CursorMove::prev_sibling:
        case CursorMove::next_sibling: {
            if (p.empty()) return s;
            const auto& parent = node_at(root, p.parent()).lish();
            return Selection::element(p.parent().child(step(p.back(), forward, 0, parent.size() - 1)));
        }
        case CursorMove::drill_in: {
            const Node& n = node_at(root, p);
            if (!n.is_lish() || n.lish().elements.empty()) return s;
            return Selection::element(p.child(0));
        }
        case CursorMove::drill_out: return Selection::element(p.parent());
        case CursorMove::slice_prev:
        case CursorMove::slice_next: {
            // Same position in the neighbouring element of an aligned family.
            if (p.size() < 2) return s;
            const LishPath family = p.prefix(p.size() - 2);
            const Node& g = node_at(root, family);
            if (!g.is_lish() || !g.lish().tmpl().is_lish()) return s;
            std::vector<std::size_t> idx(p.begin(), p.end());
            idx[idx.size() - 2] = step(idx[idx.size() - 2], forward, 0, g.lish().size() - 1);
            LishPath moved(std::move(idx));
            return find_node(root, moved) ? Selection::element(std::move(moved)) : s;
        }
        }
        return s;
    }

    const auto& sl = s.as_slice();
    const Lish& l = node_at(root, sl.lish).lish();
    switch (move) {
    case CursorMove::slice_prev:
    case CursorMove::slice_next:
        return Selection::slice(sl.lish, step(sl.position, forward, 1, slice_extent(l) - 1));
    case CursorMove::prev_sibling:
    case CursorMove::next_sibling: {
        if (sl.lish.empty()) return s;
        const auto& parent = node_at(root, sl.lish.parent()).lish();
        auto moved = Selection::slice(
            sl.lish.parent().child(step(sl.lish.back(), forward, 0, parent.size() - 1)), sl.position);
        return is_valid(root, moved) ? moved : s;
    }
    case CursorMove::drill_in: {
        auto target = Selection::element(sl.lish.child(1).child(sl.position));
        return is_valid(root, target) ? target : s;
    }
    case CursorMove::drill_out: return Selection::element(sl.lish);
    }
    return s;
}

Json selection_to_json(const Selection& s) {
    Json j = Json::object();
    if (s.is_element()) {
        j["element"] = path_to_json(s.as_element().path);
    } else {
        Json inner = Json::object();
        inner["lish"] = path_to_json(s.as_slice().lish);
        inner["position"] = s.as_slice().position;
        j["slice"] = std::move(inner);
    }
    return j;
}

Selection selection_from_json(const Json& j) {
    if (j.is_object() && j.size() == 1 && j.contains("element"))
        return Selection::element(path_from_json(j.at("element"), "/element"));
    if (j.is_object() && j.size() == 1 && j.contains("slice")) {
        const auto& inner = j.at("slice");
        if (!inner.is_object() || !inner.contains("lish") || !inner.contains("position"))
            throw SchemaError("slice needs \"lish\" and \"position\"", "/slice");
        const auto& pos = inner.at("position");
        if (!pos.is_number_integer() || pos.get<std::int64_t>() < 1)
            throw SchemaError("position must be an integer >= 1", "/slice/position");
        return Selection::slice(path_from_json(inner.at("lish"), "/slice/lish"), pos.get<std::size_t>());
    }
    throw SchemaError("selection must be {\"element\":[...]} or {\"slice\":{...}}", "");
}

Json paths_to_json(const std::vector<LishPath>& paths) {
    Json arr = Json::array();
    for (const auto& p : paths) arr.push_back(path_to_json(p));
    return arr;
}

Json resolution_to_json(const FormulaResolution& r) {
    Json j = Json::object();
    j["formula"] = r.formula ? Json(*r.formula) : Json(nullptr);
    j["source"] = r.source ? path_to_json(*r.source) : Json(nullptr);
    j["specificity"] = r.specificity;
    Json warnings = Json::array();
    for (const auto& w : r.warnings) {
        Json item = Json::object();
        item["overridden_source"] = path_to_json(w.overridden_source);
        item["reason"] = w.reason;
        warnings.push_back(std::move(item));
    }
    j["warnings"] = std::move(warnings);
    return j;
}

} // namespace lish
