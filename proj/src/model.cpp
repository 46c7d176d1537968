#include "lish/model.hpp"

namespace lish {

const Node* find_node(const Node& root, const LishPath& path) {
    const Node* cur = &root;
    for (auto index : path) {
        if (!cur->is_lish() || index >= cur->lish().size()) return nullptr;
        cur = &cur->lish()[index];
    }
    return cur;
}

namespace {

template <typename NodeT>
NodeT& walk_checked(NodeT& root, const LishPath& path) {
    NodeT* cur = &root;
    for (std::size_t depth = 0; depth < path.size(); ++depth) {
        if (!cur->is_lish())
            throw PathError("path [" + path.to_string() + "] indexes into an atom at [" +
                                path.prefix(depth).to_string() + "]",
                            path.prefix(depth + 1));
        auto& l = cur->lish();
        if (path[depth] >= l.size())
            throw PathError("path [" + path.to_string() + "]: index " + std::to_string(path[depth]) +
                                " out of range at [" + path.prefix(depth).to_string() + "] (length " +
                                std::to_string(l.size()) + ")",
                            path.prefix(depth + 1));
        cur = &l[path[depth]];
    }
    return *cur;
}

void collect_atoms(const Node& node, const LishPath& path, std::vector<LishPath>& out) {
    if (node.is_atom()) {
        out.push_back(path);
        return;
    }
    const auto& l = node.lish();
    for (std::size_t i = 0; i < l.size(); ++i) collect_atoms(l[i], path.child(i), out);
}

void collect_body(const Node& node, const LishPath& suffix, std::vector<LishPath>& out) {
    if (node.is_atom()) {
        out.push_back(suffix);
        return;
    }
    const auto& l = node.lish();
    for (std::size_t i = 1; i < l.size(); ++i) collect_body(l[i], suffix.child(i), out);
}

} // namespace

const Node& node_at(const Node& root, const LishPath& path) { return walk_checked(root, path); }
const Node& node_at(const Document& doc, const LishPath& path) { return walk_checked(doc.root, path); }
Node& node_at_mut(Node& root, const LishPath& path) { return walk_checked(root, path); }

std::vector<LishPath> atomic_paths(const Node& root, const LishPath& base) {
    std::vector<LishPath> out;
    collect_atoms(node_at(root, base), base, out);
    return out;
}

std::vector<LishPath> body_suffixes(const Node& node) {
    std::vector<LishPath> out;
    collect_body(node, {}, out);
    return out;
}

std::vector<LishPath> data_cells(const Node& root, const LishPath& path) {
    const Node& n = node_at(root, path);
    if (!n.is_lish()) throw PathError("data_cells: [" + path.to_string() + "] is an atom", path);
    std::vector<LishPath> out;
    for (const auto& s : body_suffixes(n)) out.push_back(path.concat(s));
    return out;
}

std::vector<LishPath> data_cells(const Document& doc, const LishPath& path) {
    return data_cells(doc.root, path);
}

Node from_grid(const Grid& rows) {
    if (rows.empty()) throw ShapeError("grid has no rows");
    const std::size_t cols = rows.front().size();
    if (cols == 0) throw ShapeError("grid has no columns");
    std::vector<Node> elements;
    elements.reserve(rows.size() + 1);
    elements.push_back(make_lish(std::vector<Node>(cols + 1, Node{})));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ShapeError("ragged grid: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " cells, expected " + std::to_string(cols));
        std::vector<Node> row;
        row.reserve(cols + 1);
        row.emplace_back();
        for (const auto& v : rows[r]) row.emplace_back(v);
        elements.push_back(make_lish(std::move(row)));
    }
    return make_lish(std::move(elements));
}

Node shape_clone(const Node& tmpl) {
    if (tmpl.is_atom()) return Node{};
    const auto& t = tmpl.lish();
    std::vector<Node> elements;
    elements.reserve(t.size());
    for (const auto& e : t.elements) elements.push_back(shape_clone(e));
    return make_lish(std::move(elements), t.orientation);
}

} // namespace lish
