#include "lish/validate.hpp"

#include <algorithm>

#include "lish/model.hpp"

namespace lish {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::empty_lish: return "empty-lish";
    case ViolationKind::atom_under_lish_template: return "atom-under-lish-template";
    case ViolationKind::length_mismatch: return "length-mismatch";
    case ViolationKind::strict_formula_placement: return "strict-formula-placement";
    }
    return "unknown";
}

bool ValidationReport::has(const LishPath& path, ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.path == path && v.kind == kind; });
}

std::string describe(const Violation& v) {
    return "[" + v.path.to_string() + "] " + std::string(to_string(v.kind)) + ": " + v.detail;
}

ValidationError::ValidationError(ValidationReport r)
    : Error(r.ok() ? std::string("document is invalid")
                   : "document is invalid: " + describe(r.violations.front())),
      report(std::move(r)) {}

namespace {

class Validator {
public:
    void walk(const Node& node, const LishPath& path) {
        if (node.is_atom()) return;
        const Lish& l = node.lish();
        if (l.elements.empty()) {
            add(path, ViolationKind::empty_lish, "a lish needs at least its template element");
            return;
        }
        for (std::size_t i = 0; i < l.size(); ++i) walk(l[i], path.child(i));
        for (std::size_t i = 1; i < l.size(); ++i) conform(l[0], l[i], path.child(i));
    }

    ValidationReport finish() && {
        std::stable_sort(out_.violations.begin(), out_.violations.end(),
                         [](const Violation& a, const Violation& b) { return a.path < b.path; });
        return std::move(out_);
    }

    void add(const LishPath& path, ViolationKind kind, std::string detail) {
        if (out_.has(path, kind)) return;
        out_.violations.push_back({path, kind, std::move(detail)});
    }

private:
    void conform(const Node& tmpl, const Node& x, const LishPath& path) {
        if (tmpl.is_atom()) return;
        const Lish& t = tmpl.lish();
        if (t.elements.empty()) return; // reported where the template itself lives
        if (x.is_atom()) {
            add(path, ViolationKind::atom_under_lish_template,
                "template is a lish of " + std::to_string(t.size()) + ", element is an atom");
            return;
        }
        const Lish& l = x.lish();
        if (l.size() != t.size()) {
            add(path, ViolationKind::length_mismatch,
                "template has " + std::to_string(t.size()) + " elements, element has " +
                    std::to_string(l.size()));
            return;
        }
        for (std::size_t j = 0; j < t.size(); ++j) conform(t[j], l[j], path.child(j));
    }

    ValidationReport out_;
};

bool conforms_impl(const Node& tmpl, const Node& x) {
    if (tmpl.is_atom()) return true;
    if (!x.is_lish()) return false;
    const Lish& t = tmpl.lish();
    const Lish& l = x.lish();
    if (t.size() != l.size()) return false;
    for (std::size_t j = 0; j < t.size(); ++j)
        if (!conforms_impl(t[j], l[j])) return false;
    return true;
}

} // namespace

ValidationReport validate(const Node& node) {
    Validator v;
    v.walk(node, {});
    return std::move(v).finish();
}

ValidationReport validate(const Document& doc) {
    Validator v;
    v.walk(doc.root, {});
    if (doc.mode == Mode::strict) {
        for (const auto& p : atomic_paths(doc.root)) {
            if (!p.is_marginal() && node_at(doc.root, p).atom().formula)
                v.add(p, ViolationKind::strict_formula_placement,
                      "strict mode allows formulae only in marginal cells");
        }
    }
    return std::move(v).finish();
}

bool conforms(const Node& tmpl, const Node& candidate) { return conforms_impl(tmpl, candidate); }

} // namespace lish
