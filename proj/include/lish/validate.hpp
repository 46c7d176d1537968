#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lish/document.hpp"
#include "lish/error.hpp"
#include "lish/node.hpp"
#include "lish/path.hpp"

namespace lish {

enum class ViolationKind {
    empty_lish,
    atom_under_lish_template,
    length_mismatch,
    strict_formula_placement,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    LishPath path;
    ViolationKind kind;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(const LishPath& path, ViolationKind kind) const;
};

/// Checks the template rule over the whole tree and reports every violation.
///
/// A template atom admits anything below it; a template lish demands a lish
/// of the same length whose elements conform position by position. Every
/// sub-lish, including those inside templates, is checked against its own
/// template as well.
ValidationReport validate(const Node& node);

/// Structural validation plus the document's formula policy.
ValidationReport validate(const Document& doc);

/// True when `candidate` has at least the structure of `tmpl`.
bool conforms(const Node& tmpl, const Node& candidate);

/// Thrown when an operation would produce (or requires) an invalid document.
struct ValidationError : Error {
    explicit ValidationError(ValidationReport r);
    ValidationReport report;
};

std::string describe(const Violation& v);

} // namespace lish
