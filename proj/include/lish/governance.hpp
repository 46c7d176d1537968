#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lish/codec.hpp"
#include "lish/document.hpp"
#include "lish/path.hpp"

namespace lish {

/// The structured cursor. Never an arbitrary set of cells: either a whole
/// sub-tree, or the cells at one template position across every body
/// element of one lish (a generalised row or column).
struct Selection {
    struct Element {
        LishPath path;
        friend bool operator==(const Element&, const Element&) = default;
    };
    struct Slice {
        LishPath lish;
        std::size_t position = 1;
        friend bool operator==(const Slice&, const Slice&) = default;
    };

    std::variant<Element, Slice> value;

    static Selection element(LishPath path) { return {Element{std::move(path)}}; }
    static Selection slice(LishPath lish, std::size_t position) { return {Slice{std::move(lish), position}}; }

    bool is_element() const { return std::holds_alternative<Element>(value); }
    const Element& as_element() const { return std::get<Element>(value); }
    const Slice& as_slice() const { return std::get<Slice>(value); }

    friend bool operator==(const Selection&, const Selection&) = default;
};

enum class CursorMove { prev_sibling, next_sibling, drill_in, drill_out, slice_prev, slice_next };

std::optional<CursorMove> parse_cursor_move(std::string_view text);

struct OverrideWarning {
    LishPath overridden_source;
    /// "overridden" (a more specific formula won) or "ambiguous" (same
    /// specificity, resolved by greatest source path).
    std::string reason;

    friend bool operator==(const OverrideWarning&, const OverrideWarning&) = default;
};

struct FormulaResolution {
    std::optional<std::string> formula;
    std::optional<LishPath> source;
    /// Marginality of the source; 0 for the cell's own formula.
    std::size_t specificity = 0;
    std::vector<OverrideWarning> warnings;
};

/// Body cells governed by the marginal atom at `margin`, in document order.
///
/// Every zero component of `margin` is replaced, simultaneously, by every
/// body index of the lish at that level. Candidates that land on an atom are
/// included; candidates that land on a lish (an expanded cell) contribute
/// that lish's body cells, its own margins excluded. A non-marginal path
/// governs nothing.
std::vector<LishPath> governed_set(const Node& root, const LishPath& margin);
std::vector<LishPath> governed_set(const Document& doc, const LishPath& margin);

/// Every marginal atom whose governed set contains `cell`, ordered by
/// ascending marginality, then longer paths first, then path order.
/// Computed by zeroing subsets of the cell's path (and of its prefixes, for
/// cells inside expansions).
std::vector<LishPath> governing_margins(const Node& root, const LishPath& cell);
std::vector<LishPath> governing_margins(const Document& doc, const LishPath& cell);

/// Innermost-wins formula lookup for a body cell.
FormulaResolution effective_formula(const Document& doc, const LishPath& cell);

bool is_valid(const Node& root, const Selection& s);

/// Atomic cells covered by a selection, in document order. Element
/// selections include margins; slices descend into expansions like
/// governed_set does.
std::vector<LishPath> selection_cells(const Node& root, const Selection& s);
std::vector<LishPath> selection_cells(const Document& doc, const Selection& s);

/// Moves the cursor. Every move clamps at the edges, so the result is always
/// a valid selection when the input is.
Selection cursor_move(const Document& doc, const Selection& s, CursorMove move);

Json selection_to_json(const Selection& s);
Selection selection_from_json(const Json& j);
Json paths_to_json(const std::vector<LishPath>& paths);
Json resolution_to_json(const FormulaResolution& r);

} // namespace lish
