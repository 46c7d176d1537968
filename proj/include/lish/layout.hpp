#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lish/codec.hpp"
#include "lish/document.hpp"
#include "lish/path.hpp"

namespace lish {

/// Where one atom lands in the 2D projection, in abstract integer tracks.
struct Placement {
    LishPath path;
    int x = 0;
    int y = 0;
    int col_span = 1;
    int row_span = 1;
    /// Marginality of the path.
    int depth = 0;
    /// Orientation of the lish that directly contains the atom.
    Orientation orientation_at = Orientation::rows;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct LayoutOptions {
    /// rows: the root's elements stack top to bottom; columns: left to right.
    Orientation root_orientation = Orientation::rows;
    /// Empty tracks between neighbouring top-level lishes that do not share
    /// a template (the root template is an atom).
    int gap = 1;
};

/// Projects a valid document onto tracks.
///
/// Orientation alternates with nesting depth unless a lish overrides it.
/// Elements of a lish whose template is a lish share cross-axis tracks
/// position by position, so columns line up across a table and across a
/// whole family of tables. Elements under an atomic template are sized
/// independently and share nothing. An expanded cell grows its own element
/// along that element's minor axis; its siblings keep their natural size.
///
/// Throws ValidationError if the document does not validate.
std::vector<Placement> compute_layout(const Document& doc, const LayoutOptions& opts = {});
std::vector<Placement> compute_layout(const Node& root, const LayoutOptions& opts = {});

struct RenderOptions {
    /// Caps cell text at this many characters (0 = no cap); longer text is
    /// cut and ends in an ellipsis.
    std::size_t max_width = 0;
    std::string margin_open = "{";
    std::string margin_close = "}";
};

/// Monospace rendering: one line per row track, columns padded to the
/// widest cell, margins wrapped once per level of depth, empty cells "-".
std::string render_text(std::span<const Placement> placements, const Document& doc,
                        const RenderOptions& opts = {});

Json placements_to_json(std::span<const Placement> placements);

} // namespace lish
