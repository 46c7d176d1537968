#pragma once

#include <vector>

#include "lish/document.hpp"
#include "lish/error.hpp"
#include "lish/node.hpp"
#include "lish/path.hpp"

namespace lish {

/// Returns nullptr when the path does not address a node.
const Node* find_node(const Node& root, const LishPath& path);

/// Throws PathError naming the first failing prefix.
const Node& node_at(const Node& root, const LishPath& path);
const Node& node_at(const Document& doc, const LishPath& path);

/// Mutable access for tree rewriting; same errors as node_at.
Node& node_at_mut(Node& root, const LishPath& path);

/// Every atom below `base` (inclusive), in document order.
std::vector<LishPath> atomic_paths(const Node& root, const LishPath& base = {});

/// Atoms below the lish at `path` whose path suffix contains no zero:
/// the body cells, with every margin excluded.
std::vector<LishPath> data_cells(const Document& doc, const LishPath& path);
std::vector<LishPath> data_cells(const Node& root, const LishPath& path);

/// Zero-free atomic descendants of `node`, as suffixes relative to it.
/// An atom yields the single empty suffix.
std::vector<LishPath> body_suffixes(const Node& node);

using Grid = std::vector<std::vector<Scalar>>;

/// Embeds an r x c grid as a lish with a null top margin row and a null
/// row margin at the head of each data row.
Node from_grid(const Grid& rows);

/// Same structure as `tmpl`, every atom replaced by a null atom.
/// Orientation overrides are kept.
Node shape_clone(const Node& tmpl);

} // namespace lish
