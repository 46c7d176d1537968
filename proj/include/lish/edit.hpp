#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lish/codec.hpp"
#include "lish/document.hpp"
#include "lish/node.hpp"
#include "lish/path.hpp"

namespace lish {

namespace cmd {

struct SetValue {
    LishPath path;
    Scalar value;
};
struct SetFormula {
    LishPath path;
    std::optional<std::string> text;
};
struct SetFormat {
    LishPath path;
    std::string key;
    std::optional<std::string> value;
};
/// Inserts a null-filled copy of the template's shape at `at_index` (>= 1).
struct InstantiateElement {
    LishPath lish_path;
    std::size_t at_index = 1;
};
struct DeleteElement {
    LishPath path;
};
/// Replaces a body atom with [null, old atom, null...] of `length` (>= 2).
struct ExpandAtom {
    LishPath path;
    std::size_t length = 2;
};
/// Groups template positions from..to (and the same positions of every
/// element) into nested lishes with a fresh null margin.
struct WrapColumns {
    LishPath lish_path;
    std::size_t from = 1;
    std::size_t to = 1;
};
enum class TemplateMode { inherit, null_atom };
/// Groups elements from..to into one element [T', e_from .. e_to].
struct WrapElements {
    LishPath lish_path;
    std::size_t from = 1;
    std::size_t to = 1;
    TemplateMode template_mode = TemplateMode::null_atom;
};
/// Replaces a node inside a template. With `propagate`, body elements grow
/// (atoms become [null, atom, null...], short lishes are padded) to conform.
struct EditTemplate {
    LishPath path;
    Node new_node;
    bool propagate = false;
};
struct SetMode {
    Mode mode = Mode::relaxed;
};

} // namespace cmd

using EditCommand = std::variant<cmd::SetValue, cmd::SetFormula, cmd::SetFormat, cmd::InstantiateElement,
                                 cmd::DeleteElement, cmd::ExpandAtom, cmd::WrapColumns, cmd::WrapElements,
                                 cmd::EditTemplate, cmd::SetMode>;

struct EditResult {
    Document doc;
    std::vector<std::string> diagnostics;
};

/// Applies one command. The result always validates and carries version + 1;
/// otherwise the command throws (ValidationError with the would-be report,
/// PolicyError, PathError or CommandError) and `doc` is untouched.
EditResult apply(const Document& doc, const EditCommand& command);

/// Applies a batch atomically: all commands succeed or none do.
EditResult apply_all(const Document& doc, const std::vector<EditCommand>& commands);

Json command_to_json(const EditCommand& command);
EditCommand command_from_json(const Json& j, const std::string& pointer = "");
std::vector<EditCommand> commands_from_json(const Json& j);

struct CsvDialect {
    char delimiter = ',';
    char quote = '"';
    /// Treat the first record as column labels for the top margin.
    bool header = false;
};

/// Parses CSV into a from_grid document. Unquoted fields are typed: JSON
/// numbers become numbers, true/false booleans, empty fields null; anything
/// else, and every quoted field, stays a string. Ragged rows are padded with
/// nulls. Throws ShapeError for input without records, SchemaError for bytes
/// that are not UTF-8.
Document import_csv(std::string_view text, const CsvDialect& dialect = {});

} // namespace lish
