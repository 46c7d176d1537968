#pragma once

// Canonical JSON encoding of documents, nodes and paths.
//
//   document  {"version":n, "mode":"strict"|"relaxed", "root":<node>}
//   lish      [<node>, ...]  or  {"lish":[...], "orient":"rows"|"cols"}
//   atom      bare scalar, or {"v":<scalar>, "f":<string|null>, "fmt":{...}|null}
//
// Canonical output uses the key orders above, compact separators, the bare
// scalar form whenever an atom has no formula and no format, and omits null
// "f"/"fmt" keys.

#include <string>
#include <string_view>

#include <json.hpp>

#include "lish/document.hpp"
#include "lish/node.hpp"
#include "lish/path.hpp"
#include "lish/validate.hpp"

namespace lish {

using Json = nlohmann::ordered_json;

struct ParsedDocument {
    Document doc;
    /// Structural and policy problems. Invalid documents still load so that
    /// they can be inspected and repaired.
    ValidationReport report;
};

/// Throws SchemaError (with a JSON pointer) for malformed input. A bare node
/// at top level is accepted as the root of a relaxed version-1 document.
ParsedDocument parse_json(std::string_view text);
std::string serialize_json(const Document& doc);

Json document_to_json(const Document& doc);
Document document_from_json(const Json& j);

Json node_to_json(const Node& node);
Node node_from_json(const Json& j, const std::string& pointer = "");
/// Parses JSON text holding a single node.
Node parse_node(std::string_view text);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& pointer = "");

Json path_to_json(const LishPath& path);
LishPath path_from_json(const Json& j, const std::string& pointer = "");

Json report_to_json(const ValidationReport& report);

/// Compact dump; throws SchemaError on invalid UTF-8 in strings.
std::string dump(const Json& j);

} // namespace lish
