#include "lish/codec.hpp"

#include <limits>

#include "lish/error.hpp"

namespace lish {

namespace {

std::string child_pointer(const std::string& base, const std::string& token) { return base + "/" + token; }
std::string child_pointer(const std::string& base, std::size_t index) {
    return base + "/" + std::to_string(index);
}

void only_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& pointer) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError("unexpected key '" + key + "'", pointer);
    }
}

Json atom_to_json(const Atom& a) {
    if (!a.has_facets()) return scalar_to_json(a.value);
    Json j = Json::object();
    j["v"] = scalar_to_json(a.value);
    if (a.formula) j["f"] = *a.formula;
    if (!a.format.empty()) {
        Json fmt = Json::object();
        for (const auto& [k, v] : a.format) fmt[k] = v;
        j["fmt"] = std::move(fmt);
    }
    return j;
}

Atom atom_from_object(const Json& j, const std::string& pointer) {
    only_keys(j, {"v", "f", "fmt"}, pointer);
    Atom a;
    if (auto it = j.find("v"); it != j.end()) a.value = scalar_from_json(*it, child_pointer(pointer, "v"));
    if (auto it = j.find("f"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw SchemaError("formula must be a string or null", child_pointer(pointer, "f"));
        auto text = it->get<std::string>();
        if (text.empty()) throw SchemaError("formula text must not be empty", child_pointer(pointer, "f"));
        a.formula = std::move(text);
    }
    if (auto it = j.find("fmt"); it != j.end() && !it->is_null()) {
        auto fp = child_pointer(pointer, "fmt");
        if (!it->is_object()) throw SchemaError("format must be an object or null", fp);
        for (const auto& [k, v] : it->items()) {
            if (!v.is_string()) throw SchemaError("format values must be strings", child_pointer(fp, k));
            a.format[k] = v.get<std::string>();
        }
    }
    return a;
}

Lish lish_from_array(const Json& arr, const std::string& pointer) {
    Lish l;
    l.elements.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        l.elements.push_back(node_from_json(arr[i], child_pointer(pointer, i)));
    return l;
}

} // namespace

Json scalar_to_json(const Scalar& s) {
    struct Visitor {
        Json operator()(std::monostate) const { return nullptr; }
        Json operator()(bool b) const { return b; }
        Json operator()(std::int64_t i) const { return i; }
        Json operator()(double d) const { return d; }
        Json operator()(const std::string& str) const { return str; }
    };
    return std::visit(Visitor{}, s);
}

Scalar scalar_from_json(const Json& j, const std::string& pointer) {
    switch (j.type()) {
    case Json::value_t::null: return std::monostate{};
    case Json::value_t::boolean: return j.get<bool>();
    case Json::value_t::number_integer: return j.get<std::int64_t>();
    case Json::value_t::number_unsigned: {
        auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            return static_cast<double>(u);
        return static_cast<std::int64_t>(u);
    }
    case Json::value_t::number_float: return j.get<double>();
    case Json::value_t::string: return j.get<std::string>();
    default: throw SchemaError("expected a scalar", pointer);
    }
}

Json node_to_json(const Node& node) {
    if (node.is_atom()) return atom_to_json(node.atom());
    const Lish& l = node.lish();
    Json arr = Json::array();
    for (const auto& e : l.elements) arr.push_back(node_to_json(e));
    if (!l.orientation) return arr;
    Json j = Json::object();
    j["lish"] = std::move(arr);
    j["orient"] = *l.orientation == Orientation::rows ? "rows" : "cols";
    return j;
}

Node node_from_json(const Json& j, const std::string& pointer) {
    if (j.is_array()) return Node(lish_from_array(j, pointer));
    if (j.is_object()) {
        if (j.contains("lish")) {
            only_keys(j, {"lish", "orient"}, pointer);
            const auto& arr = j.at("lish");
            if (!arr.is_array()) throw SchemaError("\"lish\" must be an array", child_pointer(pointer, "lish"));
            Lish l = lish_from_array(arr, child_pointer(pointer, "lish"));
            if (auto it = j.find("orient"); it != j.end() && !it->is_null()) {
                if (*it == "rows") l.orientation = Orientation::rows;
                else if (*it == "cols") l.orientation = Orientation::columns;
                else throw SchemaError("orient must be \"rows\" or \"cols\"", child_pointer(pointer, "orient"));
            }
            return Node(std::move(l));
        }
        return Node(atom_from_object(j, pointer));
    }
    return Node(Atom(scalar_from_json(j, pointer)));
}

Node parse_node(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what(), "");
    }
    return node_from_json(j);
}

Json path_to_json(const LishPath& path) {
    Json arr = Json::array();
    for (auto i : path) arr.push_back(i);
    return arr;
}

LishPath path_from_json(const Json& j, const std::string& pointer) {
    if (!j.is_array()) throw SchemaError("path must be an array of integers", pointer);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw SchemaError("path components must be non-negative integers", child_pointer(pointer, i));
        out.push_back(e.get<std::size_t>());
    }
    return LishPath(std::move(out));
}

Json document_to_json(const Document& doc) {
    Json j = Json::object();
    j["version"] = doc.version;
    j["mode"] = std::string(to_string(doc.mode));
    j["root"] = node_to_json(doc.root);
    return j;
}

Document document_from_json(const Json& j) {
    Document doc;
    if (!j.is_object() || !j.contains("root")) {
        doc.root = node_from_json(j, "");
        return doc;
    }
    only_keys(j, {"version", "mode", "root"}, "");
    if (auto it = j.find("version"); it != j.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
            throw SchemaError("version must be a non-negative integer", "/version");
        doc.version = it->get<std::int64_t>();
    }
    if (auto it = j.find("mode"); it != j.end()) {
        auto mode = it->is_string() ? parse_mode(it->get<std::string>()) : std::nullopt;
        if (!mode) throw SchemaError("mode must be \"strict\" or \"relaxed\"", "/mode");
        doc.mode = *mode;
    }
    doc.root = node_from_json(j.at("root"), "/root");
    return doc;
}

ParsedDocument parse_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what(), "");
    }
    ParsedDocument out;
    out.doc = document_from_json(j);
    out.report = validate(out.doc);
    return out;
}

std::string dump(const Json& j) {
    try {
        return j.dump();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what(), "");
    }
}

std::string serialize_json(const Document& doc) { return dump(document_to_json(doc)); }

Json report_to_json(const ValidationReport& report) {
    Json j = Json::object();
    j["ok"] = report.ok();
    Json list = Json::array();
    for (const auto& v : report.violations) {
        Json item = Json::object();
        item["path"] = path_to_json(v.path);
        item["kind"] = std::string(to_string(v.kind));
        item["detail"] = v.detail;
        list.push_back(std::move(item));
    }
    j["violations"] = std::move(list);
    return j;
}

} // namespace lish
