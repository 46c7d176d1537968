#include "lish/edit.hpp"

#include <algorithm>

#include "lish/error.hpp"
#include "lish/governance.hpp"
#include "lish/model.hpp"
#include "lish/validate.hpp"

namespace lish {

namespace {

Atom& cell_at(Node& root, const LishPath& path) {
    Node& n = node_at_mut(root, path);
    if (!n.is_atom()) throw CommandError("[" + path.to_string() + "] is a lish, not a cell");
    return n.atom();
}

Lish& lish_at(Node& root, const LishPath& path) {
    Node& n = node_at_mut(root, path);
    if (!n.is_lish()) throw CommandError("[" + path.to_string() + "] is a cell, not a lish");
    if (n.lish().elements.empty()) throw CommandError("[" + path.to_string() + "] is an empty lish");
    return n.lish();
}

// Makes `element` conform to `tmpl` by adding structure, never removing it.
void grow(const Node& tmpl, Node& element) {
    if (tmpl.is_atom()) return;
    const Lish& t = tmpl.lish();
    if (element.is_atom()) {
        if (t.size() < 2) return; // nowhere to keep the old value; validation reports it
        std::vector<Node> seeded(t.size(), Node{});
        seeded[1] = std::move(element);
        element = make_lish(std::move(seeded));
    }
    Lish& e = element.lish();
    for (std::size_t j = e.size(); j < t.size(); ++j) e.elements.push_back(shape_clone(t[j]));
    if (e.size() != t.size()) return;
    for (std::size_t j = 0; j < t.size(); ++j) grow(t[j], e[j]);
}

void propagate_templates(Node& node) {
    if (!node.is_lish() || node.lish().elements.empty()) return;
    Lish& l = node.lish();
    propagate_templates(l[0]);
    for (std::size_t i = 1; i < l.size(); ++i) {
        grow(l[0], l[i]);
        propagate_templates(l[i]);
    }
}

struct Applier {
    Document& doc;
    std::vector<std::string>& diagnostics;

    void operator()(const cmd::SetValue& c) { cell_at(doc.root, c.path).value = c.value; }

    void operator()(const cmd::SetFormula& c) {
        Atom& a = cell_at(doc.root, c.path);
        if (c.text && c.text->empty()) throw CommandError("formula text must not be empty");
        if (c.text && !c.path.is_marginal()) {
            if (doc.mode == Mode::strict)
                throw PolicyError("strict mode: formulae may only be placed in marginal cells, [" +
                                  c.path.to_string() + "] is a body cell");
            for (const auto& m : governing_margins(doc.root, c.path)) {
                if (node_at(doc.root, m).atom().formula)
                    diagnostics.push_back("[" + c.path.to_string() + "] overrides the formula on margin [" +
                                          m.to_string() + "]");
            }
        }
        a.formula = c.text;
    }

    void operator()(const cmd::SetFormat& c) {
        Atom& a = cell_at(doc.root, c.path);
        if (c.key.empty()) throw CommandError("format key must not be empty");
        if (c.value) a.format[c.key] = *c.value;
        else a.format.erase(c.key);
    }

    void operator()(const cmd::InstantiateElement& c) {
        Lish& l = lish_at(doc.root, c.lish_path);
        if (c.at_index < 1 || c.at_index > l.size())
            throw CommandError("instantiate: index " + std::to_string(c.at_index) + " outside [1, " +
                               std::to_string(l.size()) + "]");
        l.elements.insert(l.elements.begin() + static_cast<std::ptrdiff_t>(c.at_index), shape_clone(l[0]));
    }

    void operator()(const cmd::DeleteElement& c) {
        if (c.path.empty()) throw CommandError("delete: the root cannot be deleted");
        if (c.path.back() == 0) throw CommandError("delete: [" + c.path.to_string() + "] is a template");
        Lish& parent = lish_at(doc.root, c.path.parent());
        if (c.path.back() >= parent.size())
            throw PathError("delete: [" + c.path.to_string() + "] does not exist", c.path);
        parent.elements.erase(parent.elements.begin() + static_cast<std::ptrdiff_t>(c.path.back()));
    }

    void operator()(const cmd::ExpandAtom& c) {
        if (c.path.empty() || c.path.back() == 0)
            throw CommandError("expand: [" + c.path.to_string() + "] is not a body cell");
        if (c.length < 2) throw CommandError("expand: length must be at least 2");
        const Lish& parent = lish_at(doc.root, c.path.parent());
        if (parent[0].is_lish())
            throw CommandError("expand: the template position of [" + c.path.to_string() + "] is a lish");
        Node& target = node_at_mut(doc.root, c.path);
        if (!target.is_atom()) throw CommandError("expand: [" + c.path.to_string() + "] is already a lish");
        std::vector<Node> elements(c.length, Node{});
        elements[1] = std::move(target);
        target = make_lish(std::move(elements));
    }

    void operator()(const cmd::WrapColumns& c) {
        Lish& l = lish_at(doc.root, c.lish_path);
        if (!l[0].is_lish()) throw CommandError("wrap columns: the template of [" + c.lish_path.to_string() + "] is an atom");
        const std::size_t width = l[0].lish().size();
        if (c.from < 1 || c.from > c.to || c.to >= width)
            throw CommandError("wrap columns: range " + std::to_string(c.from) + ".." + std::to_string(c.to) +
                               " outside [1, " + std::to_string(width - 1) + "]");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_lish() || l[i].lish().size() != width)
                throw CommandError("wrap columns: element " + std::to_string(i) + " does not match the template");
            auto& elems = l[i].lish().elements;
            std::vector<Node> group{Node{}};
            for (std::size_t j = c.from; j <= c.to; ++j) group.push_back(std::move(elems[j]));
            elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(c.from) + 1,
                        elems.begin() + static_cast<std::ptrdiff_t>(c.to) + 1);
            elems[c.from] = make_lish(std::move(group));
        }
    }

    void operator()(const cmd::WrapElements& c) {
        Lish& l = lish_at(doc.root, c.lish_path);
        if (c.from < 1 || c.from > c.to || c.to >= l.size())
            throw CommandError("wrap elements: range " + std::to_string(c.from) + ".." + std::to_string(c.to) +
                               " outside [1, " + std::to_string(l.size() - 1) + "]");
        std::vector<Node> group;
        group.push_back(c.template_mode == cmd::TemplateMode::inherit ? shape_clone(l[0]) : Node{});
        for (std::size_t j = c.from; j <= c.to; ++j) group.push_back(std::move(l[j]));
        l.elements.erase(l.elements.begin() + static_cast<std::ptrdiff_t>(c.from) + 1,
                         l.elements.begin() + static_cast<std::ptrdiff_t>(c.to) + 1);
        l[c.from] = make_lish(std::move(group));
    }

    void operator()(const cmd::EditTemplate& c) {
        if (!c.path.is_marginal())
            throw CommandError("edit template: [" + c.path.to_string() + "] is not inside a template");
        node_at_mut(doc.root, c.path) = c.new_node;
        if (c.propagate) propagate_templates(doc.root);
    }

    void operator()(const cmd::SetMode& c) { doc.mode = c.mode; }
};

std::string child(const std::string& p, const char* key) { return p + "/" + key; }

const Json& field(const Json& j, const char* key, const std::string& pointer) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing \"") + key + "\"", pointer);
    return *it;
}

std::size_t index_field(const Json& j, const char* key, const std::string& pointer) {
    const Json& v = field(j, key, pointer);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw SchemaError("must be a non-negative integer", child(pointer, key));
    return v.get<std::size_t>();
}

std::optional<std::string> optional_string(const Json& j, const char* key, const std::string& pointer) {
    const Json& v = field(j, key, pointer);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string()) throw SchemaError("must be a string or null", child(pointer, key));
    return v.get<std::string>();
}

Json optional_to_json(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

} // namespace

EditResult apply(const Document& doc, const EditCommand& command) {
    EditResult result{doc, {}};
    std::visit(Applier{result.doc, result.diagnostics}, command);
    auto report = validate(result.doc);
    if (!report.ok()) throw ValidationError(std::move(report));
    result.doc.version = doc.version + 1;
    return result;
}

EditResult apply_all(const Document& doc, const std::vector<EditCommand>& commands) {
    EditResult result{doc, {}};
    for (const auto& c : commands) {
        auto step = lish::apply(result.doc, c);
        result.doc = std::move(step.doc);
        for (auto& d : step.diagnostics) result.diagnostics.push_back(std::move(d));
    }
    return result;
}

Json command_to_json(const EditCommand& command) {
    struct Visitor {
        Json operator()(const cmd::SetValue& c) const {
            return Json{{"cmd", "set_value"}, {"path", path_to_json(c.path)}, {"value", scalar_to_json(c.value)}};
        }
        Json operator()(const cmd::SetFormula& c) const {
            return Json{{"cmd", "set_formula"}, {"path", path_to_json(c.path)}, {"formula", optional_to_json(c.text)}};
        }
        Json operator()(const cmd::SetFormat& c) const {
            return Json{{"cmd", "set_format"},
                        {"path", path_to_json(c.path)},
                        {"key", c.key},
                        {"value", optional_to_json(c.value)}};
        }
        Json operator()(const cmd::InstantiateElement& c) const {
            return Json{{"cmd", "instantiate_element"}, {"lish_path", path_to_json(c.lish_path)}, {"at_index", c.at_index}};
        }
        Json operator()(const cmd::DeleteElement& c) const {
            return Json{{"cmd", "delete_element"}, {"path", path_to_json(c.path)}};
        }
        Json operator()(const cmd::ExpandAtom& c) const {
            return Json{{"cmd", "expand_atom"}, {"path", path_to_json(c.path)}, {"length", c.length}};
        }
        Json operator()(const cmd::WrapColumns& c) const {
            return Json{{"cmd", "wrap_columns"}, {"lish_path", path_to_json(c.lish_path)}, {"from", c.from}, {"to", c.to}};
        }
        Json operator()(const cmd::WrapElements& c) const {
            return Json{{"cmd", "wrap_elements"},
                        {"lish_path", path_to_json(c.lish_path)},
                        {"from", c.from},
                        {"to", c.to},
                        {"template_mode", c.template_mode == cmd::TemplateMode::inherit ? "inherit" : "null_atom"}};
        }
        Json operator()(const cmd::EditTemplate& c) const {
            return Json{{"cmd", "edit_template"},
                        {"path", path_to_json(c.path)},
                        {"new_node", node_to_json(c.new_node)},
                        {"propagate", c.propagate}};
        }
        Json operator()(const cmd::SetMode& c) const {
            return Json{{"cmd", "set_mode"}, {"mode", std::string(to_string(c.mode))}};
        }
    };
    return std::visit(Visitor{}, command);
}

EditCommand command_from_json(const Json& j, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError("command must be an object", pointer);
    const Json& name = field(j, "cmd", pointer);
    if (!name.is_string()) throw SchemaError("\"cmd\" must be a string", child(pointer, "cmd"));
    const auto kind = name.get<std::string>();
    auto path = [&](const char* key) { return path_from_json(field(j, key, pointer), child(pointer, key)); };

    if (kind == "set_value") return cmd::SetValue{path("path"), scalar_from_json(field(j, "value", pointer), child(pointer, "value"))};
    if (kind == "set_formula") return cmd::SetFormula{path("path"), optional_string(j, "formula", pointer)};
    if (kind == "set_format") {
        const Json& key = field(j, "key", pointer);
        if (!key.is_string()) throw SchemaError("must be a string", child(pointer, "key"));
        return cmd::SetFormat{path("path"), key.get<std::string>(), optional_string(j, "value", pointer)};
    }
    if (kind == "instantiate_element") return cmd::InstantiateElement{path("lish_path"), index_field(j, "at_index", pointer)};
    if (kind == "delete_element") return cmd::DeleteElement{path("path")};
    if (kind == "expand_atom") return cmd::ExpandAtom{path("path"), index_field(j, "length", pointer)};
    if (kind == "wrap_columns")
        return cmd::WrapColumns{path("lish_path"), index_field(j, "from", pointer), index_field(j, "to", pointer)};
    if (kind == "wrap_elements") {
        cmd::WrapElements w{path("lish_path"), index_field(j, "from", pointer), index_field(j, "to", pointer)};
        if (auto it = j.find("template_mode"); it != j.end()) {
            if (*it == "inherit") w.template_mode = cmd::TemplateMode::inherit;
            else if (*it == "null_atom") w.template_mode = cmd::TemplateMode::null_atom;
            else throw SchemaError("template_mode must be \"inherit\" or \"null_atom\"", child(pointer, "template_mode"));
        }
        return w;
    }
    if (kind == "edit_template") {
        bool propagate = false;
        if (auto it = j.find("propagate"); it != j.end()) {
            if (!it->is_boolean()) throw SchemaError("must be a boolean", child(pointer, "propagate"));
            propagate = it->get<bool>();
        }
        return cmd::EditTemplate{path("path"), node_from_json(field(j, "new_node", pointer), child(pointer, "new_node")),
                                 propagate};
    }
    if (kind == "set_mode") {
        const Json& m = field(j, "mode", pointer);
        auto mode = m.is_string() ? parse_mode(m.get<std::string>()) : std::nullopt;
        if (!mode) throw SchemaError("mode must be \"strict\" or \"relaxed\"", child(pointer, "mode"));
        return cmd::SetMode{*mode};
    }
    throw SchemaError("unknown command '" + kind + "'", child(pointer, "cmd"));
}

std::vector<EditCommand> commands_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of commands", "");
    std::vector<EditCommand> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(command_from_json(j[i], "/" + std::to_string(i)));
    return out;
}

} // namespace lish
