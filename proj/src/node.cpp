#include "lish/node.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace lish {

bool is_null(const Scalar& s) { return std::holds_alternative<std::monostate>(s); }

std::string scalar_text(const Scalar& s) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return nlohmann::json(d).dump(); }
        std::string operator()(const std::string& str) const { return str; }
    };
    return std::visit(Visitor{}, s);
}

Lish::Lish(std::vector<Node> elems, std::optional<Orientation> orient)
    : elements(std::move(elems)), orientation(orient) {}

const Node& Lish::tmpl() const {
    if (elements.empty()) throw std::out_of_range("empty lish has no template");
    return elements.front();
}

const Node& Lish::operator[](std::size_t i) const { return elements.at(i); }
Node& Lish::operator[](std::size_t i) { return elements.at(i); }

bool operator==(const Lish& a, const Lish& b) {
    return a.orientation == b.orientation && a.elements == b.elements;
}

Node make_lish(std::vector<Node> elements, std::optional<Orientation> orient) {
    return Node(Lish(std::move(elements), orient));
}

} // namespace lish
