#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lish {

enum class Orientation { rows, columns };

inline Orientation flip(Orientation o) {
    return o == Orientation::rows ? Orientation::columns : Orientation::rows;
}

/// Cell value. Integers and reals are kept apart so that 2015 stays 2015.
using Scalar = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

/// Style properties carried by a cell. An empty map means "no format".
using Format = std::map<std::string, std::string>;

bool is_null(const Scalar& s);
std::string scalar_text(const Scalar& s);

/// One cell: a value plus optional formula text and formatting.
/// Any of the three facets may be used on any cell; where formulae are
/// allowed is a document policy, not a property of the atom.
struct Atom {
    Scalar value;
    std::optional<std::string> formula;
    Format format;

    Atom() = default;
    Atom(Scalar v) : value(std::move(v)) {}
    Atom(Scalar v, std::optional<std::string> f, Format fmt = {})
        : value(std::move(v)), formula(std::move(f)), format(std::move(fmt)) {}

    /// Null value, no formula, no format.
    bool is_empty() const { return is_null(value) && !formula && format.empty(); }
    bool has_facets() const { return formula.has_value() || !format.empty(); }

    friend bool operator==(const Atom&, const Atom&) = default;
};

class Node;

/// A list whose first element is the template for the rest.
/// An empty element list is representable so that broken input can be
/// loaded and reported on; validate() rejects it.
struct Lish {
    std::vector<Node> elements;
    std::optional<Orientation> orientation;

    Lish() = default;
    explicit Lish(std::vector<Node> elems, std::optional<Orientation> orient = std::nullopt);

    std::size_t size() const noexcept { return elements.size(); }
    const Node& tmpl() const;
    const Node& operator[](std::size_t i) const;
    Node& operator[](std::size_t i);
};

bool operator==(const Lish& a, const Lish& b);

/// Either an Atom or a Lish.
class Node {
public:
    Node() : data_(Atom{}) {}
    Node(Atom a) : data_(std::move(a)) {}
    Node(Lish l) : data_(std::move(l)) {}
    Node(Scalar s) : data_(Atom{std::move(s)}) {}

    bool is_atom() const noexcept { return std::holds_alternative<Atom>(data_); }
    bool is_lish() const noexcept { return std::holds_alternative<Lish>(data_); }

    const Atom& atom() const { return std::get<Atom>(data_); }
    Atom& atom() { return std::get<Atom>(data_); }
    const Lish& lish() const { return std::get<Lish>(data_); }
    Lish& lish() { return std::get<Lish>(data_); }

    friend bool operator==(const Node& a, const Node& b) { return a.data_ == b.data_; }

private:
    std::variant<Atom, Lish> data_;
};

/// Builds a Lish node from its elements.
Node make_lish(std::vector<Node> elements, std::optional<Orientation> orient = std::nullopt);

} // namespace lish
