#include "lish/document.hpp"

namespace lish {

std::string_view to_string(Mode m) { return m == Mode::strict ? "strict" : "relaxed"; }

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "strict") return Mode::strict;
    if (text == "relaxed") return Mode::relaxed;
    return std::nullopt;
}

} // namespace lish
