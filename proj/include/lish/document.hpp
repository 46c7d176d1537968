#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lish/node.hpp"

namespace lish {

/// Formula placement policy. Strict: formulae only in marginal cells.
enum class Mode { strict, relaxed };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view text);

struct Document {
    Node root;
    Mode mode = Mode::relaxed;
    std::string id;
    /// Edit counter; a freshly created document is at version 1.
    std::int64_t version = 1;

    friend bool operator==(const Document&, const Document&) = default;
};

} // namespace lish
