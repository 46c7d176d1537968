#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lish {

/// Address of a node: one 0-based index per level, starting at the root.
/// Index 0 at any level addresses that level's template (its margin).
class LishPath {
public:
    LishPath() = default;
    LishPath(std::initializer_list<std::size_t> indices) : indices_(indices) {}
    explicit LishPath(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    std::size_t back() const { return indices_.back(); }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

    LishPath child(std::size_t index) const;
    LishPath parent() const;
    LishPath prefix(std::size_t length) const;
    LishPath concat(const LishPath& suffix) const;
    bool starts_with(const LishPath& prefix) const;

    /// Number of zero components.
    std::size_t marginality() const noexcept;
    bool is_marginal() const noexcept { return marginality() > 0; }

    /// Comma-separated form used on the command line ("" is the root).
    std::string to_string() const;
    static LishPath parse(std::string_view text);

    friend auto operator<=>(const LishPath&, const LishPath&) = default;
    friend bool operator==(const LishPath&, const LishPath&) = default;

private:
    std::vector<std::size_t> indices_;
};

std::ostream& operator<<(std::ostream& os, const LishPath& path);

inline std::size_t marginality(const LishPath& path) { return path.marginality(); }

} // namespace lish
