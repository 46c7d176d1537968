#include "lish/path.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "lish/error.hpp"

namespace lish {

LishPath LishPath::child(std::size_t index) const {
    auto out = indices_;
    out.push_back(index);
    return LishPath(std::move(out));
}

LishPath LishPath::parent() const {
    if (indices_.empty()) return {};
    return LishPath(std::vector<std::size_t>(indices_.begin(), indices_.end() - 1));
}

LishPath LishPath::prefix(std::size_t length) const {
    length = std::min(length, indices_.size());
    return LishPath(std::vector<std::size_t>(indices_.begin(), indices_.begin() + length));
}

LishPath LishPath::concat(const LishPath& suffix) const {
    auto out = indices_;
    out.insert(out.end(), suffix.indices_.begin(), suffix.indices_.end());
    return LishPath(std::move(out));
}

bool LishPath::starts_with(const LishPath& p) const {
    return p.size() <= size() && std::equal(p.begin(), p.end(), begin());
}

std::size_t LishPath::marginality() const noexcept {
    return static_cast<std::size_t>(std::count(indices_.begin(), indices_.end(), 0u));
}

std::string LishPath::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(indices_[i]);
    }
    return out;
}

LishPath LishPath::parse(std::string_view text) {
    std::vector<std::size_t> out;
    if (text.empty()) return {};
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        auto part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw PathError("malformed path '" + std::string(text) + "'", LishPath(out));
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return LishPath(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const LishPath& path) {
    return os << '[' << path.to_string() << ']';
}

} // namespace lish
