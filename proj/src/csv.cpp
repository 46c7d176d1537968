#include <charconv>
#include <cmath>
#include <regex>

#include "lish/edit.hpp"
#include "lish/error.hpp"
#include "lish/model.hpp"

namespace lish {

namespace {

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) { ++i; continue; }
        if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
        else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
        else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
        else return false;
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        const std::uint32_t min_cp[] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < min_cp[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

struct Field {
    std::string text;
    bool quoted = false;
};

std::vector<std::vector<Field>> parse_records(std::string_view text, const CsvDialect& d) {
    std::vector<std::vector<Field>> records;
    std::vector<Field> record;
    Field field;
    bool in_quotes = false;
    bool record_has_content = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field = {};
    };
    auto end_record = [&] {
        end_field();
        if (record_has_content) records.push_back(std::move(record));
        record.clear();
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == d.quote) {
                if (i + 1 < text.size() && text[i + 1] == d.quote) {
                    field.text += c;
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.text += c;
            }
            continue;
        }
        if (c == d.quote && field.text.empty() && !field.quoted) {
            in_quotes = true;
            field.quoted = true;
            record_has_content = true;
        } else if (c == d.delimiter) {
            end_field();
            record_has_content = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
        } else {
            field.text += c;
            record_has_content = true;
        }
    }
    if (in_quotes) throw SchemaError("unterminated quoted field", "");
    end_record();
    return records;
}

Scalar infer(const Field& f) {
    if (f.quoted) return f.text;
    if (f.text.empty()) return std::monostate{};
    if (f.text == "true") return true;
    if (f.text == "false") return false;
    static const std::regex number(R"(-?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?)");
    if (!std::regex_match(f.text, number)) return f.text;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    if (f.text.find_first_of(".eE") == std::string::npos) {
        std::int64_t i = 0;
        auto [ptr, ec] = std::from_chars(first, last, i);
        if (ec == std::errc{} && ptr == last) return i;
    }
    double d = 0;
    auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec == std::errc{} && ptr == last && std::isfinite(d)) return d;
    return f.text;
}

} // namespace

Document import_csv(std::string_view text, const CsvDialect& dialect) {
    if (!valid_utf8(text)) throw SchemaError("input is not valid UTF-8", "");
    if (dialect.delimiter == dialect.quote) throw CommandError("delimiter and quote must differ");
    auto records = parse_records(text, dialect);
    if (records.empty()) throw ShapeError("CSV input has no records");

    std::size_t width = 0;
    for (const auto& r : records) width = std::max(width, r.size());

    std::vector<Node> labels;
    if (dialect.header) {
        labels.emplace_back();
        for (std::size_t c = 0; c < width; ++c)
            labels.emplace_back(c < records.front().size() ? infer(records.front()[c]) : Scalar{});
        records.erase(records.begin());
    }

    Document doc;
    if (records.empty()) {
        doc.root = make_lish({make_lish(std::move(labels))});
        return doc;
    }
    Grid grid;
    grid.reserve(records.size());
    for (const auto& r : records) {
        std::vector<Scalar> row(width);
        for (std::size_t c = 0; c < r.size(); ++c) row[c] = infer(r[c]);
        grid.push_back(std::move(row));
    }
    doc.root = from_grid(grid);
    if (dialect.header) doc.root.lish()[0] = make_lish(std::move(labels));
    return doc;
}

} // namespace lish
