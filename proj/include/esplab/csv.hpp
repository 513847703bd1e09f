#pragma once

#include "esplab/errors.hpp"

#include <charconv>
#include <cstddef>
#include <string>
#include <system_error>

namespace esplab {

/// Locale-independent shortest round-trip formatting ('.' decimal always).
inline void append_number(std::string& out, double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw numeric_error("unrepresentable value in CSV output");
    out.append(buf, p);
}

inline void append_number(std::string& out, std::size_t v) {
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.append(buf, p);
}

inline std::string format_number(double v) {
    std::string s;
    append_number(s, v);
    return s;
}

/// Incremental CSV with '\n' line endings.
class csv_writer {
public:
    explicit csv_writer(std::string header = "") {
        if (!header.empty()) {
            text_ = std::move(header);
            text_.push_back('\n');
        }
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        (cell(cells, first), ...);
        text_.push_back('\n');
    }

    const std::string& str() const { return text_; }

private:
    void cell(double v, bool& first) {
        if (!first) text_.push_back(',');
        first = false;
        append_number(text_, v);
    }
    void cell(std::size_t v, bool& first) {
        if (!first) text_.push_back(',');
        first = false;
        append_number(text_, v);
    }
    void cell(const std::string& v, bool& first) {
        if (!first) text_.push_back(',');
        first = false;
        text_ += v;
    }
    void cell(const char* v, bool& first) {
        if (!first) text_.push_back(',');
        first = false;
        text_ += v;
    }

    std::string text_;
};

} // namespace esplab
