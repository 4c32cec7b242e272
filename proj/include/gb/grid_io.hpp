#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "gb/errors.hpp"
#include "gb/sign_matrix.hpp"

namespace gb {

// Text format for sign grids: one line per row, '+' for +1 and '-' for -1.
// The parser also accepts the filled/hollow circle glyphs emitted by
// render_grid, so rendered output parses back to the same grid.

inline std::string to_grid_text(const SignMatrix& m) {
    std::string out;
    out.reserve((m.cols() + 1) * m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            out += m.at(i, j) == +1 ? '+' : '-';
        out += '\n';
    }
    return out;
}

inline SignMatrix parse_grid_text(std::string_view text) {
    std::vector<std::vector<int>> rows;
    std::vector<int> cur;
    auto end_line = [&] {
        if (!cur.empty()) {
            rows.push_back(cur);
            cur.clear();
        }
    };
    for (std::size_t p = 0; p < text.size();) {
        char c = text[p];
        if (c == '\n') {
            end_line();
            ++p;
        } else if (c == '\r' || c == ' ' || c == '\t') {
            ++p;
        } else if (c == '+') {
            cur.push_back(+1);
            ++p;
        } else if (c == '-') {
            cur.push_back(-1);
            ++p;
        } else if (text.compare(p, 3, "●") == 0) {  // filled circle, +1
            cur.push_back(+1);
            p += 3;
        } else if (text.compare(p, 3, "○") == 0) {  // hollow circle, -1
            cur.push_back(-1);
            p += 3;
        } else {
            throw ShapeError("grid parse: unexpected character '" +
                             std::string(1, c) + "'");
        }
    }
    end_line();
    if (rows.empty())
        throw ShapeError("grid parse: no rows");
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw ShapeError("grid parse: ragged rows");
    return SignMatrix::from_rows(rows);
}

inline SignMatrix load_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ShapeError("grid load: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid_text(buf.str());
}

inline void save_grid_file(const std::string& path, const SignMatrix& m) {
    std::ofstream out(path);
    if (!out)
        throw Error("grid save: cannot open " + path);
    out << to_grid_text(m);
}

// Block-glyph rendering for terminals: filled circle = +1 (light on),
// hollow circle = -1, followed by a caption line.  An optional value
// (e.g. a solved quantity) is appended to the caption.
inline std::string render_grid(const SignMatrix& m,
                               std::optional<long long> value = std::nullopt,
                               std::string_view value_label = "") {
    if (m.rows() > 64 || m.cols() > 64)
        throw SizeLimitError("render_grid: at most 64x64");
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            out += m.at(i, j) == +1 ? "●" : "○";
        out += '\n';
    }
    out += std::to_string(m.rows());
    out += 'x';
    out += std::to_string(m.cols());
    if (value.has_value()) {
        out += ", ";
        if (!value_label.empty()) {
            out += value_label;
            out += " = ";
        }
        out += std::to_string(*value);
    }
    out += '\n';
    return out;
}

}  // namespace gb
