#include "rankclose/io.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace rankclose {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos)
        lines.pop_back();
    return lines;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

struct Cell {
    bool observed = false;
    double value = 0.0;
};

std::vector<std::vector<Cell>> parse_csv_cells(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError(1, "empty matrix");
    std::vector<std::vector<Cell>> rows;
    rows.reserve(lines.size());
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::vector<Cell> row;
        std::size_t start = 0;
        const auto line = lines[ln];
        while (true) {
            auto end = line.find(',', start);
            const auto field = trim(line.substr(start, end == std::string_view::npos ? end : end - start));
            Cell cell;
            if (!field.empty() && field != "?") {
                auto num = field;
                if (num.front() == '+')
                    num.remove_prefix(1);
                const auto res = std::from_chars(num.data(), num.data() + num.size(), cell.value);
                if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
                    throw ParseError(ln + 1, "not a number: '" + std::string(field) + "'");
                if (!std::isfinite(cell.value))
                    throw ParseError(ln + 1, "non-finite value '" + std::string(field) + "'");
                cell.observed = true;
            }
            row.push_back(cell);
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(ln + 1, "row has " + std::to_string(row.size()) + " fields, expected " +
                                         std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Mask parse_mask(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError(1, "empty mask");
    const auto cols = static_cast<Index>(trim(lines.front()).size());
    std::vector<Entry> entries;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto line = trim(lines[ln]);
        if (static_cast<Index>(line.size()) != cols)
            throw ParseError(ln + 1, "row has " + std::to_string(line.size()) + " cells, expected " +
                                         std::to_string(cols));
        for (Index j = 0; j < cols; ++j) {
            const char c = line[static_cast<std::size_t>(j)];
            if (c == '1')
                entries.push_back({static_cast<Index>(ln), j});
            else if (c != '0')
                throw ParseError(ln + 1, std::string("invalid mask character '") + c + "'");
        }
    }
    return Mask(static_cast<Index>(lines.size()), cols, std::move(entries));
}

std::string serialize_mask(const Mask &mask) {
    std::string out;
    out.reserve(static_cast<std::size_t>(mask.rows() * (mask.cols() + 1)));
    for (Index i = 0; i < mask.rows(); ++i) {
        for (Index j = 0; j < mask.cols(); ++j)
            out += mask.contains(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

MaskedMatrix parse_masked_matrix(std::string_view text) {
    const auto cells = parse_csv_cells(text);
    const auto rows = static_cast<Index>(cells.size());
    const auto cols = static_cast<Index>(cells.front().size());
    std::vector<Entry> entries;
    std::vector<double> values;
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            const auto &c = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (c.observed) {
                entries.push_back({i, j});
                values.push_back(c.value);
            }
        }
    // entries are already row-major, so values line up with the canonical order
    return MaskedMatrix(Mask(rows, cols, std::move(entries)), values);
}

std::string serialize_masked_matrix(const MaskedMatrix &mm) {
    std::string out;
    for (Index i = 0; i < mm.rows(); ++i) {
        for (Index j = 0; j < mm.cols(); ++j) {
            if (j > 0)
                out += ',';
            out += mm.mask().contains(i, j) ? format_double(mm.dense()(i, j)) : "?";
        }
        out += '\n';
    }
    return out;
}

DenseMatrix parse_dense(std::string_view text) {
    const auto cells = parse_csv_cells(text);
    DenseMatrix a(static_cast<Index>(cells.size()), static_cast<Index>(cells.front().size()));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            const auto &c = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!c.observed)
                throw ParseError(static_cast<std::size_t>(i) + 1, "missing value in dense matrix");
            a(i, j) = c.value;
        }
    return a;
}

std::string serialize_dense(const DenseMatrix &a) {
    std::string out;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (j > 0)
                out += ',';
            out += format_double(a(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace rankclose
