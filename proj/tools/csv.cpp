#include "cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <string_view>

namespace rankcp::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    const std::string_view v = trim(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw InputError("non-numeric cell at row " + std::to_string(line) + ", column " +
                         std::to_string(column));
    return value;
}

} // namespace

Series load_csv(const std::string& path, bool has_header) {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open input file: " + path);

    std::vector<double> data;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (has_header && line_no == 1) continue;
        if (trim(line).empty())
            throw InputError("empty row " + std::to_string(line_no) + " in " + path);

        std::size_t row_cols = 0;
        std::size_t begin = 0;
        while (true) {
            const std::size_t comma = line.find(',', begin);
            const std::string_view cell(line.data() + begin,
                                        (comma == std::string::npos ? line.size() : comma) - begin);
            data.push_back(parse_cell(cell, line_no, row_cols + 1));
            ++row_cols;
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (cols == 0) {
            cols = row_cols;
        } else if (row_cols != cols) {
            throw InputError("row " + std::to_string(line_no) + " has " + std::to_string(row_cols) +
                             " columns, expected " + std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) throw InputError("no data rows in " + path);
    return Series(rows, cols, std::move(data));
}

void write_csv(const Series& series, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw InputError("cannot write output file: " + path);
    char buf[40];
    for (std::size_t r = 0; r < series.rows(); ++r) {
        for (std::size_t c = 0; c < series.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", series.at(r, c));
            if (c > 0) file << ',';
            file << buf;
        }
        file << '\n';
    }
    if (!file.good()) throw InputError("failed writing " + path);
}

} // namespace rankcp::cli
