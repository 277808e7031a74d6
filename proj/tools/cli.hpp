#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankcp/segmentation.hpp"
#include "rankcp/series.hpp"

namespace rankcp::cli {

/// Bad flags or flag combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable, unwritable or malformed data; maps to exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a numeric CSV into a series: rows become time-ordered
/// observations, columns dimensions. Ragged rows, non-numeric cells and
/// empty files raise InputError naming the offending row/column.
Series load_csv(const std::string& path, bool has_header);

void write_csv(const Series& series, const std::string& path);

struct RunReport {
    std::size_t t = 0;
    std::size_t d = 0;
    std::string source;
    std::string method; // "divisive" or "agglomerative"
    std::size_t block = 0; // agglomerative initial block, 0 otherwise
    ChangePointResult result;
    // Whole seconds go into the JSON report so output stays byte-stable
    // for a fixed (input, config, seed); the precise value is printed to
    // stderr instead.
    long long elapsed_whole_seconds = 0;
    double elapsed_precise = 0.0;
};

/// Report object with fixed keys t, d, method, alpha, variant,
/// change_points, p_values, statistics, config, elapsed_seconds, in
/// that order. Change point indices are 0-based: index i means the
/// segments [0, i) and [i, T) differ.
std::string render_json(const RunReport& report);
void emit_json(const RunReport& report, const std::string& path);

/// SVG 1.1 document, one stacked 1000x200 panel per dimension (at most
/// 8, with a notice beyond that), a polyline of values per panel and a
/// full-height green marker line per change point per panel.
std::string render_svg(const Series& series, const std::vector<std::size_t>& change_points);
void emit_svg(const Series& series, const std::vector<std::size_t>& change_points,
              const std::string& path);

/// The whole command-line program. Returns the process exit code:
/// 0 success, 1 input error, 2 usage error.
int run(int argc, const char* const* argv);

} // namespace rankcp::cli
