#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nlosbench::csv {

/// Splits one CSV row on commas. Fields in this project carry no quoting
/// or embedded separators, so a plain split is the whole grammar.
std::vector<std::string> split_row(std::string_view line);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Field parsers. `what` names the field in the thrown message.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_i64(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);

/// Reads all rows, checks the header matches `header` exactly, and hands
/// each data row (split into fields, 1-based line number) to `row_fn`.
/// Blank lines are skipped. Returns the number of data rows.
std::size_t for_each_row(
    std::istream& in, std::string_view header,
    const std::function<void(std::size_t line,
                             const std::vector<std::string>& fields)>& row_fn);

}  // namespace nlosbench::csv
