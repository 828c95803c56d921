#include "nlosbench/csv.hpp"

#include <charconv>
#include <istream>
#include <system_error>

#include "nlosbench/error.hpp"

namespace nlosbench::csv {

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

[[noreturn]] void bad_field(std::string_view text, std::string_view what) {
  throw Error("cannot parse " + std::string(what) + " from '" +
              std::string(text) + "'");
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) bad_field(text, what);
  return value;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  return parse_number<double>(text, what);
}

std::int64_t parse_i64(std::string_view text, std::string_view what) {
  return parse_number<std::int64_t>(text, what);
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  return parse_number<std::uint64_t>(text, what);
}

std::size_t for_each_row(
    std::istream& in, std::string_view header,
    const std::function<void(std::size_t line,
                             const std::vector<std::string>& fields)>&
        row_fn) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) {
        throw MalformedRow(line_no, "expected header '" + std::string(header) +
                                        "', got '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    row_fn(line_no, split_row(line));
    ++rows;
  }
  if (!saw_header) throw MalformedRow(1, "missing header row");
  return rows;
}

}  // namespace nlosbench::csv
