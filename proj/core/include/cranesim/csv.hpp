// Minimal RFC 4180 CSV writing and reading. Doubles are written with 17
// significant digits so a write/read cycle reproduces them exactly.
#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cranesim::csv {

std::string format_double(double v);
std::string quote(std::string_view field);

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<std::string_view> names);
  void header(const std::vector<std::string>& names);
  void fields(const std::vector<std::string>& values);

  template <typename... Ts>
  void row(const Ts&... values) {
    fields({to_field(values)...});
  }

 private:
  static std::string to_field(double v) { return format_double(v); }
  static std::string to_field(long long v) { return std::to_string(v); }
  static std::string to_field(const std::string& v) { return v; }
  static std::string to_field(const char* v) { return v; }

  std::ostream& os_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range when missing.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

/// Parses a CSV document whose first record is the header. Throws
/// std::runtime_error on malformed quoting or ragged rows.
Table parse(std::istream& is);

}  // namespace cranesim::csv
