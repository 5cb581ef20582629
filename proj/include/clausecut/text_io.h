#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace clausecut {

// Shortest decimal form that reads back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<std::string> split(std::string_view text, char separator);
std::string join(const std::vector<std::string>& parts, std::string_view separator);
std::string to_lower(std::string_view text);

// Line-oriented reader for the tab-separated model files.  Every error it
// raises carries the source name and line number.
class RecordReader {
 public:
  RecordReader(std::istream& in, std::string source);

  // Next non-empty line split on tabs; false at end of input.
  bool next(std::vector<std::string>& fields);
  // Next record, which must start with `key` and have `arity` further fields
  // (or at least that many when arity is negative: -n means >= n).
  std::vector<std::string> expect(std::string_view key, int arity);
  void expect_header(std::string_view header);

  [[noreturn]] void fail(const std::string& message) const;
  double number(const std::string& field) const;
  long long integer(const std::string& field) const;

 private:
  std::istream& in_;
  std::string source_;
  int line_ = 0;
};

}  // namespace clausecut
