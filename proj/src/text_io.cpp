#include "clausecut/text_io.h"

#include <cctype>
#include <charconv>
#include <system_error>

#include "clausecut/errors.h"

namespace clausecut {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::logic_error("format_double: buffer too small");
  return std::string(buffer, end);
}

double parse_double(std::string_view text) {
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw InputError("not a number: '" + std::string(text) + "'");
  return value;
}

long long parse_integer(std::string_view text) {
  long long value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw InputError("not an integer: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(std::string_view text, char separator) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      return parts;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += separator;
    out += parts[i];
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

RecordReader::RecordReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {}

bool RecordReader::next(std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fields = split(line, '\t');
    return true;
  }
  return false;
}

std::vector<std::string> RecordReader::expect(std::string_view key, int arity) {
  std::vector<std::string> fields;
  if (!next(fields)) fail("unexpected end of file, expected '" + std::string(key) + "'");
  if (fields[0] != key) fail("expected '" + std::string(key) + "', found '" + fields[0] + "'");
  int have = static_cast<int>(fields.size()) - 1;
  if ((arity >= 0 && have != arity) || (arity < 0 && have < -arity))
    fail("'" + std::string(key) + "' has " + std::to_string(have) + " fields");
  fields.erase(fields.begin());
  return fields;
}

void RecordReader::expect_header(std::string_view header) {
  std::vector<std::string> fields;
  if (!next(fields) || fields.size() != 1 || fields[0] != header)
    fail("missing version header '" + std::string(header) + "'");
}

void RecordReader::fail(const std::string& message) const {
  throw InputError(source_ + ":" + std::to_string(line_) + ": " + message);
}

double RecordReader::number(const std::string& field) const {
  try {
    return parse_double(field);
  } catch (const InputError& e) {
    fail(e.what());
  }
}

long long RecordReader::integer(const std::string& field) const {
  try {
    return parse_integer(field);
  } catch (const InputError& e) {
    fail(e.what());
  }
}

}  // namespace clausecut
