#include "clbf/io.hpp"

#include <cstdio>
#include <sstream>

#include "clbf/errors.hpp"

namespace clbf {

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DecodeError("expected key=value, got: " + line);
    out[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return out;
}

void CsvWriter::config_comment(const std::vector<std::pair<std::string, std::string>>& kv) {
  os_ << "# config:";
  for (const auto& [k, v] : kv) os_ << ' ' << k << '=' << v;
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << quote(fields[i]);
  }
  os_ << '\n';
}

std::string CsvWriter::quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace clbf
