#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "clbf/bits.hpp"

namespace clbf {

// key=value scenario files: one pair per line, '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// CSV with a `# config:` comment header and RFC-4180-style quoting.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void config_comment(const std::vector<std::pair<std::string, std::string>>& kv);
  void row(const std::vector<std::string>& fields);

  static std::string quote(const std::string& field);
  static std::string format(double v);

 private:
  std::ostream& os_;
};

}  // namespace clbf
