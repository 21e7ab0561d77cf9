#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egonet {

/// Shortest representation that parses back to the same double; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_number(double v);
std::optional<double> parse_number(std::string_view text);

/// A set of report files staged in memory and published together.
class ReportBundle {
 public:
  void add(std::string name, std::string content);
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }
  const std::string* find(std::string_view name) const;

  /// Writes every file to a temporary name inside `dir`, then renames them
  /// into place. On failure the temporaries are removed and nothing
  /// pre-existing is touched.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

/// Comma-separated rows; no quoting (identifiers never contain commas).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace egonet
