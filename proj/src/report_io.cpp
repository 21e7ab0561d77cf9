#include "report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace egonet {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  return fmt::format("{}", v);
}

std::optional<double> parse_number(std::string_view text) {
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (text == "nan") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

void ReportBundle::add(std::string name, std::string content) {
  files_.emplace_back(std::move(name), std::move(content));
}

const std::string* ReportBundle::find(std::string_view name) const {
  for (const auto& [n, content] : files_)
    if (n == name) return &content;
  return nullptr;
}

void ReportBundle::commit(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  auto cleanup = [&] {
    std::error_code ignored;
    for (const auto& p : staged) fs::remove(p, ignored);
  };
  try {
    for (const auto& [name, content] : files_) {
      const fs::path tmp = dir / (name + ".tmp");
      staged.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    for (std::size_t i = 0; i < files_.size(); ++i) fs::rename(staged[i], dir / files_[i].first);
  } catch (...) {
    cleanup();
    throw;
  }
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
      const auto pos = line.find(',', begin);
      fields.push_back(line.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin));
      if (pos == std::string::npos) break;
      begin = pos + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace egonet
