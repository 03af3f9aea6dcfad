#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hetgraph/errors.hpp"

namespace hetgraph::csv {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void split(std::string_view line, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

Reader::Reader(const std::filesystem::path& path) : file_(path.string()) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(file_, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  data_ = std::move(buffer).str();
  if (data_.size() >= 3 && data_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;

  std::vector<std::string_view> fields;
  if (!next(fields)) throw IngestError(file_, 0, "missing header row");
  header_.assign(fields.begin(), fields.end());
}

bool Reader::next(std::vector<std::string_view>& fields) {
  while (pos_ < data_.size()) {
    std::size_t end = data_.find('\n', pos_);
    if (end == std::string::npos) end = data_.size();
    std::string_view line(data_.data() + pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (trim(line).empty()) continue;
    split(line, fields);
    return true;
  }
  return false;
}

std::optional<std::size_t> Reader::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

void Reader::fail(const std::string& message) const { throw IngestError(file_, line_, message); }

std::optional<std::uint64_t> parse_u64(std::string_view s) noexcept {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_i64(std::string_view s) noexcept {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace hetgraph::csv
