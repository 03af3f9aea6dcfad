#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hetgraph::csv {

// Line-oriented reader for comma-separated numeric tables: no quoting, first
// row is the header, blank lines are skipped.
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::string& file() const noexcept { return file_; }
  /// 1-based line of the row returned by the last next().
  std::uint64_t line() const noexcept { return line_; }

  /// Fills `fields` with the next row; views stay valid for the reader's life.
  bool next(std::vector<std::string_view>& fields);

  /// Column position of `name` in the header, if present.
  std::optional<std::size_t> column(std::string_view name) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::string file_;
  std::string data_;
  std::size_t pos_ = 0;
  std::uint64_t line_ = 0;
  std::vector<std::string> header_;
};

void split(std::string_view line, std::vector<std::string_view>& fields);
std::string_view trim(std::string_view s) noexcept;

std::optional<std::uint64_t> parse_u64(std::string_view s) noexcept;
std::optional<std::int64_t> parse_i64(std::string_view s) noexcept;
std::optional<double> parse_double(std::string_view s);

}  // namespace hetgraph::csv
