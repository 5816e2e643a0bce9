#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace briscola {

// Append-only CSV writer with a large in-memory buffer. Values never contain
// commas, so no quoting is performed. Throws std::runtime_error, naming the
// file, on any open or write failure.
class CsvWriter {
 public:
  explicit CsvWriter(std::filesystem::path path, std::size_t buffer_bytes = 1 << 22);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(std::span<const std::string_view> columns);

  CsvWriter& field(std::string_view value);
  CsvWriter& field(std::int64_t value);
  CsvWriter& field(double value, int precision = 10);
  void end_row();

  std::uint64_t rows() const { return rows_; }
  const std::filesystem::path& path() const { return path_; }

  // Flushes and closes; further writes are invalid.
  void close();

 private:
  void separator();
  void flush_buffer();

  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::string buffer_;
  std::size_t capacity_;
  bool row_open_ = false;
  std::uint64_t rows_ = 0;
};

// Streaming line reader returning comma-split fields as views into an
// internal buffer valid until the next call.
class CsvReader {
 public:
  explicit CsvReader(std::filesystem::path path);
  ~CsvReader();

  CsvReader(const CsvReader&) = delete;
  CsvReader& operator=(const CsvReader&) = delete;

  // Reads the header and checks it matches `expected` exactly.
  void expect_header(std::span<const std::string_view> expected);

  bool next(std::vector<std::string_view>& fields);
  std::uint64_t line_number() const { return line_; }
  const std::filesystem::path& path() const { return path_; }

  // Error message prefixed with "path:line: ".
  [[noreturn]] void fail(const std::string& what) const;

 private:
  bool read_line();

  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::string line_buf_;
  std::uint64_t line_ = 0;
};

// Strict integer parse of a whole field; throws via reader.fail on error.
std::int64_t parse_int_field(const CsvReader& reader, std::string_view text);

std::string format_double(double value, int precision = 10);

}  // namespace briscola
