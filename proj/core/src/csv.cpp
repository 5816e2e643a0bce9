#include "briscola/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <stdexcept>

namespace briscola {
namespace {

std::runtime_error io_error(const std::filesystem::path& path, const char* what) {
  return std::runtime_error(path.string() + ": " + what + ": " + std::strerror(errno));
}

}  // namespace

std::string format_double(double value, int precision) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::filesystem::path path, std::size_t buffer_bytes)
    : path_(std::move(path)), capacity_(buffer_bytes) {
  file_ = std::fopen(path_.c_str(), "wb");
  if (file_ == nullptr) throw io_error(path_, "cannot open for writing");
  buffer_.reserve(capacity_ + 256);
}

CsvWriter::~CsvWriter() {
  if (file_ != nullptr) {
    try {
      close();
    } catch (...) {
      // Destructors must not throw; callers that care call close().
    }
  }
}

void CsvWriter::header(std::span<const std::string_view> columns) {
  for (auto c : columns) field(c);
  end_row();
  --rows_;
}

void CsvWriter::separator() {
  if (row_open_) buffer_.push_back(',');
  row_open_ = true;
}

CsvWriter& CsvWriter::field(std::string_view value) {
  separator();
  buffer_.append(value);
  return *this;
}

CsvWriter& CsvWriter::field(std::int64_t value) {
  separator();
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  buffer_.append(buf, res.ptr);
  return *this;
}

CsvWriter& CsvWriter::field(double value, int precision) {
  separator();
  buffer_.append(format_double(value, precision));
  return *this;
}

void CsvWriter::end_row() {
  buffer_.push_back('\n');
  row_open_ = false;
  ++rows_;
  if (buffer_.size() >= capacity_) flush_buffer();
}

void CsvWriter::flush_buffer() {
  if (buffer_.empty()) return;
  if (std::fwrite(buffer_.data(), 1, buffer_.size(), file_) != buffer_.size()) {
    throw io_error(path_, "write failed");
  }
  buffer_.clear();
}

void CsvWriter::close() {
  if (file_ == nullptr) return;
  std::FILE* f = file_;
  try {
    flush_buffer();
  } catch (...) {
    std::fclose(f);
    file_ = nullptr;
    throw;
  }
  file_ = nullptr;
  if (std::fclose(f) != 0) throw io_error(path_, "close failed");
}

CsvReader::CsvReader(std::filesystem::path path) : path_(std::move(path)) {
  file_ = std::fopen(path_.c_str(), "rb");
  if (file_ == nullptr) throw io_error(path_, "cannot open for reading");
  static constexpr std::size_t kReadBuffer = 1 << 20;
  std::setvbuf(file_, nullptr, _IOFBF, kReadBuffer);
}

CsvReader::~CsvReader() {
  if (file_ != nullptr) std::fclose(file_);
}

bool CsvReader::read_line() {
  line_buf_.clear();
  char chunk[512];
  while (std::fgets(chunk, sizeof chunk, file_) != nullptr) {
    const std::size_t len = std::strlen(chunk);
    line_buf_.append(chunk, len);
    if (len > 0 && chunk[len - 1] == '\n') break;
  }
  if (line_buf_.empty()) {
    if (std::ferror(file_)) throw io_error(path_, "read failed");
    return false;
  }
  if (line_buf_.back() == '\n') line_buf_.pop_back();
  if (!line_buf_.empty() && line_buf_.back() == '\r') line_buf_.pop_back();
  ++line_;
  return true;
}

bool CsvReader::next(std::vector<std::string_view>& fields) {
  fields.clear();
  if (!read_line()) return false;
  std::string_view rest(line_buf_);
  for (;;) {
    const auto comma = rest.find(',');
    fields.push_back(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return true;
}

void CsvReader::expect_header(std::span<const std::string_view> expected) {
  std::vector<std::string_view> fields;
  if (!next(fields)) fail("missing header row");
  bool ok = fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == expected[i];
  if (!ok) fail("unexpected header '" + line_buf_ + "'");
}

void CsvReader::fail(const std::string& what) const {
  throw std::runtime_error(path_.string() + ":" + std::to_string(line_) + ": " + what);
}

std::int64_t parse_int_field(const CsvReader& reader, std::string_view text) {
  std::int64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    reader.fail("invalid integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace briscola
