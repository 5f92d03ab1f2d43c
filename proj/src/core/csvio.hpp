#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace siopo {

// Full-precision, locale-independent float formatting (17 significant
// digits) used for every CSV payload so outputs are byte-stable.
std::string format_full(double value);
// Display rounding for report tables.
std::string format_display(double value, int digits = 6);

std::uint64_t fnv1a_hash(const std::string& text);

class CsvWriter {
 public:
  // `comment` goes on the first line after a '#'; the header row follows.
  CsvWriter(std::string comment, std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t columns_;
};

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace siopo
