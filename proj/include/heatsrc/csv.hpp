#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace heatsrc::csv {

/// Shortest decimal that round-trips, '.' separator, independent of locale.
std::string num(double v);
std::string num(long long v);
std::string num(unsigned long long v);
inline std::string num(int v) { return num(static_cast<long long>(v)); }
inline std::string num(unsigned long v) { return num(static_cast<unsigned long long>(v)); }

/// Comma-separated file with a header row; every line ends with '\n'.
class Writer {
 public:
  /// Throws std::runtime_error if the file cannot be opened.
  Writer(const std::filesystem::path& path, std::vector<std::string> header);

  /// Throws std::invalid_argument on a column-count mismatch.
  void row(const std::vector<std::string>& cells);
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a header column; throws std::invalid_argument when absent.
  std::size_t column(const std::string& name) const;
};

/// Numeric table with one header row. Throws std::runtime_error on I/O
/// failure or a cell that is not a number.
Table read(const std::filesystem::path& path);

}  // namespace heatsrc::csv
