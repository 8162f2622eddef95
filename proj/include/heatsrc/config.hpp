#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heatsrc {

/// Malformed config text. Not a numerical error; the CLI treats it as usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat config:
//
//   # comment
//   seed = 7
//   [table1]
//   seeds = 100
//
// Keys before the first section header are global. A key under [name]
// applies to the subcommand `name` and shadows the global value.
class Config {
 public:
  static Config parse(std::istream& in, std::string_view source = "<config>");
  static Config load(const std::filesystem::path& path);

  /// Global keys overlaid with those of `section`.
  std::map<std::string, std::string> resolved(std::string_view section) const;
  bool has_section(std::string_view section) const;

 private:
  std::map<std::string, std::map<std::string, std::string>, std::less<>> sections_;
};

}  // namespace heatsrc
