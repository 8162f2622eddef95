#include "heatsrc/config.hpp"

#include <fstream>

namespace heatsrc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Config Config::parse(std::istream& in, std::string_view source) {
  Config cfg;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw ConfigError(std::string(source) + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail("unterminated section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (section.empty()) fail("empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) fail("empty key");
    auto& slot = cfg.sections_[section];
    if (slot.count(key)) fail("duplicate key '" + key + "'");
    slot[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse(in, path.string());
}

std::map<std::string, std::string> Config::resolved(std::string_view section) const {
  std::map<std::string, std::string> out;
  if (auto it = sections_.find(std::string_view{}); it != sections_.end()) out = it->second;
  if (auto it = sections_.find(section); it != sections_.end())
    for (const auto& [k, v] : it->second) out[k] = v;
  return out;
}

bool Config::has_section(std::string_view section) const {
  return sections_.find(section) != sections_.end();
}

}  // namespace heatsrc
