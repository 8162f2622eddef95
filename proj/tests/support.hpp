#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "heatsrc/log.hpp"

namespace testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture()
      : old_(heatsrc::log::set_warning_sink([this](std::string_view m) { seen.emplace_back(m); })) {}
  ~WarningCapture() { heatsrc::log::set_warning_sink(std::move(old_)); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> seen;

 private:
  heatsrc::log::Sink old_;
};

}  // namespace testing
