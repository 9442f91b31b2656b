#include "rlz/sizes.hpp"

#include <cctype>
#include <cstdio>

#include "rlz/errors.hpp"

namespace rlz {

uint64_t parse_size(std::string_view text) {
  if (text.empty()) throw UsageError("empty size");
  uint64_t value = 0;
  size_t i = 0;
  if (!std::isdigit(static_cast<unsigned char>(text[0]))) {
    throw UsageError("bad size '" + std::string(text) + "'");
  }
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    uint64_t d = static_cast<uint64_t>(text[i] - '0');
    if (value > (UINT64_MAX - d) / 10) throw UsageError("size overflow");
    value = value * 10 + d;
  }
  uint64_t mult = 1;
  if (i < text.size()) {
    switch (std::tolower(static_cast<unsigned char>(text[i]))) {
      case 'k': mult = 1ull << 10; break;
      case 'm': mult = 1ull << 20; break;
      case 'g': mult = 1ull << 30; break;
      default: throw UsageError("bad size suffix in '" + std::string(text) + "'");
    }
    ++i;
    // tolerate the long forms "KiB"/"MiB"/"GiB" and a trailing "b"
    std::string_view rest = text.substr(i);
    if (!rest.empty() && !(rest == "b" || rest == "B" || rest == "ib" ||
                           rest == "iB" || rest == "IB")) {
      throw UsageError("bad size suffix in '" + std::string(text) + "'");
    }
  }
  if (mult > 1 && value > UINT64_MAX / mult) throw UsageError("size overflow");
  return value * mult;
}

std::string format_size(uint64_t bytes) {
  static const struct { uint64_t unit; const char* name; } kUnits[] = {
      {1ull << 30, "GiB"}, {1ull << 20, "MiB"}, {1ull << 10, "KiB"}};
  for (const auto& u : kUnits) {
    if (bytes >= u.unit && bytes % u.unit == 0) {
      return std::to_string(bytes / u.unit) + " " + u.name;
    }
  }
  return std::to_string(bytes) + " B";
}

bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace rlz
