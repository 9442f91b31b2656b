#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rlz {

// Parses "4096", "16k", "64M", "1G" (binary suffixes, case-insensitive).
uint64_t parse_size(std::string_view text);

// "16384" -> "16 KiB" when exact, else plain byte count.
std::string format_size(uint64_t bytes);

bool is_power_of_two(uint64_t v);

}  // namespace rlz
