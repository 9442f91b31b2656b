#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlz/dictionary.hpp"

namespace rlz {

inline constexpr uint32_t kDefaultMinLiteral = 4;

enum class FactorizeMode { kInterleaved, kThreeStream };

// Parallel factor streams for one block. In interleaved mode a zero length
// marks a literal whose byte value sits in the offset slot. In three-stream
// mode a zero length marks a literal run of `offset` bytes taken from
// `literals`, and no copy factor is shorter than min_literal.
struct FactorStreams {
  std::vector<uint32_t> offsets;
  std::vector<uint32_t> lengths;
  std::string literals;
  FactorizeMode mode = FactorizeMode::kInterleaved;
  uint32_t min_literal = 1;
  uint32_t block_len = 0;

  bool operator==(const FactorStreams&) const = default;
};

// Greedy left-to-right parse of block against the dictionary index. A match
// shorter than min_literal (three-stream mode only) is coded as literals
// instead; consecutive literal-forced bytes coalesce into one run entry.
// The final factor is truncated at the block end.
FactorStreams factorize_block(const DictionaryIndex& idx, std::string_view block,
                              FactorizeMode mode,
                              uint32_t min_literal = kDefaultMinLiteral);

// Inverse of factorize_block; validates the streams against the dictionary
// and throws CorruptionError on any inconsistency.
std::string defactorize(const Dictionary& dict, const FactorStreams& fs);

}  // namespace rlz
