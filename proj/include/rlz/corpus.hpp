#pragma once

#include <cstdint>
#include <string>

namespace rlz {

// Synthetic repetitive text: word-like novel segments interleaved with copies
// of earlier material, both 64..768 bytes long. novelty_percent is the chance
// a segment is novel; repeats reach back at most repeat_distance bytes.
struct CorpusSpec {
  uint64_t size = 0;
  uint64_t seed = 0;
  double novelty_percent = 10.0;
  uint64_t repeat_distance = 1 << 20;
};

std::string generate_corpus(const CorpusSpec& spec);

}  // namespace rlz
