#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlz/bytes.hpp"

namespace rlz {

struct SampleLayout {
  uint64_t sample_count;
  uint64_t interval;  // distance between consecutive sample starts in the corpus
};

// sample_count = dict_size / sample_size, interval = source_length / sample_count.
SampleLayout sample_layout(uint64_t source_length, uint64_t dict_size,
                           uint32_t sample_size);

// Fixed-interval sampled dictionary. Immutable once built.
struct Dictionary {
  std::string data;
  uint32_t sample_size = 0;
  uint64_t source_length = 0;
  uint64_t sample_interval = 0;

  bool empty() const { return data.empty(); }
  uint64_t sample_count() const {
    return sample_size ? data.size() / sample_size : 0;
  }
};

// Concatenates dict_size/sample_size samples taken every sample_layout().interval
// bytes of the corpus; a sample running past end-of-corpus is zero padded.
// Warns (and still succeeds) when dict_size exceeds the corpus length.
Dictionary build_dictionary(const ByteSource& corpus, uint64_t dict_size,
                            uint32_t sample_size);

// Suffix array of text, byte-wise unsigned order, shorter suffix first on ties.
std::vector<int32_t> build_suffix_array(std::string_view text);

// Suffix-array index over a Dictionary supporting longest-prefix-match queries.
// The Dictionary must outlive the index. Immutable; concurrent queries are fine.
class DictionaryIndex {
 public:
  struct Match {
    uint32_t offset = 0;
    uint32_t length = 0;
  };

  explicit DictionaryIndex(const Dictionary& dict);

  const Dictionary& dict() const { return *dict_; }
  const std::vector<int32_t>& suffix_order() const { return sa_; }

  // Longest prefix of s occurring as a substring of the dictionary; ties on
  // length resolve to the smallest dictionary offset. No occurrence of even
  // the first byte yields {0, 0}.
  Match longest_match(std::string_view s) const;

 private:
  // smallest sa_ value over the inclusive rank range [lo, hi]
  int32_t range_min_value(size_t lo, size_t hi) const;

  static constexpr size_t kRmqBlock = 64;

  const Dictionary* dict_;
  std::vector<int32_t> sa_;
  // two-level range-minimum structure for the smallest-offset tie-break
  std::vector<int32_t> block_min_;
  std::vector<int32_t> sparse_;  // sparse_levels_ rows of block_min_.size()
  size_t sparse_levels_ = 0;
};

}  // namespace rlz
