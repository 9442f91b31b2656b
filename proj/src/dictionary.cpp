#include "rlz/dictionary.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>

#include "rlz/errors.hpp"

namespace rlz {
namespace {

// SA-IS induced sorting (Nong, Zhang, Chan). s[0..n-1] over alphabet 0..k-1,
// s[n-1] the unique smallest symbol (sentinel). Fills sa with the suffix order.
void sais(const int32_t* s, int32_t n, int32_t k, int32_t* sa) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<uint8_t> stype(n);  // 1 = S-type suffix
  stype[n - 1] = 1;
  for (int32_t i = n - 2; i >= 0; --i)
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  auto is_lms = [&](int32_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<int32_t> count(k, 0), head(k), tail(k);
  for (int32_t i = 0; i < n; ++i) ++count[s[i]];
  auto reset_heads = [&] {
    int32_t sum = 0;
    for (int32_t c = 0; c < k; ++c) {
      head[c] = sum;
      sum += count[c];
    }
  };
  auto reset_tails = [&] {
    int32_t sum = 0;
    for (int32_t c = 0; c < k; ++c) {
      sum += count[c];
      tail[c] = sum;
    }
  };

  // seed LMS suffixes at bucket tails, then induce L then S suffixes
  auto induce = [&](auto&& place_lms) {
    std::fill(sa, sa + n, -1);
    reset_tails();
    place_lms();
    reset_heads();
    for (int32_t i = 0; i < n; ++i) {
      int32_t j = sa[i] - 1;
      if (j >= 0 && !stype[j]) sa[head[s[j]]++] = j;
    }
    reset_tails();
    for (int32_t i = n - 1; i >= 0; --i) {
      int32_t j = sa[i] - 1;
      if (j >= 0 && stype[j]) sa[--tail[s[j]]] = j;
    }
  };

  std::vector<int32_t> lms;  // LMS positions in text order
  for (int32_t i = 1; i < n; ++i)
    if (is_lms(i)) lms.push_back(i);
  const int32_t m = static_cast<int32_t>(lms.size());

  induce([&] {
    for (int32_t i = n - 1; i > 0; --i)
      if (is_lms(i)) sa[--tail[s[i]]] = i;
  });

  // name LMS substrings in their sorted order; adjacent LMS positions are at
  // least two apart, so names fit an array indexed by position / 2
  std::vector<int32_t> names(n / 2 + 1, -1);
  int32_t name_count = 0, prev = -1;
  for (int32_t i = 0; i < n; ++i) {
    int32_t pos = sa[i];
    if (!is_lms(pos)) continue;
    bool differs = prev < 0;
    for (int32_t d = 0; !differs; ++d) {
      if (s[pos + d] != s[prev + d]) {
        differs = true;
      } else if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
        differs = !(is_lms(pos + d) && is_lms(prev + d));
        break;
      }
    }
    if (differs) {
      ++name_count;
      prev = pos;
    }
    names[pos / 2] = name_count - 1;
  }

  std::vector<int32_t> lms_sorted(m);
  if (name_count < m) {
    std::vector<int32_t> s1(m), sa1(m);
    for (int32_t i = 0; i < m; ++i) s1[i] = names[lms[i] / 2];
    sais(s1.data(), m, name_count, sa1.data());
    for (int32_t i = 0; i < m; ++i) lms_sorted[i] = lms[sa1[i]];
  } else {
    for (int32_t i = 0; i < m; ++i) lms_sorted[names[lms[i] / 2]] = lms[i];
  }

  induce([&] {
    for (int32_t i = m - 1; i >= 0; --i) sa[--tail[s[lms_sorted[i]]]] = lms_sorted[i];
  });
}

}  // namespace

SampleLayout sample_layout(uint64_t source_length, uint64_t dict_size,
                           uint32_t sample_size) {
  if (dict_size == 0 || sample_size == 0)
    throw UsageError("dictionary size and sample size must be positive");
  if (dict_size % sample_size != 0)
    throw UsageError("sample size must divide dictionary size exactly");
  SampleLayout layout;
  layout.sample_count = dict_size / sample_size;
  layout.interval = source_length / layout.sample_count;
  return layout;
}

Dictionary build_dictionary(const ByteSource& corpus, uint64_t dict_size,
                            uint32_t sample_size) {
  const uint64_t source_length = corpus.size();
  SampleLayout layout = sample_layout(source_length, dict_size, sample_size);
  if (dict_size > source_length)
    log_warning("dictionary size exceeds corpus length; padding with zeros");

  Dictionary dict;
  dict.sample_size = sample_size;
  dict.source_length = source_length;
  dict.sample_interval = layout.interval;
  dict.data.assign(dict_size, '\0');
  for (uint64_t i = 0; i < layout.sample_count; ++i) {
    uint64_t start = i * layout.interval;
    if (start >= source_length) continue;
    size_t take = static_cast<size_t>(
        std::min<uint64_t>(sample_size, source_length - start));
    corpus.read_at(start, dict.data.data() + i * sample_size, take);
  }
  return dict;
}

std::vector<int32_t> build_suffix_array(std::string_view text) {
  if (text.empty()) return {};
  if (text.size() >= static_cast<size_t>(std::numeric_limits<int32_t>::max()))
    throw UsageError("text too large to index (2 GiB limit)");
  const int32_t n = static_cast<int32_t>(text.size());
  std::vector<int32_t> s(n + 1);
  for (int32_t i = 0; i < n; ++i)
    s[i] = static_cast<uint8_t>(text[i]) + 1;
  s[n] = 0;
  std::vector<int32_t> sa(n + 1);
  sais(s.data(), n + 1, 257, sa.data());
  return {sa.begin() + 1, sa.end()};  // drop the sentinel suffix
}

DictionaryIndex::DictionaryIndex(const Dictionary& dict) : dict_(&dict) {
  if (dict.empty()) throw UsageError("cannot index an empty dictionary");
  sa_ = build_suffix_array(dict.data);

  const size_t nb = (sa_.size() + kRmqBlock - 1) / kRmqBlock;
  block_min_.resize(nb, std::numeric_limits<int32_t>::max());
  for (size_t i = 0; i < sa_.size(); ++i)
    block_min_[i / kRmqBlock] = std::min(block_min_[i / kRmqBlock], sa_[i]);

  sparse_levels_ = std::bit_width(nb);
  sparse_.resize(sparse_levels_ * nb);
  std::copy(block_min_.begin(), block_min_.end(), sparse_.begin());
  for (size_t l = 1; l < sparse_levels_; ++l) {
    const size_t half = size_t{1} << (l - 1);
    for (size_t b = 0; b < nb; ++b) {
      int32_t v = sparse_[(l - 1) * nb + b];
      if (b + half < nb) v = std::min(v, sparse_[(l - 1) * nb + b + half]);
      sparse_[l * nb + b] = v;
    }
  }
}

int32_t DictionaryIndex::range_min_value(size_t lo, size_t hi) const {
  const size_t ba = lo / kRmqBlock, bb = hi / kRmqBlock;
  int32_t best = std::numeric_limits<int32_t>::max();
  if (ba == bb) {
    for (size_t i = lo; i <= hi; ++i) best = std::min(best, sa_[i]);
    return best;
  }
  for (size_t i = lo; i < (ba + 1) * kRmqBlock; ++i) best = std::min(best, sa_[i]);
  for (size_t i = bb * kRmqBlock; i <= hi; ++i) best = std::min(best, sa_[i]);
  if (ba + 1 < bb) {
    const size_t l = ba + 1, r = bb - 1, nb = block_min_.size();
    const size_t level = std::bit_width(r - l + 1) - 1;
    best = std::min(best, sparse_[level * nb + l]);
    best = std::min(best, sparse_[level * nb + r + 1 - (size_t{1} << level)]);
  }
  return best;
}

DictionaryIndex::Match DictionaryIndex::longest_match(std::string_view s) const {
  if (s.empty()) return {};
  const char* d = dict_->data.data();
  const size_t dn = dict_->data.size();
  const char* p = s.data();
  const size_t pn = s.size();

  auto common_prefix = [&](size_t pos) {
    const size_t limit = std::min(dn - pos, pn);
    size_t i = 0;
    while (i < limit && d[pos + i] == p[i]) ++i;
    return i;
  };
  // suffix-vs-pattern order: byte-wise unsigned, shorter string first
  auto suffix_less = [&](size_t pos) {
    const size_t limit = std::min(dn - pos, pn);
    const int c = std::memcmp(d + pos, p, limit);
    return c != 0 ? c < 0 : dn - pos < pn;
  };

  size_t lo = 0, hi = sa_.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (suffix_less(static_cast<size_t>(sa_[mid]))) lo = mid + 1;
    else hi = mid;
  }
  const size_t pivot = lo;

  // the longest match is adjacent to the pattern's insertion rank
  size_t len = 0;
  if (pivot > 0) len = common_prefix(static_cast<size_t>(sa_[pivot - 1]));
  if (pivot < sa_.size())
    len = std::max(len, common_prefix(static_cast<size_t>(sa_[pivot])));
  if (len == 0) return {0, 0};

  // -1 below the matched prefix, 0 carries it, +1 above
  auto prefix_cmp = [&](size_t rank) {
    const size_t pos = static_cast<size_t>(sa_[rank]);
    const size_t limit = std::min(dn - pos, len);
    const int c = std::memcmp(d + pos, p, limit);
    if (c != 0) return c < 0 ? -1 : 1;
    return limit < len ? -1 : 0;
  };

  // gallop outward from the pivot: the range carrying the full prefix is
  // usually a handful of entries, far smaller than the whole array
  const size_t anchor =
      pivot < sa_.size() && prefix_cmp(pivot) == 0 ? pivot : pivot - 1;
  size_t first = anchor;
  for (size_t step = 1; first > 0;) {
    const size_t probe = first > step ? first - step : 0;
    if (prefix_cmp(probe) == 0) {
      first = probe;
      step <<= 1;
    } else {
      size_t a = probe + 1, b = first;
      while (a < b) {
        const size_t mid = a + (b - a) / 2;
        if (prefix_cmp(mid) < 0) a = mid + 1;
        else b = mid;
      }
      first = a;
      break;
    }
  }
  size_t last = anchor;
  for (size_t step = 1; last + 1 < sa_.size();) {
    const size_t probe =
        last + step < sa_.size() ? last + step : sa_.size() - 1;
    if (prefix_cmp(probe) == 0) {
      last = probe;
      step <<= 1;
    } else {
      size_t a = last + 1, b = probe;
      while (a < b) {
        const size_t mid = a + (b - a) / 2;
        if (prefix_cmp(mid) == 0) a = mid + 1;
        else b = mid;
      }
      last = a - 1;
      break;
    }
  }

  return {static_cast<uint32_t>(range_min_value(first, last)),
          static_cast<uint32_t>(len)};
}

}  // namespace rlz
