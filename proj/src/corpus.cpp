#include "rlz/corpus.hpp"

#include <algorithm>
#include <iterator>

#include "rlz/errors.hpp"
#include "rlz/rng.hpp"

namespace rlz {
namespace {

constexpr const char* kSyllables[] = {
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "fa", "fe",
    "fi", "fo", "fu", "ga", "ge", "gi", "go", "gu", "ka", "ke", "ki", "ko",
    "ku", "la", "le", "li", "lo", "lu", "ma", "me", "mi", "mo", "mu", "na",
    "ne", "ni", "no", "nu", "pa", "pe", "pi", "po", "pu", "ra", "re", "ri",
    "ro", "ru", "sa", "se", "si", "so", "su", "ta", "te", "ti", "to", "tu",
    "va", "ve", "vi", "vo",
};
constexpr uint64_t kSyllableCount = std::size(kSyllables);

constexpr uint64_t kMinSegment = 64;
constexpr uint64_t kMaxSegment = 768;

// Web text mixes a closed vocabulary with high-entropy tokens (identifiers,
// numbers, rare words) that small dictionaries cannot cover. Without them,
// every substring of novel text matches some dictionary sample and the
// literal-handling paths never see realistic input.
constexpr uint64_t kRareTokenPercent = 8;
constexpr uint64_t kRareTokenMin = 6;
constexpr uint64_t kRareTokenMax = 16;

}  // namespace

std::string generate_corpus(const CorpusSpec& spec) {
  if (spec.novelty_percent < 0 || spec.novelty_percent > 100)
    throw UsageError("novelty must be a percentage in [0, 100]");
  if (spec.repeat_distance == 0)
    throw UsageError("repeat distance must be positive");

  std::mt19937_64 rng(spec.seed);
  // novelty expressed in hundredths of a percent for an integer draw
  const uint64_t novel_threshold =
      static_cast<uint64_t>(spec.novelty_percent * 100 + 0.5);

  std::string out;
  out.reserve(spec.size);
  while (out.size() < spec.size) {
    uint64_t seg =
        kMinSegment + uniform_below(rng, kMaxSegment - kMinSegment + 1);
    seg = std::min<uint64_t>(seg, spec.size - out.size());
    const bool novel =
        out.empty() || uniform_below(rng, 10000) < novel_threshold;
    if (novel) {
      const size_t end = out.size() + seg;
      while (out.size() < end) {
        if (uniform_below(rng, 100) < kRareTokenPercent) {
          const uint64_t chars =
              kRareTokenMin +
              uniform_below(rng, kRareTokenMax - kRareTokenMin + 1);
          for (uint64_t k = 0; k < chars; ++k)
            out.push_back(static_cast<char>('a' + uniform_below(rng, 26)));
        } else {
          const uint64_t syllables = 2 + uniform_below(rng, 3);
          for (uint64_t k = 0; k < syllables; ++k)
            out += kSyllables[uniform_below(rng, kSyllableCount)];
        }
        out.push_back(' ');
      }
      out.resize(end);  // trim the overshoot of the final word
    } else {
      const uint64_t distance =
          1 + uniform_below(rng,
                            std::min<uint64_t>(out.size(), spec.repeat_distance));
      const size_t src = out.size() - distance;
      for (uint64_t k = 0; k < seg; ++k) out.push_back(out[src + k]);
    }
  }
  return out;
}

}  // namespace rlz
