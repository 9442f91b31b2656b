#include "rlz/factorize.hpp"

#include <algorithm>

#include "rlz/errors.hpp"

namespace rlz {

FactorStreams factorize_block(const DictionaryIndex& idx, std::string_view block,
                              FactorizeMode mode, uint32_t min_literal) {
  if (block.empty()) throw UsageError("cannot factorize an empty block");
  if (mode == FactorizeMode::kThreeStream && min_literal == 0)
    throw UsageError("min_literal must be at least 1");

  FactorStreams fs;
  fs.mode = mode;
  fs.min_literal = mode == FactorizeMode::kThreeStream ? min_literal : 1;
  fs.block_len = static_cast<uint32_t>(block.size());

  uint32_t run = 0;
  auto flush_run = [&] {
    if (run == 0) return;
    fs.offsets.push_back(run);
    fs.lengths.push_back(0);
    run = 0;
  };

  size_t pos = 0;
  while (pos < block.size()) {
    const auto m = idx.longest_match(block.substr(pos));
    if (mode == FactorizeMode::kInterleaved) {
      if (m.length == 0) {
        fs.offsets.push_back(static_cast<uint8_t>(block[pos]));
        fs.lengths.push_back(0);
        pos += 1;
      } else {
        fs.offsets.push_back(m.offset);
        fs.lengths.push_back(m.length);
        pos += m.length;
      }
    } else if (m.length < min_literal) {
      // short match: the entire factor becomes literals
      const size_t take = std::max<size_t>(1, m.length);
      fs.literals.append(block.substr(pos, take));
      run += static_cast<uint32_t>(take);
      pos += take;
    } else {
      flush_run();
      fs.offsets.push_back(m.offset);
      fs.lengths.push_back(m.length);
      pos += m.length;
    }
  }
  flush_run();
  return fs;
}

std::string defactorize(const Dictionary& dict, const FactorStreams& fs) {
  if (fs.offsets.size() != fs.lengths.size())
    throw CorruptionError("offset and length stream sizes disagree");

  std::string out;
  out.reserve(fs.block_len);
  size_t lit = 0;
  for (size_t i = 0; i < fs.offsets.size(); ++i) {
    const uint32_t off = fs.offsets[i];
    const uint32_t len = fs.lengths[i];
    if (len > 0) {
      if (static_cast<uint64_t>(off) + len > dict.data.size())
        throw CorruptionError("factor reaches past the dictionary end");
      out.append(dict.data, off, len);
    } else if (fs.mode == FactorizeMode::kInterleaved) {
      if (off > 255) throw CorruptionError("literal byte value out of range");
      out.push_back(static_cast<char>(off));
    } else {
      if (lit + off > fs.literals.size())
        throw CorruptionError("literal stream exhausted");
      out.append(fs.literals, lit, off);
      lit += off;
    }
  }
  if (fs.mode == FactorizeMode::kThreeStream && lit != fs.literals.size())
    throw CorruptionError("unconsumed literal bytes");
  if (out.size() != fs.block_len)
    throw CorruptionError("reconstructed length disagrees with block_len");
  return out;
}

}  // namespace rlz
