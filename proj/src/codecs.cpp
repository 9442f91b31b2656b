#include "rlz/codecs.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <unordered_map>

#include "rlz/errors.hpp"

namespace rlz {
namespace {

struct SchemeEntry {
  SchemeId id;
  const char* name;
};

constexpr SchemeEntry kSchemes[] = {
    {SchemeId::kCopy, "COPY"},
    {SchemeId::kDefBlock, "DEF_BLOCK"},
    {SchemeId::kFastlzBlock, "FASTLZ_BLOCK"},
    {SchemeId::kRlzUv, "RLZ_UV"},
    {SchemeId::kRlzPv, "RLZ_PV"},
    {SchemeId::kRlzZz, "RLZ_ZZ"},
    {SchemeId::kRlzZzPrimed, "RLZ_ZZ_PRIMED"},
    {SchemeId::kRlzZzz, "RLZ_ZZZ"},
    {SchemeId::kDefBlockPrimed, "DEF_BLOCK_PRIMED"},
};

std::string serialize_u32_stream(const std::vector<uint32_t>& values) {
  std::string out;
  out.reserve(values.size() * 4);
  for (uint32_t v : values) append_u32le(out, v);
  return out;
}

std::vector<uint32_t> parse_u32_stream(std::string_view bytes, size_t count) {
  if (bytes.size() != count * 4)
    throw CorruptionError("u32 stream length mismatch");
  std::vector<uint32_t> out(count);
  for (size_t i = 0; i < count; ++i) out[i] = read_u32le(bytes, i * 4);
  return out;
}

// most frequent values last so the 32 KiB priming window keeps them
std::string rank_and_serialize(const std::unordered_map<uint32_t, uint64_t>& freq) {
  std::vector<std::pair<uint32_t, uint64_t>> items(freq.begin(), freq.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const size_t keep = std::min(items.size(), kPrimeBytes / 4);
  std::string out(kPrimeBytes - keep * 4, '\0');
  for (size_t r = keep; r-- > 0;) append_u32le(out, items[r].first);
  return out;
}

std::string_view sub(std::string_view p, size_t pos, size_t len) {
  if (pos + len > p.size()) throw CorruptionError("payload truncated");
  return p.substr(pos, len);
}

uint32_t compute_block_len(const FactorStreams& fs) {
  uint64_t total = 0;
  for (size_t i = 0; i < fs.lengths.size(); ++i) {
    if (fs.lengths[i] > 0)
      total += fs.lengths[i];
    else
      total += fs.mode == FactorizeMode::kInterleaved ? 1 : fs.offsets[i];
  }
  if (total > std::numeric_limits<uint32_t>::max())
    throw CorruptionError("implausible block length");
  return static_cast<uint32_t>(total);
}

}  // namespace

const char* scheme_name(SchemeId id) {
  for (const auto& e : kSchemes)
    if (e.id == id) return e.name;
  return "UNKNOWN";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& e : kSchemes)
    if (upper == e.name) return e.id;
  return std::nullopt;
}

bool scheme_factorizes(SchemeId id) {
  switch (id) {
    case SchemeId::kRlzUv:
    case SchemeId::kRlzPv:
    case SchemeId::kRlzZz:
    case SchemeId::kRlzZzPrimed:
    case SchemeId::kRlzZzz:
      return true;
    default:
      return false;
  }
}

bool scheme_uses_dictionary(SchemeId id) {
  return scheme_factorizes(id) || id == SchemeId::kDefBlockPrimed;
}

uint32_t offset_bits_for_dict(uint64_t dict_size) {
  const uint32_t bits =
      dict_size <= 1 ? 1u : static_cast<uint32_t>(std::bit_width(dict_size - 1));
  return std::clamp(bits, 8u, 32u);
}

std::string_view priming_text_for(const Dictionary& dict, uint64_t corpus_offset) {
  if (dict.empty()) return {};
  const uint64_t window = std::min<uint64_t>(32 * 1024, dict.data.size());
  uint64_t sample = 0;
  if (dict.sample_interval > 0 && dict.sample_count() > 0) {
    sample = (corpus_offset + dict.sample_interval / 2) / dict.sample_interval;
    sample = std::min<uint64_t>(sample, dict.sample_count() - 1);
  }
  const uint64_t centre = sample * dict.sample_size + dict.sample_size / 2;
  uint64_t start = centre > window / 2 ? centre - window / 2 : 0;
  start = std::min<uint64_t>(start, dict.data.size() - window);
  return std::string_view(dict.data).substr(start, window);
}

PrimingContext build_priming_context(const ByteSource& corpus,
                                     const DictionaryIndex& idx,
                                     uint64_t block_size) {
  if (block_size == 0) throw UsageError("block size must be positive");
  const uint64_t source = corpus.size();
  const uint64_t block_count = (source + block_size - 1) / block_size;
  const uint64_t use = std::min<uint64_t>(kPrimingSourceBlocks, block_count);

  std::unordered_map<uint32_t, uint64_t> off_freq, len_freq;
  for (uint64_t b = 0; b < use; ++b) {
    const uint64_t start = b * block_size;
    const std::string block =
        corpus.slice(start, std::min(block_size, source - start));
    const FactorStreams fs =
        factorize_block(idx, block, FactorizeMode::kInterleaved);
    for (uint32_t v : fs.offsets) ++off_freq[v];
    for (uint32_t v : fs.lengths) ++len_freq[v];
  }

  PrimingContext ctx;
  ctx.offsets_prime = rank_and_serialize(off_freq);
  ctx.lengths_prime = rank_and_serialize(len_freq);
  return ctx;
}

void vbyte_append(std::string& out, uint32_t n) {
  while (n >= 128) {
    out.push_back(static_cast<char>(n & 0x7f));
    n >>= 7;
  }
  out.push_back(static_cast<char>(0x80 | n));
}

std::string vbyte_encode(uint32_t n) {
  std::string out;
  vbyte_append(out, n);
  return out;
}

std::pair<uint32_t, size_t> vbyte_decode(std::string_view in, size_t pos) {
  uint64_t value = 0;
  for (size_t i = 0;; ++i) {
    if (pos + i >= in.size()) throw CorruptionError("vbyte truncated");
    if (i == 5) throw CorruptionError("vbyte exceeds 32 bits");
    const uint8_t b = static_cast<uint8_t>(in[pos + i]);
    value |= static_cast<uint64_t>(b & 0x7f) << (7 * i);
    if (b & 0x80) {
      if (value > 0xffffffffull) throw CorruptionError("vbyte exceeds 32 bits");
      return {static_cast<uint32_t>(value), i + 1};
    }
  }
}

std::string pack_bits(const std::vector<uint32_t>& values, uint32_t width) {
  if (width < 1 || width > 32) throw UsageError("bit width must be 1..32");
  const uint64_t limit = uint64_t{1} << width;
  std::string out((values.size() * width + 7) / 8, '\0');
  uint64_t acc = 0;
  unsigned pending = 0;
  size_t at = 0;
  for (uint32_t v : values) {
    if (v >= limit) throw UsageError("value does not fit bit width");
    acc |= static_cast<uint64_t>(v) << pending;
    pending += width;
    while (pending >= 8) {
      out[at++] = static_cast<char>(acc & 0xff);
      acc >>= 8;
      pending -= 8;
    }
  }
  if (pending > 0) out[at++] = static_cast<char>(acc & 0xff);
  return out;
}

std::vector<uint32_t> unpack_bits(std::string_view bytes, size_t count,
                                  uint32_t width) {
  if (width < 1 || width > 32) throw UsageError("bit width must be 1..32");
  if (bytes.size() < (count * width + 7) / 8)
    throw CorruptionError("bit-packed stream truncated");
  const uint64_t mask = width == 32 ? 0xffffffffull : (uint64_t{1} << width) - 1;
  std::vector<uint32_t> out(count);
  size_t bit = 0;
  for (size_t i = 0; i < count; ++i, bit += width) {
    const size_t byte = bit >> 3;
    uint64_t window = 0;
    for (size_t k = 0; k < 5 && byte + k < bytes.size(); ++k)
      window |= static_cast<uint64_t>(static_cast<uint8_t>(bytes[byte + k]))
                << (8 * k);
    out[i] = static_cast<uint32_t>((window >> (bit & 7)) & mask);
  }
  return out;
}

EncodedBlock encode_block(const FactorStreams& fs, const Scheme& scheme) {
  if (!scheme_factorizes(scheme.id))
    throw UsageError("scheme does not carry factor streams");
  if (fs.mode != scheme.mode())
    throw UsageError("factor stream mode does not match scheme");
  if (fs.offsets.size() != fs.lengths.size())
    throw UsageError("malformed factor streams");

  EncodedBlock eb;
  eb.factor_count = static_cast<uint32_t>(fs.offsets.size());
  std::string& p = eb.payload;
  vbyte_append(p, eb.factor_count);

  switch (scheme.id) {
    case SchemeId::kRlzUv:
      for (uint32_t v : fs.offsets) append_u32le(p, v);
      for (uint32_t v : fs.lengths) vbyte_append(p, v);
      break;
    case SchemeId::kRlzPv:
      if (scheme.offset_bit_width < 1 || scheme.offset_bit_width > 32)
        throw UsageError("RLZ_PV requires an offset bit width");
      p += pack_bits(fs.offsets, scheme.offset_bit_width);
      for (uint32_t v : fs.lengths) vbyte_append(p, v);
      break;
    case SchemeId::kRlzZz:
    case SchemeId::kRlzZzPrimed: {
      std::string_view op, lp;
      if (scheme.id == SchemeId::kRlzZzPrimed) {
        if (!scheme.priming)
          throw UsageError("RLZ_ZZ_PRIMED requires a priming context");
        op = scheme.priming->offsets_prime;
        lp = scheme.priming->lengths_prime;
      }
      for (const auto& [stream, prime] :
           {std::pair{serialize_u32_stream(fs.offsets), op},
            std::pair{serialize_u32_stream(fs.lengths), lp}}) {
        const std::string z = deflate_compress(stream, prime);
        append_u32le(p, static_cast<uint32_t>(z.size()));
        p += z;
      }
      break;
    }
    case SchemeId::kRlzZzz:
      for (const std::string& stream : {serialize_u32_stream(fs.offsets),
                                        serialize_u32_stream(fs.lengths),
                                        fs.literals}) {
        const std::string z = deflate_compress(stream);
        append_u32le(p, static_cast<uint32_t>(z.size()));
        p += z;
      }
      break;
    default:
      break;
  }
  return eb;
}

FactorStreams decode_block(const EncodedBlock& eb, const Scheme& scheme) {
  if (!scheme_factorizes(scheme.id))
    throw UsageError("scheme does not carry factor streams");

  const std::string_view p = eb.payload;
  auto [count, consumed] = vbyte_decode(p, 0);
  if (eb.factor_count != 0 && eb.factor_count != count)
    throw CorruptionError("factor count disagrees with prelude");
  size_t pos = consumed;

  FactorStreams fs;
  fs.mode = scheme.mode();
  fs.min_literal =
      scheme.id == SchemeId::kRlzZzz ? scheme.min_literal : 1;

  switch (scheme.id) {
    case SchemeId::kRlzUv: {
      const size_t raw = static_cast<size_t>(count) * 4;
      fs.offsets = parse_u32_stream(sub(p, pos, raw), count);
      pos += raw;
      fs.lengths.reserve(count);
      for (uint32_t i = 0; i < count; ++i) {
        auto [v, used] = vbyte_decode(p, pos);
        fs.lengths.push_back(v);
        pos += used;
      }
      break;
    }
    case SchemeId::kRlzPv: {
      if (scheme.offset_bit_width < 1 || scheme.offset_bit_width > 32)
        throw UsageError("RLZ_PV requires an offset bit width");
      const size_t packed = (static_cast<size_t>(count) * scheme.offset_bit_width + 7) / 8;
      fs.offsets = unpack_bits(sub(p, pos, packed), count, scheme.offset_bit_width);
      pos += packed;
      fs.lengths.reserve(count);
      for (uint32_t i = 0; i < count; ++i) {
        auto [v, used] = vbyte_decode(p, pos);
        fs.lengths.push_back(v);
        pos += used;
      }
      break;
    }
    case SchemeId::kRlzZz:
    case SchemeId::kRlzZzPrimed: {
      std::string_view op, lp;
      if (scheme.id == SchemeId::kRlzZzPrimed) {
        if (!scheme.priming)
          throw UsageError("RLZ_ZZ_PRIMED requires a priming context");
        op = scheme.priming->offsets_prime;
        lp = scheme.priming->lengths_prime;
      }
      for (std::vector<uint32_t>* target : {&fs.offsets, &fs.lengths}) {
        const uint32_t clen = read_u32le(p, pos);
        pos += 4;
        const std::string raw = deflate_decompress(
            sub(p, pos, clen), target == &fs.offsets ? op : lp,
            static_cast<uint64_t>(count) * 4);
        pos += clen;
        *target = parse_u32_stream(raw, count);
      }
      break;
    }
    case SchemeId::kRlzZzz: {
      for (std::vector<uint32_t>* target : {&fs.offsets, &fs.lengths}) {
        const uint32_t clen = read_u32le(p, pos);
        pos += 4;
        const std::string raw =
            deflate_decompress(sub(p, pos, clen), {}, static_cast<uint64_t>(count) * 4);
        pos += clen;
        *target = parse_u32_stream(raw, count);
      }
      uint64_t lit_len = 0;
      for (uint32_t i = 0; i < count; ++i)
        if (fs.lengths[i] == 0) lit_len += fs.offsets[i];
      const uint32_t clen = read_u32le(p, pos);
      pos += 4;
      fs.literals = deflate_decompress(sub(p, pos, clen), {}, lit_len);
      pos += clen;
      break;
    }
    default:
      break;
  }
  if (pos != p.size()) throw CorruptionError("trailing bytes in block payload");
  fs.block_len = compute_block_len(fs);
  return fs;
}

EncodedBlock encode_whole_block(std::string_view block, const Scheme& scheme,
                                std::string_view text_prime) {
  EncodedBlock eb;
  switch (scheme.id) {
    case SchemeId::kCopy:
      eb.payload.assign(block);
      break;
    case SchemeId::kDefBlock:
      eb.payload = deflate_compress(block);
      break;
    case SchemeId::kDefBlockPrimed:
      eb.payload = deflate_compress(block, text_prime);
      break;
    case SchemeId::kFastlzBlock:
      eb.payload = fastlz_compress(block);
      break;
    default:
      throw UsageError("scheme is not a whole-block codec");
  }
  return eb;
}

std::string decode_whole_block(const EncodedBlock& eb, const Scheme& scheme,
                               uint64_t block_len, std::string_view text_prime) {
  switch (scheme.id) {
    case SchemeId::kCopy:
      if (eb.payload.size() != block_len)
        throw CorruptionError("COPY payload length mismatch");
      return eb.payload;
    case SchemeId::kDefBlock:
      return deflate_decompress(eb.payload, {}, block_len);
    case SchemeId::kDefBlockPrimed:
      return deflate_decompress(eb.payload, text_prime, block_len);
    case SchemeId::kFastlzBlock:
      return fastlz_decompress(eb.payload, block_len);
    default:
      throw UsageError("scheme is not a whole-block codec");
  }
}

}  // namespace rlz
