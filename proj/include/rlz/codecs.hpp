#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlz/dictionary.hpp"
#include "rlz/factorize.hpp"

namespace rlz {

enum class SchemeId : uint8_t {
  kCopy = 0,
  kDefBlock = 1,
  kFastlzBlock = 2,
  kRlzUv = 3,
  kRlzPv = 4,
  kRlzZz = 5,
  kRlzZzPrimed = 6,
  kRlzZzz = 7,
  kDefBlockPrimed = 8,
};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

// RLZ_* schemes factorize against the dictionary; DEF_BLOCK_PRIMED needs the
// dictionary only as a source of priming text.
bool scheme_factorizes(SchemeId id);
bool scheme_uses_dictionary(SchemeId id);

// Fixed pre-computed DEFLATE priming sequences (RLZ_ZZ_PRIMED).
struct PrimingContext {
  std::string offsets_prime;  // 64 KiB of u32-LE offset values
  std::string lengths_prime;  // 64 KiB of u32-LE length values
};

inline constexpr size_t kPrimeBytes = 64 * 1024;
inline constexpr size_t kPrimingSourceBlocks = 64;

// Factorizes the first kPrimingSourceBlocks corpus blocks and keeps the most
// frequent 16 Ki values of each stream, most frequent last so that the codec's
// 32 KiB priming window retains them.
PrimingContext build_priming_context(const ByteSource& corpus,
                                     const DictionaryIndex& idx,
                                     uint64_t block_size);

// Dictionary window (at most 32 KiB) centred on the sample taken nearest the
// given corpus offset; derivable by the reader from the archive geometry.
std::string_view priming_text_for(const Dictionary& dict, uint64_t corpus_offset);

// ceil(log2(dict_size)), floored at 8 so a literal byte always fits the
// offset slot, capped at 32.
uint32_t offset_bits_for_dict(uint64_t dict_size);

struct Scheme {
  SchemeId id = SchemeId::kCopy;
  uint32_t offset_bit_width = 0;              // RLZ_PV
  uint32_t min_literal = kDefaultMinLiteral;  // RLZ_ZZZ
  const PrimingContext* priming = nullptr;    // RLZ_ZZ_PRIMED

  FactorizeMode mode() const {
    return id == SchemeId::kRlzZzz ? FactorizeMode::kThreeStream
                                   : FactorizeMode::kInterleaved;
  }
};

struct EncodedBlock {
  uint32_t factor_count = 0;  // zero for whole-block schemes
  std::string payload;        // complete on-disk payload including prelude
};

// --- integer codecs ---

void vbyte_append(std::string& out, uint32_t n);
std::string vbyte_encode(uint32_t n);
// returns (value, bytes consumed) starting at `pos`
std::pair<uint32_t, size_t> vbyte_decode(std::string_view in, size_t pos = 0);

std::string pack_bits(const std::vector<uint32_t>& values, uint32_t width);
std::vector<uint32_t> unpack_bits(std::string_view bytes, size_t count,
                                  uint32_t width);

// --- byte codecs ---

// Raw DEFLATE (RFC 1951). A prime longer than the 32 KiB format window is
// clamped to its trailing 32 KiB.
std::string deflate_compress(std::string_view data, std::string_view prime = {});
std::string deflate_decompress(std::string_view blob, std::string_view prime,
                               uint64_t expected_len);
// blob may carry trailing bytes after the stream; reports how many were used
std::string deflate_decompress_prefix(std::string_view blob,
                                      std::string_view prime,
                                      uint64_t expected_len, size_t* consumed);

std::string fastlz_compress(std::string_view data);
std::string fastlz_decompress(std::string_view blob, uint64_t expected_len);

// --- per-block scheme codecs ---

// Factor-stream schemes (RLZ_*). fs.mode must agree with the scheme.
EncodedBlock encode_block(const FactorStreams& fs, const Scheme& scheme);
FactorStreams decode_block(const EncodedBlock& eb, const Scheme& scheme);

// Whole-block schemes (COPY, DEF_BLOCK, DEF_BLOCK_PRIMED, FASTLZ_BLOCK).
// text_prime applies to DEF_BLOCK_PRIMED only.
EncodedBlock encode_whole_block(std::string_view block, const Scheme& scheme,
                                std::string_view text_prime = {});
std::string decode_whole_block(const EncodedBlock& eb, const Scheme& scheme,
                               uint64_t block_len,
                               std::string_view text_prime = {});

}  // namespace rlz
