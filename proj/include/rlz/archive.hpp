#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rlz/bytes.hpp"
#include "rlz/codecs.hpp"
#include "rlz/dictionary.hpp"

namespace rlz {

inline constexpr size_t kHeaderBytes = 56;
inline constexpr uint64_t kMinBlockSize = 4 * 1024;
inline constexpr uint64_t kDefaultBlockSize = 16 * 1024;
inline constexpr uint32_t kDefaultSampleSize = 1024;

struct ArchiveHeader {
  uint16_t version = 1;
  SchemeId scheme = SchemeId::kCopy;
  uint8_t block_size_log2 = 14;
  uint64_t source_length = 0;
  uint64_t block_count = 0;
  uint64_t dict_offset = 0;
  uint64_t table_offset = 0;
  uint64_t manifest_offset = 0;  // 0 = no manifest

  uint64_t block_size() const { return uint64_t{1} << block_size_log2; }

  std::string serialize() const;  // kHeaderBytes bytes, trailing checksum
  static ArchiveHeader parse(std::string_view bytes);
};

struct TableEntry {
  uint64_t file_offset;
  uint32_t payload_length;
};

struct ManifestEntry {
  std::string doc_id;
  uint64_t start = 0;
  uint64_t length = 0;
};

struct WriteOptions {
  SchemeId scheme = SchemeId::kCopy;
  uint64_t block_size = kDefaultBlockSize;
  uint32_t min_literal = kDefaultMinLiteral;  // RLZ_ZZZ only
  std::vector<ManifestEntry> manifest;
};

struct WriteStats {
  uint64_t source_length = 0;
  uint64_t block_count = 0;
  uint64_t payload_bytes = 0;
  uint64_t dict_record_bytes = 0;
  uint64_t table_bytes = 0;
  uint64_t manifest_bytes = 0;
  uint64_t file_bytes = 0;
  uint64_t factor_entries = 0;  // zero for whole-block schemes
};

// Factorizes (or passes whole) every corpus block, appends payloads, then the
// dictionary record, compressed block table, optional manifest, and finally
// the header. dict/idx may be null for schemes that ignore the dictionary;
// factorizing schemes need both, DEF_BLOCK_PRIMED needs only dict.
WriteStats write_archive(const ByteSource& corpus, const Dictionary* dict,
                         const DictionaryIndex* idx, const WriteOptions& opts,
                         const std::string& path);

struct BlockRange {
  uint64_t first_block;
  uint64_t last_block;
  uint64_t offset_in_first;
};

// div/mod arithmetic mapping a byte range onto block ordinals
BlockRange locate_blocks(const ArchiveHeader& h, uint64_t start, uint64_t len);

struct AccessStats {
  uint64_t blocks_fetched = 0;
  uint64_t bytes_fetched = 0;
  double fetch_seconds = 0;
  double decode_seconds = 0;
};

// Memory-loads the dictionary and block table; immutable afterwards, safe for
// concurrent range queries (each query decodes into its own buffer).
class ArchiveReader {
 public:
  explicit ArchiveReader(const std::string& path);

  const ArchiveHeader& header() const { return header_; }
  const Dictionary& dict() const { return dict_; }
  const Scheme& scheme() const { return scheme_; }
  const std::vector<TableEntry>& table() const { return table_; }
  const std::vector<ManifestEntry>& manifest() const { return manifest_; }
  const ManifestEntry* find_doc(std::string_view doc_id) const;

  uint64_t source_length() const { return header_.source_length; }
  uint64_t file_size() const { return file_->size(); }
  uint64_t block_length(uint64_t block) const;
  uint64_t resident_footprint() const;  // |D| + logical table bytes

  std::string decode_block(uint64_t block, AccessStats* stats = nullptr) const;
  std::string get_range(uint64_t start, uint64_t len,
                        AccessStats* stats = nullptr) const;

  // fetch without decoding / decode an already-fetched payload
  std::string fetch_payload(uint64_t block, AccessStats* stats = nullptr) const;
  std::string decode_payload(uint64_t block, std::string_view payload) const;
  FactorStreams decode_factor_streams(uint64_t block) const;

 private:
  std::unique_ptr<FileSource> file_;
  ArchiveHeader header_;
  Dictionary dict_;
  PrimingContext priming_;
  Scheme scheme_;
  std::vector<TableEntry> table_;
  std::vector<ManifestEntry> manifest_;
};

}  // namespace rlz
