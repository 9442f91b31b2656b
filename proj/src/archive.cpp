#include "rlz/archive.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>

#include "rlz/errors.hpp"
#include "rlz/sizes.hpp"

namespace rlz {
namespace {

constexpr char kMagic[4] = {'R', 'L', 'Z', 'A'};
constexpr uint16_t kVersion = 1;

class Stopwatch {
 public:
  explicit Stopwatch(double* sink) : sink_(sink) {
    if (sink_) start_ = std::chrono::steady_clock::now();
  }
  ~Stopwatch() {
    if (sink_)
      *sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_)
                    .count();
  }

 private:
  double* sink_;
  std::chrono::steady_clock::time_point start_;
};

void validate_manifest(const std::vector<ManifestEntry>& manifest,
                       uint64_t source_length) {
  uint64_t cursor = 0;
  for (const auto& e : manifest) {
    if (e.start < cursor)
      throw UsageError("manifest entries must be sorted and non-overlapping");
    if (e.start > source_length || e.length > source_length - e.start)
      throw UsageError("manifest entry reaches past the corpus end");
    cursor = e.start + e.length;
  }
}

std::string serialize_manifest(const std::vector<ManifestEntry>& manifest) {
  std::string out;
  append_u64le(out, manifest.size());
  for (const auto& e : manifest) {
    append_u32le(out, static_cast<uint32_t>(e.doc_id.size()));
    out += e.doc_id;
    append_u64le(out, e.start);
    append_u64le(out, e.length);
  }
  return out;
}

}  // namespace

std::string ArchiveHeader::serialize() const {
  std::string out;
  out.reserve(kHeaderBytes);
  out.append(kMagic, 4);
  append_u16le(out, version);
  out.push_back(static_cast<char>(scheme));
  out.push_back(static_cast<char>(block_size_log2));
  append_u64le(out, source_length);
  append_u64le(out, block_count);
  append_u64le(out, dict_offset);
  append_u64le(out, table_offset);
  append_u64le(out, manifest_offset);
  append_u64le(out, fnv1a64(out));
  return out;
}

ArchiveHeader ArchiveHeader::parse(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) throw CorruptionError("archive header truncated");
  if (std::string_view(bytes.data(), 4) != std::string_view(kMagic, 4))
    throw CorruptionError("bad archive magic");
  if (read_u64le(bytes, 48) != fnv1a64(bytes.substr(0, 48)))
    throw CorruptionError("archive header checksum mismatch");

  ArchiveHeader h;
  h.version = read_u16le(bytes, 4);
  if (h.version != kVersion)
    throw CorruptionError("unsupported archive version " +
                          std::to_string(h.version));
  const uint8_t scheme_id = static_cast<uint8_t>(bytes[6]);
  if (scheme_id > static_cast<uint8_t>(SchemeId::kDefBlockPrimed))
    throw CorruptionError("unknown scheme id " + std::to_string(scheme_id));
  h.scheme = static_cast<SchemeId>(scheme_id);
  h.block_size_log2 = static_cast<uint8_t>(bytes[7]);
  if (h.block_size_log2 < 12 || h.block_size_log2 > 40)
    throw CorruptionError("implausible block size");
  h.source_length = read_u64le(bytes, 8);
  h.block_count = read_u64le(bytes, 16);
  h.dict_offset = read_u64le(bytes, 24);
  h.table_offset = read_u64le(bytes, 32);
  h.manifest_offset = read_u64le(bytes, 40);
  const uint64_t bs = h.block_size();
  if (h.block_count != (h.source_length + bs - 1) / bs)
    throw CorruptionError("block count disagrees with source length");
  return h;
}

BlockRange locate_blocks(const ArchiveHeader& h, uint64_t start, uint64_t len) {
  if (len == 0) throw UsageError("range length must be at least 1");
  if (start > h.source_length || h.source_length - start < len)
    throw UsageError("range reaches past the end of the archive");
  const uint64_t bs = h.block_size();
  return {start / bs, (start + len - 1) / bs, start % bs};
}

WriteStats write_archive(const ByteSource& corpus, const Dictionary* dict,
                         const DictionaryIndex* idx, const WriteOptions& opts,
                         const std::string& path) {
  if (!is_power_of_two(opts.block_size) || opts.block_size < kMinBlockSize)
    throw UsageError("block size must be a power of two, at least 4 KiB");
  if (scheme_uses_dictionary(opts.scheme) && (dict == nullptr || dict->empty()))
    throw UsageError(std::string(scheme_name(opts.scheme)) +
                     " requires a dictionary");
  if (scheme_factorizes(opts.scheme) && idx == nullptr)
    throw UsageError(std::string(scheme_name(opts.scheme)) +
                     " requires a dictionary index");
  if (idx != nullptr && dict != nullptr && &idx->dict() != dict)
    throw UsageError("index was built over a different dictionary");
  validate_manifest(opts.manifest, corpus.size());

  const uint64_t source = corpus.size();
  const uint64_t bs = opts.block_size;
  const uint64_t blocks = (source + bs - 1) / bs;
  const bool carries_dict = scheme_uses_dictionary(opts.scheme);

  Scheme scheme;
  scheme.id = opts.scheme;
  scheme.min_literal = opts.min_literal;
  if (opts.scheme == SchemeId::kRlzPv)
    scheme.offset_bit_width = offset_bits_for_dict(dict->data.size());
  PrimingContext priming;
  if (opts.scheme == SchemeId::kRlzZzPrimed) {
    priming = build_priming_context(corpus, *idx, bs);
    scheme.priming = &priming;
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  uint64_t cursor = 0;
  auto put = [&](std::string_view bytes) {
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    cursor += bytes.size();
  };

  put(std::string(kHeaderBytes, '\0'));  // placeholder until offsets are known

  WriteStats stats;
  stats.source_length = source;
  stats.block_count = blocks;
  std::vector<TableEntry> table;
  table.reserve(blocks);
  for (uint64_t b = 0; b < blocks; ++b) {
    const uint64_t start = b * bs;
    const std::string block = corpus.slice(start, std::min(bs, source - start));
    EncodedBlock eb;
    if (scheme_factorizes(opts.scheme)) {
      const FactorStreams fs =
          factorize_block(*idx, block, scheme.mode(), opts.min_literal);
      stats.factor_entries += fs.offsets.size();
      eb = encode_block(fs, scheme);
    } else {
      const std::string_view prime = opts.scheme == SchemeId::kDefBlockPrimed
                                         ? priming_text_for(*dict, start)
                                         : std::string_view{};
      eb = encode_whole_block(block, scheme, prime);
    }
    table.push_back({cursor, static_cast<uint32_t>(eb.payload.size())});
    stats.payload_bytes += eb.payload.size();
    put(eb.payload);
  }

  const uint64_t dict_offset = cursor;
  {
    std::string record;
    if (carries_dict) {
      append_u32le(record, dict->sample_size);
      append_u64le(record, dict->data.size());
      record += deflate_compress(dict->data);
      if (opts.scheme == SchemeId::kRlzZzPrimed) {
        for (const std::string* prime :
             {&priming.offsets_prime, &priming.lengths_prime}) {
          const std::string z = deflate_compress(*prime);
          append_u32le(record, static_cast<uint32_t>(z.size()));
          record += z;
        }
      }
    } else {
      append_u32le(record, 0);
      append_u64le(record, 0);
    }
    stats.dict_record_bytes = record.size();
    put(record);
  }

  const uint64_t table_offset = cursor;
  {
    std::string raw;
    raw.reserve(table.size() * 12);
    for (const TableEntry& e : table) {
      append_u64le(raw, e.file_offset);
      append_u32le(raw, e.payload_length);
    }
    std::string record;
    const std::string z = deflate_compress(raw);
    append_u32le(record, static_cast<uint32_t>(z.size()));
    record += z;
    stats.table_bytes = record.size();
    put(record);
  }

  uint64_t manifest_offset = 0;
  if (!opts.manifest.empty()) {
    manifest_offset = cursor;
    const std::string record = serialize_manifest(opts.manifest);
    stats.manifest_bytes = record.size();
    put(record);
  }

  stats.file_bytes = cursor;

  ArchiveHeader header;
  header.version = kVersion;
  header.scheme = opts.scheme;
  header.block_size_log2 =
      static_cast<uint8_t>(std::bit_width(opts.block_size) - 1);
  header.source_length = source;
  header.block_count = blocks;
  header.dict_offset = dict_offset;
  header.table_offset = table_offset;
  header.manifest_offset = manifest_offset;
  out.seekp(0);
  out.write(header.serialize().data(), kHeaderBytes);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
  return stats;
}

ArchiveReader::ArchiveReader(const std::string& path)
    : file_(std::make_unique<FileSource>(path)) {
  if (file_->size() < kHeaderBytes)
    throw CorruptionError("file too small to be an archive");
  header_ = ArchiveHeader::parse(file_->slice(0, kHeaderBytes));

  const uint64_t fsize = file_->size();
  if (header_.dict_offset < kHeaderBytes || header_.dict_offset > fsize ||
      header_.table_offset < header_.dict_offset || header_.table_offset > fsize ||
      (header_.manifest_offset != 0 && (header_.manifest_offset < header_.table_offset ||
                                        header_.manifest_offset > fsize)))
    throw CorruptionError("archive section offsets out of order");

  // dictionary record
  {
    const std::string head = file_->slice(header_.dict_offset, 12);
    const uint32_t sample_size = read_u32le(head, 0);
    const uint64_t dict_len = read_u64le(head, 4);
    uint64_t pos = header_.dict_offset + 12;
    if (pos > header_.table_offset)
      throw CorruptionError("dictionary record truncated");
    if (dict_len > 0) {
      if (sample_size == 0 || dict_len % sample_size != 0)
        throw CorruptionError("dictionary record geometry invalid");
      const std::string region = file_->slice(pos, header_.table_offset - pos);
      size_t rel = 0;
      dict_.data = deflate_decompress_prefix(region, {}, dict_len, &rel);
      dict_.sample_size = sample_size;
      dict_.source_length = header_.source_length;
      dict_.sample_interval = header_.source_length / (dict_len / sample_size);
      if (header_.scheme == SchemeId::kRlzZzPrimed) {
        for (std::string* prime :
             {&priming_.offsets_prime, &priming_.lengths_prime}) {
          const uint32_t clen = read_u32le(region, rel);
          rel += 4;
          if (rel + clen > region.size())
            throw CorruptionError("priming record truncated");
          *prime = deflate_decompress(
              std::string_view(region).substr(rel, clen), {}, kPrimeBytes);
          rel += clen;
        }
      }
    } else if (scheme_uses_dictionary(header_.scheme)) {
      throw CorruptionError("scheme requires a dictionary but none is stored");
    }
  }

  scheme_.id = header_.scheme;
  scheme_.min_literal = kDefaultMinLiteral;  // not stored; irrelevant to decode
  if (header_.scheme == SchemeId::kRlzPv)
    scheme_.offset_bit_width = offset_bits_for_dict(dict_.data.size());
  if (header_.scheme == SchemeId::kRlzZzPrimed) scheme_.priming = &priming_;

  // block table
  {
    const uint32_t clen = read_u32le(file_->slice(header_.table_offset, 4), 0);
    const std::string raw = deflate_decompress(
        file_->slice(header_.table_offset + 4, clen), {}, header_.block_count * 12);
    table_.reserve(header_.block_count);
    uint64_t prev_end = kHeaderBytes;
    for (uint64_t b = 0; b < header_.block_count; ++b) {
      TableEntry e;
      e.file_offset = read_u64le(raw, b * 12);
      e.payload_length = read_u32le(raw, b * 12 + 8);
      if (e.file_offset < prev_end ||
          e.file_offset + e.payload_length > header_.dict_offset)
        throw CorruptionError("block table entries out of order");
      prev_end = e.file_offset + e.payload_length;
      table_.push_back(e);
    }
  }

  if (header_.manifest_offset != 0) {
    const uint64_t end = fsize;
    const std::string raw = file_->slice(header_.manifest_offset,
                                         end - header_.manifest_offset);
    size_t pos = 0;
    const uint64_t count = read_u64le(raw, pos);
    pos += 8;
    manifest_.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
      const uint32_t id_len = read_u32le(raw, pos);
      pos += 4;
      if (pos + id_len > raw.size())
        throw CorruptionError("manifest truncated");
      ManifestEntry e;
      e.doc_id = raw.substr(pos, id_len);
      pos += id_len;
      e.start = read_u64le(raw, pos);
      pos += 8;
      e.length = read_u64le(raw, pos);
      pos += 8;
      manifest_.push_back(std::move(e));
    }
    validate_manifest(manifest_, header_.source_length);
  }
}

const ManifestEntry* ArchiveReader::find_doc(std::string_view doc_id) const {
  for (const auto& e : manifest_)
    if (e.doc_id == doc_id) return &e;
  return nullptr;
}

uint64_t ArchiveReader::block_length(uint64_t block) const {
  if (block >= header_.block_count) throw UsageError("block ordinal out of range");
  const uint64_t bs = header_.block_size();
  if (block + 1 < header_.block_count) return bs;
  return header_.source_length - block * bs;
}

uint64_t ArchiveReader::resident_footprint() const {
  return dict_.data.size() + table_.size() * 12;
}

std::string ArchiveReader::fetch_payload(uint64_t block, AccessStats* stats) const {
  if (block >= header_.block_count) throw UsageError("block ordinal out of range");
  const TableEntry& e = table_[block];
  Stopwatch timer(stats ? &stats->fetch_seconds : nullptr);
  std::string payload = file_->slice(e.file_offset, e.payload_length);
  if (stats) {
    stats->blocks_fetched += 1;
    stats->bytes_fetched += payload.size();
  }
  return payload;
}

std::string ArchiveReader::decode_payload(uint64_t block,
                                          std::string_view payload) const {
  const uint64_t expect = block_length(block);
  if (scheme_factorizes(header_.scheme)) {
    EncodedBlock eb;
    eb.payload.assign(payload);
    const FactorStreams fs = rlz::decode_block(eb, scheme_);
    std::string bytes = defactorize(dict_, fs);
    if (bytes.size() != expect)
      throw CorruptionError("decoded block length mismatch");
    return bytes;
  }
  EncodedBlock eb;
  eb.payload.assign(payload);
  const std::string_view prime =
      header_.scheme == SchemeId::kDefBlockPrimed
          ? priming_text_for(dict_, block * header_.block_size())
          : std::string_view{};
  return decode_whole_block(eb, scheme_, expect, prime);
}

FactorStreams ArchiveReader::decode_factor_streams(uint64_t block) const {
  if (!scheme_factorizes(header_.scheme))
    throw UsageError("archive scheme carries no factor streams");
  EncodedBlock eb;
  eb.payload = fetch_payload(block);
  return rlz::decode_block(eb, scheme_);
}

std::string ArchiveReader::decode_block(uint64_t block, AccessStats* stats) const {
  const std::string payload = fetch_payload(block, stats);
  Stopwatch timer(stats ? &stats->decode_seconds : nullptr);
  return decode_payload(block, payload);
}

std::string ArchiveReader::get_range(uint64_t start, uint64_t len,
                                     AccessStats* stats) const {
  const BlockRange range = locate_blocks(header_, start, len);
  const uint64_t span_start = table_[range.first_block].file_offset;
  const TableEntry& last = table_[range.last_block];
  const uint64_t span_len = last.file_offset + last.payload_length - span_start;

  std::string span;
  {
    Stopwatch timer(stats ? &stats->fetch_seconds : nullptr);
    span = file_->slice(span_start, span_len);
  }
  if (stats) {
    stats->blocks_fetched += range.last_block - range.first_block + 1;
    stats->bytes_fetched += span.size();
  }

  std::string out;
  out.reserve(len);
  const uint64_t bs = header_.block_size();
  Stopwatch timer(stats ? &stats->decode_seconds : nullptr);
  for (uint64_t b = range.first_block; b <= range.last_block; ++b) {
    const TableEntry& e = table_[b];
    const std::string_view payload(span.data() + (e.file_offset - span_start),
                                   e.payload_length);
    const std::string bytes = decode_payload(b, payload);
    const uint64_t block_start = b * bs;
    const uint64_t from = start > block_start ? start - block_start : 0;
    const uint64_t to = std::min<uint64_t>(bytes.size(), start + len - block_start);
    out.append(bytes, from, to - from);
  }
  if (out.size() != len) throw CorruptionError("range reconstruction incomplete");
  return out;
}

}  // namespace rlz
