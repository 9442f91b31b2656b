// rlz-arc: build, inspect and benchmark blocked RLZ archives.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlz/access.hpp"
#include "rlz/archive.hpp"
#include "rlz/codecs.hpp"
#include "rlz/corpus.hpp"
#include "rlz/dictionary.hpp"
#include "rlz/errors.hpp"
#include "rlz/perfmodel.hpp"
#include "rlz/sizes.hpp"

namespace {

using nlohmann::ordered_json;

constexpr size_t kIoChunk = 4u << 20;

struct OutputFormat {
  std::string name = "text";
};

void emit_text(const ordered_json& doc, const std::string& prefix, std::ostream& os) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      emit_text(*it, key, os);
    } else if (it->is_string()) {
      os << key << "=" << it->get<std::string>() << "\n";
    } else {
      os << key << "=" << it->dump() << "\n";
    }
  }
}

void emit(const ordered_json& doc, const OutputFormat& fmt) {
  if (fmt.name == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    emit_text(doc, "", std::cout);
  }
}

std::string hex_u64(uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

uint64_t parse_size_opt(const std::string& text, const char* what) {
  try {
    return rlz::parse_size(text);
  } catch (const rlz::UsageError&) {
    throw rlz::UsageError(std::string(what) + ": bad size '" + text + "'");
  }
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rlz::IoError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw rlz::IoError("short write to " + path);
}

std::unique_ptr<rlz::ConcatSource> open_inputs(const std::vector<std::string>& paths) {
  auto src = std::make_unique<rlz::ConcatSource>();
  for (const auto& p : paths) src->append(std::make_unique<rlz::FileSource>(p));
  return src;
}

rlz::SchemeId parse_scheme_opt(const std::string& name) {
  const auto id = rlz::parse_scheme(name);
  if (!id) throw rlz::UsageError("unknown scheme: " + name);
  return *id;
}

// ---- gen ----

struct GenCfg {
  std::string out;
  std::string size_str;
  uint64_t seed = 42;
  double novelty = 10.0;
  std::string repeat_str = "1MiB";
  OutputFormat fmt;
};

int run_gen(const GenCfg& cfg) {
  rlz::CorpusSpec spec;
  spec.size = parse_size_opt(cfg.size_str, "--size");
  spec.seed = cfg.seed;
  spec.novelty_percent = cfg.novelty;
  spec.repeat_distance = parse_size_opt(cfg.repeat_str, "--repeat-distance");
  const std::string corpus = rlz::generate_corpus(spec);
  write_file(cfg.out, corpus);
  ordered_json doc;
  doc["command"] = "gen";
  doc["out"] = cfg.out;
  doc["bytes"] = corpus.size();
  doc["seed"] = spec.seed;
  doc["novelty_percent"] = spec.novelty_percent;
  doc["repeat_distance"] = spec.repeat_distance;
  emit(doc, cfg.fmt);
  return 0;
}

// ---- build ----

struct BuildCfg {
  std::vector<std::string> inputs;
  std::string out;
  std::string scheme = "RLZ_ZZ";
  std::string block_str = "16KiB";
  std::string dict_str;
  uint32_t sample_size = rlz::kDefaultSampleSize;
  uint32_t min_literal = rlz::kDefaultMinLiteral;
  bool manifest = false;
  OutputFormat fmt;
};

int run_build(const BuildCfg& cfg) {
  const rlz::SchemeId scheme = parse_scheme_opt(cfg.scheme);
  auto corpus = open_inputs(cfg.inputs);

  std::vector<rlz::ManifestEntry> manifest;
  if (cfg.manifest) {
    for (size_t i = 0; i < cfg.inputs.size(); ++i) {
      manifest.push_back({cfg.inputs[i], corpus->part_offset(i), corpus->part_size(i)});
    }
  }

  rlz::Dictionary dict;
  std::unique_ptr<rlz::DictionaryIndex> index;
  if (rlz::scheme_uses_dictionary(scheme)) {
    if (cfg.dict_str.empty()) {
      throw rlz::UsageError(std::string(rlz::scheme_name(scheme)) + " requires --dict-size");
    }
    const uint64_t dict_size = parse_size_opt(cfg.dict_str, "--dict-size");
    dict = rlz::build_dictionary(*corpus, dict_size, cfg.sample_size);
    if (rlz::scheme_factorizes(scheme)) {
      index = std::make_unique<rlz::DictionaryIndex>(dict);
    }
  } else if (!cfg.dict_str.empty()) {
    rlz::log_warning(std::string(rlz::scheme_name(scheme)) + " ignores --dict-size");
  }

  rlz::WriteOptions opts;
  opts.scheme = scheme;
  opts.block_size = parse_size_opt(cfg.block_str, "--block-size");
  opts.min_literal = cfg.min_literal;
  opts.manifest = std::move(manifest);

  const rlz::WriteStats stats = rlz::write_archive(
      *corpus, dict.empty() ? nullptr : &dict, index.get(), opts, cfg.out);

  ordered_json doc;
  doc["command"] = "build";
  doc["out"] = cfg.out;
  doc["scheme"] = rlz::scheme_name(scheme);
  doc["block_size"] = opts.block_size;
  doc["source_length"] = stats.source_length;
  doc["block_count"] = stats.block_count;
  doc["payload_bytes"] = stats.payload_bytes;
  doc["dict_record_bytes"] = stats.dict_record_bytes;
  doc["table_bytes"] = stats.table_bytes;
  doc["manifest_bytes"] = stats.manifest_bytes;
  doc["file_bytes"] = stats.file_bytes;
  doc["factor_entries"] = stats.factor_entries;
  if (stats.source_length > 0) {
    const double src = static_cast<double>(stats.source_length);
    doc["compression_rate_percent"] = 100.0 * static_cast<double>(stats.file_bytes) / src;
    doc["dict_share_percent"] = 100.0 * static_cast<double>(dict.data.size()) / src;
    doc["table_share_percent"] = 100.0 * static_cast<double>(stats.table_bytes) / src;
  }
  emit(doc, cfg.fmt);
  return 0;
}

// ---- extract ----

struct ExtractCfg {
  std::string archive;
  std::string start_str;
  std::string len_str;
  std::string doc_id;
  std::string out;
};

int run_extract(const ExtractCfg& cfg) {
  rlz::ArchiveReader reader(cfg.archive);
  uint64_t start = 0;
  uint64_t length = 0;
  if (!cfg.doc_id.empty()) {
    const rlz::ManifestEntry* entry = reader.find_doc(cfg.doc_id);
    if (entry == nullptr) throw rlz::UsageError("unknown doc id: " + cfg.doc_id);
    start = entry->start;
    length = entry->length;
  } else {
    if (cfg.start_str.empty() || cfg.len_str.empty()) {
      throw rlz::UsageError("extract needs --doc or both --start and --len");
    }
    start = parse_size_opt(cfg.start_str, "--start");
    length = parse_size_opt(cfg.len_str, "--len");
  }

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!cfg.out.empty()) {
    file_out.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file_out) throw rlz::IoError("cannot open " + cfg.out + " for writing");
    out = &file_out;
  }
  for (uint64_t pos = start; pos < start + length;) {
    const uint64_t step = std::min<uint64_t>(kIoChunk, start + length - pos);
    const std::string chunk = reader.get_range(pos, step, nullptr);
    out->write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    pos += step;
  }
  out->flush();
  if (!*out) throw rlz::IoError("short write while extracting");
  return 0;
}

// ---- bench ----

struct BenchCfg {
  std::string archive;
  std::string mode = "random";
  uint64_t queries = rlz::kDefaultQueryCount;
  std::string fragment_str = "16KiB";
  uint64_t seed = 1;
  uint32_t threads = 1;
  OutputFormat fmt;
};

int run_bench(const BenchCfg& cfg) {
  rlz::ArchiveReader reader(cfg.archive);
  const auto mode = rlz::parse_workload_mode(cfg.mode);
  if (!mode) throw rlz::UsageError("unknown mode: " + cfg.mode);
  rlz::Workload workload = rlz::generate_workload(
      *mode, reader.source_length(), parse_size_opt(cfg.fragment_str, "--fragment"),
      cfg.queries, cfg.seed);

  rlz::CacheDropHook hook;
  if (const char* cmd = std::getenv("RLZ_ARC_DROP_CACHE"); cmd != nullptr && *cmd != '\0') {
    const std::string cache_cmd = cmd;
    hook = [cache_cmd]() {
      if (std::system(cache_cmd.c_str()) != 0) {
        rlz::log_warning("cache drop command failed: " + cache_cmd);
      }
    };
  }

  const rlz::ThroughputReport r = rlz::run_workload(reader, workload, hook, cfg.threads);

  ordered_json doc;
  doc["command"] = "bench";
  doc["archive"] = cfg.archive;
  doc["scheme"] = rlz::scheme_name(reader.scheme().id);
  doc["mode"] = rlz::workload_mode_name(r.mode);
  doc["query_count"] = r.query_count;
  doc["fragment_size"] = r.fragment_size;
  doc["queries_sorted"] = r.queries_sorted;
  doc["threads"] = r.threads;
  doc["wall_seconds"] = r.wall_seconds;
  doc["fetch_seconds"] = r.fetch_seconds;
  doc["decode_seconds"] = r.decode_seconds;
  doc["fragments_per_sec"] = r.fragments_per_sec;
  doc["bytes_decoded"] = r.bytes_decoded;
  doc["mib_decoded_per_sec"] =
      r.wall_seconds > 0.0
          ? static_cast<double>(r.bytes_decoded) / (1024.0 * 1024.0) / r.wall_seconds
          : 0.0;
  doc["blocks_fetched"] = r.blocks_fetched;
  doc["resident_footprint"] = reader.resident_footprint();
  doc["result_hash"] = hex_u64(r.result_hash);
  emit(doc, cfg.fmt);
  return 0;
}

// ---- stat ----

struct StatCfg {
  std::string archive;
  OutputFormat fmt;
};

int run_stat(const StatCfg& cfg) {
  rlz::ArchiveReader reader(cfg.archive);
  const rlz::ArchiveHeader& h = reader.header();
  const uint64_t file_bytes = reader.file_size();
  const uint64_t payload_bytes = h.dict_offset - rlz::kHeaderBytes;
  const uint64_t dict_record_bytes = h.table_offset - h.dict_offset;
  const uint64_t table_end = h.manifest_offset != 0 ? h.manifest_offset : file_bytes;
  const uint64_t table_bytes = table_end - h.table_offset;
  const uint64_t manifest_bytes = h.manifest_offset != 0 ? file_bytes - h.manifest_offset : 0;

  ordered_json doc;
  doc["command"] = "stat";
  doc["archive"] = cfg.archive;
  doc["scheme"] = rlz::scheme_name(reader.scheme().id);
  doc["block_size"] = h.block_size();
  doc["block_count"] = h.block_count;
  doc["source_length"] = h.source_length;
  doc["file_bytes"] = file_bytes;
  doc["header_bytes"] = rlz::kHeaderBytes;
  doc["payload_bytes"] = payload_bytes;
  doc["dict_record_bytes"] = dict_record_bytes;
  doc["table_bytes"] = table_bytes;
  doc["manifest_bytes"] = manifest_bytes;
  doc["dict_bytes"] = reader.dict().data.size();
  doc["sample_size"] = reader.dict().sample_size;
  doc["resident_footprint"] = reader.resident_footprint();
  doc["doc_count"] = reader.manifest().size();
  if (h.source_length > 0) {
    const double src = static_cast<double>(h.source_length);
    doc["compression_rate_percent"] = 100.0 * static_cast<double>(file_bytes) / src;
    doc["dict_share_percent"] = 100.0 * static_cast<double>(reader.dict().data.size()) / src;
    doc["table_share_percent"] = 100.0 * static_cast<double>(table_bytes) / src;
  }
  if (rlz::scheme_factorizes(reader.scheme().id)) {
    uint64_t entries = 0;
    uint64_t copies = 0;
    uint64_t literal_entries = 0;
    for (uint64_t b = 0; b < h.block_count; ++b) {
      const rlz::FactorStreams fs = reader.decode_factor_streams(b);
      entries += fs.offsets.size();
      for (const uint32_t len : fs.lengths) {
        if (len > 0) ++copies; else ++literal_entries;
      }
    }
    doc["factor_entries"] = entries;
    doc["copy_entries"] = copies;
    doc["literal_entries"] = literal_entries;
    if (entries > 0) {
      doc["mean_factor_length"] =
          static_cast<double>(h.source_length) / static_cast<double>(entries);
    }
  }
  emit(doc, cfg.fmt);
  return 0;
}

// ---- model ----

struct ModelCfg {
  std::string media = "hdd";
  double latency = -1.0;
  double seq_rate = -1.0;
  std::string block_str = "16KiB";
  std::string fragment_str = "16KiB";
  double rate = 1.0;
  double decode_rate = 260e6;
  double batch_latency = -1.0;
  std::string dict_str;
  std::string corpus_str;
  double mean_factor_length = 20.0;
  uint64_t table_entries = 0;
  bool arithmetic = false;
  OutputFormat fmt;
};

ordered_json breakdown_json(const rlz::QpsPrediction& p) {
  ordered_json j;
  j["qps"] = p.qps;
  j["touched_blocks"] = p.touched_blocks;
  j["latency_seconds"] = p.breakdown.latency_seconds;
  j["transfer_seconds"] = p.breakdown.transfer_seconds;
  j["decode_seconds"] = p.breakdown.decode_seconds;
  j["total_seconds"] = p.breakdown.total_seconds();
  j["decode_share_percent"] = 100.0 * p.breakdown.decode_seconds / p.breakdown.total_seconds();
  return j;
}

int run_model(const ModelCfg& cfg) {
  const auto preset = rlz::media_preset(cfg.media);
  if (!preset) throw rlz::UsageError("unknown media preset: " + cfg.media);
  rlz::MediaProfile media = *preset;
  if (cfg.latency >= 0.0) media.random_read_latency = cfg.latency;
  if (cfg.seq_rate > 0.0) media.sequential_transfer_rate = cfg.seq_rate;

  rlz::ModelInputs in;
  in.block_size = parse_size_opt(cfg.block_str, "--block-size");
  in.fragment_size = parse_size_opt(cfg.fragment_str, "--fragment");
  in.compression_rate = cfg.rate;
  in.decode_rate = cfg.decode_rate;

  ordered_json doc;
  doc["command"] = "model";
  doc["media"] = cfg.media;
  doc["latency_seconds"] = media.random_read_latency;
  doc["sequential_rate"] = media.sequential_transfer_rate;
  doc["block_size"] = in.block_size;
  doc["fragment_size"] = in.fragment_size;
  doc["compression_rate"] = in.compression_rate;
  doc["decode_rate"] = in.decode_rate;
  doc["random"] = breakdown_json(rlz::predict_random_qps(media, in));
  if (cfg.batch_latency >= 0.0) {
    doc["batch"] = breakdown_json(rlz::predict_batch_qps(media, in, cfg.batch_latency));
  }
  const rlz::SequentialPrediction seq = rlz::predict_sequential_rate(media, in);
  doc["sequential"]["fragments_per_sec"] = seq.fragments_per_sec;
  doc["sequential"]["decode_bound"] = seq.decode_bound;

  if (cfg.arithmetic) {
    if (cfg.dict_str.empty()) throw rlz::UsageError("--arithmetic requires --dict-size");
    const uint64_t dict_size = parse_size_opt(cfg.dict_str, "--dict-size");
    ordered_json a;
    a["dict_size"] = dict_size;
    if (!cfg.corpus_str.empty()) {
      const uint64_t corpus_size = parse_size_opt(cfg.corpus_str, "--corpus-size");
      const rlz::SampleLayout layout =
          rlz::sample_layout(corpus_size, dict_size, rlz::kDefaultSampleSize);
      a["sample_size"] = rlz::kDefaultSampleSize;
      a["sample_count"] = layout.sample_count;
      a["sample_interval"] = layout.interval;
    }
    const uint32_t offset_bits = rlz::offset_bits_for_dict(dict_size);
    const uint32_t length_code_bytes = static_cast<uint32_t>(
        rlz::vbyte_encode(static_cast<uint32_t>(std::llround(cfg.mean_factor_length)))
            .size());
    const double bpf = rlz::bits_per_factor(offset_bits, length_code_bytes);
    const double fpb = rlz::expected_factors_per_block(in.block_size, cfg.mean_factor_length);
    const double payload =
        rlz::expected_payload_bytes(in.block_size, cfg.mean_factor_length, bpf);
    a["offset_bits"] = offset_bits;
    a["length_code_bytes"] = length_code_bytes;
    a["mean_factor_length"] = cfg.mean_factor_length;
    a["bits_per_factor"] = bpf;
    a["factors_per_block"] = fpb;
    a["block_payload_bytes"] = payload;
    a["block_payload_kib"] = payload / 1024.0;
    a["compression_rate_percent"] = 100.0 * payload / static_cast<double>(in.block_size);
    if (cfg.table_entries > 0) {
      const double table = rlz::table_size_bytes(static_cast<double>(cfg.table_entries), bpf);
      a["table_entries"] = cfg.table_entries;
      a["table_bytes"] = table;
      a["table_mib"] = table / (1024.0 * 1024.0);
    }
    doc["arithmetic"] = a;
  }
  emit(doc, cfg.fmt);
  return 0;
}

// ---- verify ----

struct VerifyCfg {
  std::string archive;
  std::vector<std::string> inputs;
  OutputFormat fmt;
};

int run_verify(const VerifyCfg& cfg) {
  rlz::ArchiveReader reader(cfg.archive);
  uint64_t bytes = 0;
  std::unique_ptr<rlz::ConcatSource> expected;
  if (!cfg.inputs.empty()) {
    expected = open_inputs(cfg.inputs);
    if (expected->size() != reader.source_length()) {
      throw rlz::CorruptionError("source length mismatch: archive has " +
                                 std::to_string(reader.source_length()) + ", inputs have " +
                                 std::to_string(expected->size()));
    }
  }
  for (uint64_t b = 0; b < reader.header().block_count; ++b) {
    const std::string block = reader.decode_block(b, nullptr);
    if (expected) {
      const uint64_t start = b * reader.header().block_size();
      if (expected->slice(start, block.size()) != block) {
        throw rlz::CorruptionError("content mismatch in block " + std::to_string(b));
      }
    }
    bytes += block.size();
  }
  if (bytes != reader.source_length()) {
    throw rlz::CorruptionError("decoded length mismatch");
  }
  ordered_json doc;
  doc["command"] = "verify";
  doc["archive"] = cfg.archive;
  doc["blocks"] = reader.header().block_count;
  doc["bytes"] = bytes;
  doc["compared_to_inputs"] = !cfg.inputs.empty();
  doc["ok"] = true;
  emit(doc, cfg.fmt);
  return 0;
}

void add_format_option(CLI::App* cmd, OutputFormat& fmt) {
  cmd->add_option("--format", fmt.name, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blocked relative Lempel-Ziv archive tool"};
  app.require_subcommand(1);

  GenCfg gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic text corpus");
  gen->add_option("--out", gen_cfg.out, "output file")->required();
  gen->add_option("--size", gen_cfg.size_str, "corpus size (suffixes KiB/MiB/GiB)")->required();
  gen->add_option("--seed", gen_cfg.seed, "RNG seed");
  gen->add_option("--novelty", gen_cfg.novelty, "percent of novel segments (0..100)");
  gen->add_option("--repeat-distance", gen_cfg.repeat_str, "max lookback for repeated segments");
  add_format_option(gen, gen_cfg.fmt);

  BuildCfg build_cfg;
  CLI::App* build = app.add_subcommand("build", "compress files into an archive");
  build->add_option("inputs", build_cfg.inputs, "input files, concatenated in order")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--out", build_cfg.out, "archive path")->required();
  build->add_option("--scheme", build_cfg.scheme,
                    "COPY, DEF_BLOCK, DEF_BLOCK_PRIMED, FASTLZ_BLOCK, RLZ_UV, RLZ_PV, "
                    "RLZ_ZZ, RLZ_ZZ_PRIMED or RLZ_ZZZ");
  build->add_option("--block-size", build_cfg.block_str, "block size, power of two >= 4KiB");
  build->add_option("--dict-size", build_cfg.dict_str, "dictionary size (RLZ schemes)");
  build->add_option("--sample-size", build_cfg.sample_size, "dictionary sample size");
  build->add_option("--min-literal", build_cfg.min_literal,
                    "min match length kept as a copy (three-stream schemes)");
  build->add_flag("--manifest", build_cfg.manifest, "record per-input document boundaries");
  add_format_option(build, build_cfg.fmt);

  ExtractCfg extract_cfg;
  CLI::App* extract = app.add_subcommand("extract", "decode a byte range or document");
  extract->add_option("archive", extract_cfg.archive, "archive path")
      ->required()
      ->check(CLI::ExistingFile);
  extract->add_option("--start", extract_cfg.start_str, "range start offset");
  extract->add_option("--len", extract_cfg.len_str, "range length");
  extract->add_option("--doc", extract_cfg.doc_id, "document id from the manifest");
  extract->add_option("--out", extract_cfg.out, "output file (default: stdout)");

  BenchCfg bench_cfg;
  CLI::App* bench = app.add_subcommand("bench", "measure access throughput");
  bench->add_option("archive", bench_cfg.archive, "archive path")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--mode", bench_cfg.mode, "full, random or batch");
  bench->add_option("--queries", bench_cfg.queries, "query count (random/batch)");
  bench->add_option("--fragment", bench_cfg.fragment_str, "fragment size");
  bench->add_option("--seed", bench_cfg.seed, "workload RNG seed");
  bench->add_option("--threads", bench_cfg.threads, "worker threads (random/batch)");
  add_format_option(bench, bench_cfg.fmt);

  StatCfg stat_cfg;
  CLI::App* stat = app.add_subcommand("stat", "report archive layout and factor statistics");
  stat->add_option("archive", stat_cfg.archive, "archive path")
      ->required()
      ->check(CLI::ExistingFile);
  add_format_option(stat, stat_cfg.fmt);

  ModelCfg model_cfg;
  CLI::App* model = app.add_subcommand("model", "predict access performance analytically");
  model->add_option("--media", model_cfg.media, "media preset: hdd or ssd");
  model->add_option("--latency", model_cfg.latency, "seek latency in seconds (overrides preset)");
  model->add_option("--seq-rate", model_cfg.seq_rate,
                    "sequential read rate in bytes/sec (overrides preset)");
  model->add_option("--block-size", model_cfg.block_str, "block size");
  model->add_option("--fragment", model_cfg.fragment_str, "fragment size");
  model->add_option("--rate", model_cfg.rate, "compression rate as a fraction (0,1]");
  model->add_option("--decode-rate", model_cfg.decode_rate, "decode rate in bytes/sec");
  model->add_option("--batch-latency", model_cfg.batch_latency,
                    "effective per-query latency for sorted batches, in seconds");
  model->add_flag("--arithmetic", model_cfg.arithmetic, "show layout arithmetic");
  model->add_option("--dict-size", model_cfg.dict_str, "dictionary size (arithmetic)");
  model->add_option("--corpus-size", model_cfg.corpus_str, "corpus size (arithmetic)");
  model->add_option("--mean-factor-length", model_cfg.mean_factor_length,
                    "expected mean factor length in bytes (arithmetic)");
  model->add_option("--table-entries", model_cfg.table_entries,
                    "block table entry count (arithmetic)");
  add_format_option(model, model_cfg.fmt);

  VerifyCfg verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "decode every block and check integrity");
  verify->add_option("archive", verify_cfg.archive, "archive path")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("inputs", verify_cfg.inputs, "original input files to compare against")
      ->check(CLI::ExistingFile);
  add_format_option(verify, verify_cfg.fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_cfg);
    if (build->parsed()) return run_build(build_cfg);
    if (extract->parsed()) return run_extract(extract_cfg);
    if (bench->parsed()) return run_bench(bench_cfg);
    if (stat->parsed()) return run_stat(stat_cfg);
    if (model->parsed()) return run_model(model_cfg);
    if (verify->parsed()) return run_verify(verify_cfg);
  } catch (const rlz::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rlz::CorruptionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rlz::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
