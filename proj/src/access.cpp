#include "rlz/access.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <thread>

#include "rlz/errors.hpp"
#include "rlz/rng.hpp"

namespace rlz {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct StreamTotals {
  double fetch_seconds = 0;
  double decode_seconds = 0;
  uint64_t bytes = 0;
  uint64_t blocks = 0;
  uint64_t hash = 0;
};

StreamTotals run_queries(const ArchiveReader& reader, const Workload& w,
                         size_t begin, size_t end) {
  StreamTotals t;
  AccessStats stats;
  for (size_t i = begin; i < end; ++i) {
    const std::string fragment =
        reader.get_range(w.starts[i], w.fragment_size, &stats);
    t.hash += fragment_hash(fragment);
    t.bytes += fragment.size();
  }
  t.fetch_seconds = stats.fetch_seconds;
  t.decode_seconds = stats.decode_seconds;
  t.blocks = stats.blocks_fetched;
  return t;
}

}  // namespace

const char* workload_mode_name(WorkloadMode m) {
  switch (m) {
    case WorkloadMode::kFull:
      return "FULL";
    case WorkloadMode::kRandom:
      return "RANDOM";
    case WorkloadMode::kBatch:
      return "BATCH";
  }
  return "UNKNOWN";
}

std::optional<WorkloadMode> parse_workload_mode(std::string_view name) {
  std::string upper(name);
  for (char& c : upper)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "FULL") return WorkloadMode::kFull;
  if (upper == "RANDOM") return WorkloadMode::kRandom;
  if (upper == "BATCH") return WorkloadMode::kBatch;
  return std::nullopt;
}

Workload generate_workload(WorkloadMode mode, uint64_t source_length,
                           uint64_t fragment_size, uint64_t query_count,
                           uint64_t seed) {
  if (fragment_size == 0) throw UsageError("fragment size must be positive");
  if (fragment_size > source_length)
    throw UsageError("fragment size exceeds the corpus length");

  Workload w;
  w.mode = mode;
  w.fragment_size = fragment_size;
  w.seed = seed;
  if (mode == WorkloadMode::kFull) {
    w.starts.reserve(static_cast<size_t>(
        (source_length + fragment_size - 1) / fragment_size));
    for (uint64_t p = 0; p < source_length; p += fragment_size)
      w.starts.push_back(p);
  } else {
    std::mt19937_64 rng(seed);
    const uint64_t bound = source_length - fragment_size + 1;
    w.starts.reserve(query_count);
    for (uint64_t i = 0; i < query_count; ++i)
      w.starts.push_back(uniform_below(rng, bound));
    if (mode == WorkloadMode::kBatch)
      std::sort(w.starts.begin(), w.starts.end());
  }
  return w;
}

uint64_t fragment_hash(std::string_view fragment) {
  return mix64(fnv1a64(fragment));
}

ThroughputReport run_workload(const ArchiveReader& reader, const Workload& w,
                              const CacheDropHook& drop_cache, unsigned threads) {
  if (w.starts.empty()) throw UsageError("workload holds no queries");
  if (threads == 0) threads = 1;
  if (drop_cache) drop_cache();

  ThroughputReport report;
  report.mode = w.mode;
  report.query_count = w.starts.size();
  report.fragment_size = w.fragment_size;
  report.queries_sorted = w.mode != WorkloadMode::kRandom;
  report.threads = w.mode == WorkloadMode::kFull ? 1 : threads;

  const auto t0 = Clock::now();
  if (w.mode == WorkloadMode::kFull) {
    // sequential streaming decode: each touched block decoded exactly once
    AccessStats stats;
    const uint64_t source = reader.source_length();
    uint64_t current = UINT64_MAX;
    std::string decoded;
    std::string fragment;
    for (const uint64_t start : w.starts) {
      const uint64_t end = std::min(start + w.fragment_size, source);
      fragment.clear();
      const BlockRange range = locate_blocks(reader.header(), start, end - start);
      for (uint64_t b = range.first_block; b <= range.last_block; ++b) {
        if (b != current) {
          const std::string payload = reader.fetch_payload(b, &stats);
          const auto d0 = Clock::now();
          decoded = reader.decode_payload(b, payload);
          stats.decode_seconds += seconds_since(d0);
          current = b;
        }
        const uint64_t block_start = b * reader.header().block_size();
        const uint64_t from = start > block_start ? start - block_start : 0;
        const uint64_t to =
            std::min<uint64_t>(decoded.size(), end - block_start);
        fragment.append(decoded, from, to - from);
      }
      report.result_hash += fragment_hash(fragment);
      report.bytes_decoded += fragment.size();
    }
    report.fetch_seconds = stats.fetch_seconds;
    report.decode_seconds = stats.decode_seconds;
    report.blocks_fetched = stats.blocks_fetched;
  } else if (report.threads == 1) {
    const StreamTotals t = run_queries(reader, w, 0, w.starts.size());
    report.fetch_seconds = t.fetch_seconds;
    report.decode_seconds = t.decode_seconds;
    report.bytes_decoded = t.bytes;
    report.blocks_fetched = t.blocks;
    report.result_hash = t.hash;
  } else {
    std::vector<StreamTotals> totals(report.threads);
    std::vector<std::thread> pool;
    const size_t per = (w.starts.size() + report.threads - 1) / report.threads;
    for (unsigned i = 0; i < report.threads; ++i) {
      const size_t begin = std::min<size_t>(i * per, w.starts.size());
      const size_t end = std::min<size_t>(begin + per, w.starts.size());
      pool.emplace_back([&, i, begin, end] {
        totals[i] = run_queries(reader, w, begin, end);
      });
    }
    for (auto& th : pool) th.join();
    for (const StreamTotals& t : totals) {
      report.fetch_seconds += t.fetch_seconds;
      report.decode_seconds += t.decode_seconds;
      report.bytes_decoded += t.bytes;
      report.blocks_fetched += t.blocks;
      report.result_hash += t.hash;
    }
  }
  report.wall_seconds = seconds_since(t0);
  report.fragments_per_sec =
      report.wall_seconds > 0 ? report.query_count / report.wall_seconds : 0;
  return report;
}

}  // namespace rlz
