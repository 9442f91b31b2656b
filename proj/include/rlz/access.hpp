#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "rlz/archive.hpp"

namespace rlz {

inline constexpr uint64_t kDefaultQueryCount = 10000;
inline constexpr uint64_t kDefaultFragmentSize = 16 * 1024;

enum class WorkloadMode { kFull, kRandom, kBatch };

const char* workload_mode_name(WorkloadMode m);
std::optional<WorkloadMode> parse_workload_mode(std::string_view name);

struct Workload {
  WorkloadMode mode = WorkloadMode::kRandom;
  uint64_t fragment_size = kDefaultFragmentSize;
  uint64_t seed = 0;
  std::vector<uint64_t> starts;
};

// FULL enumerates aligned fragments in order (query_count ignored); RANDOM
// draws query_count unaligned starts uniformly over [0, |C|-fragment]; BATCH
// is the same draw sorted ascending.
Workload generate_workload(WorkloadMode mode, uint64_t source_length,
                           uint64_t fragment_size, uint64_t query_count,
                           uint64_t seed);

struct ThroughputReport {
  WorkloadMode mode = WorkloadMode::kRandom;
  uint64_t query_count = 0;
  uint64_t fragment_size = 0;
  bool queries_sorted = false;
  unsigned threads = 1;
  double wall_seconds = 0;
  double fetch_seconds = 0;
  double decode_seconds = 0;
  double fragments_per_sec = 0;
  uint64_t bytes_decoded = 0;
  uint64_t blocks_fetched = 0;
  uint64_t result_hash = 0;  // order-independent multiset hash over fragments
};

// wrapping sum of these per fragment gives the order-independent result hash
uint64_t fragment_hash(std::string_view fragment);

using CacheDropHook = std::function<void()>;

// Executes the workload in order. FULL streams blocks sequentially, decoding
// each touched block once; RANDOM/BATCH go through get_range. threads > 1
// splits a RANDOM/BATCH workload into independent query streams and is meant
// for exploration, not for the single-threaded measurement model.
ThroughputReport run_workload(const ArchiveReader& reader, const Workload& w,
                              const CacheDropHook& drop_cache = {},
                              unsigned threads = 1);

}  // namespace rlz
