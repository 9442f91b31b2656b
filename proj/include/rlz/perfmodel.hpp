#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace rlz {

// Rates use SI units throughout: 1 MB/s = 1e6 bytes/second.
struct MediaProfile {
  double random_read_latency;       // seconds per random access
  double sequential_transfer_rate;  // bytes/second
};

std::optional<MediaProfile> media_preset(std::string_view name);  // hdd, ssd

struct ModelInputs {
  double block_size = 16 * 1024;     // bytes
  double fragment_size = 16 * 1024;  // bytes
  double compression_rate = 1.0;     // compressed fraction of original, (0, 1]
  double decode_rate = 260e6;        // decoded output bytes/second
};

struct AccessBreakdown {
  double latency_seconds = 0;
  double transfer_seconds = 0;
  double decode_seconds = 0;

  double total_seconds() const {
    return latency_seconds + transfer_seconds + decode_seconds;
  }
};

struct QpsPrediction {
  double qps = 0;
  double touched_blocks = 0;
  AccessBreakdown breakdown;
};

// Expected-case random fragment query: one seek, transfer of the touched
// blocks' compressed bytes, decode from the first block's start (expected
// in-block offset block_size/2) through the fragment end.
QpsPrediction predict_random_qps(const MediaProfile& m, const ModelInputs& in);

// Same arithmetic with the seek-plus-latency term replaced by the reduced
// elevator-order figure.
QpsPrediction predict_batch_qps(const MediaProfile& m, const ModelInputs& in,
                                double batch_latency);

struct SequentialPrediction {
  double fragments_per_sec = 0;
  bool decode_bound = false;
};

// Streaming decode rate: decode-bound when sequential transfer of the
// compressed stream keeps up with the decoder, transfer-bound otherwise.
SequentialPrediction predict_sequential_rate(const MediaProfile& m,
                                             const ModelInputs& in);

// worked-arithmetic helpers behind the model CLI's arithmetic table
double bits_per_factor(uint32_t offset_bits, uint32_t length_code_bytes);
double expected_factors_per_block(double block_size, double mean_factor_length);
double expected_payload_bytes(double block_size, double mean_factor_length,
                              double factor_bits);
double table_size_bytes(double entry_count, double bits_per_entry);

}  // namespace rlz
