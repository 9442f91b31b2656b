#include "rlz/perfmodel.hpp"

#include <cmath>

#include "rlz/errors.hpp"

namespace rlz {
namespace {

void validate(const MediaProfile& m) {
  if (m.random_read_latency <= 0 || m.sequential_transfer_rate <= 0)
    throw UsageError("media parameters must be positive");
}

void validate(const ModelInputs& in) {
  if (in.block_size <= 0 || in.fragment_size < 1)
    throw UsageError("block and fragment sizes must be positive");
  if (in.compression_rate <= 0 || in.compression_rate > 1)
    throw UsageError("compression rate must lie in (0, 1]");
  if (in.decode_rate <= 0) throw UsageError("decode rate must be positive");
}

QpsPrediction predict(double latency, const MediaProfile& m,
                      const ModelInputs& in) {
  QpsPrediction p;
  const double decoded_span = in.block_size / 2 + in.fragment_size;
  p.touched_blocks = std::ceil(decoded_span / in.block_size);
  p.breakdown.latency_seconds = latency;
  p.breakdown.transfer_seconds = p.touched_blocks * in.block_size *
                                 in.compression_rate /
                                 m.sequential_transfer_rate;
  p.breakdown.decode_seconds = decoded_span / in.decode_rate;
  p.qps = 1.0 / p.breakdown.total_seconds();
  return p;
}

}  // namespace

std::optional<MediaProfile> media_preset(std::string_view name) {
  if (name == "hdd") return MediaProfile{8.5e-3, 150e6};
  if (name == "ssd") return MediaProfile{0.12e-3, 1000e6};
  return std::nullopt;
}

QpsPrediction predict_random_qps(const MediaProfile& m, const ModelInputs& in) {
  validate(m);
  validate(in);
  return predict(m.random_read_latency, m, in);
}

QpsPrediction predict_batch_qps(const MediaProfile& m, const ModelInputs& in,
                                double batch_latency) {
  validate(m);
  validate(in);
  if (batch_latency <= 0 || batch_latency > m.random_read_latency)
    throw UsageError(
        "batch latency must be positive and at most the random latency");
  return predict(batch_latency, m, in);
}

SequentialPrediction predict_sequential_rate(const MediaProfile& m,
                                             const ModelInputs& in) {
  validate(m);
  validate(in);
  SequentialPrediction p;
  const double transfer =
      in.fragment_size * in.compression_rate / m.sequential_transfer_rate;
  const double decode = in.fragment_size / in.decode_rate;
  p.decode_bound = transfer <= decode;
  p.fragments_per_sec =
      p.decode_bound
          ? in.decode_rate / in.fragment_size
          : m.sequential_transfer_rate / (in.fragment_size * in.compression_rate);
  return p;
}

double bits_per_factor(uint32_t offset_bits, uint32_t length_code_bytes) {
  return offset_bits + 8.0 * length_code_bytes;
}

double expected_factors_per_block(double block_size, double mean_factor_length) {
  if (block_size <= 0 || mean_factor_length <= 0)
    throw UsageError("block size and mean factor length must be positive");
  return block_size / mean_factor_length;
}

double expected_payload_bytes(double block_size, double mean_factor_length,
                              double factor_bits) {
  return expected_factors_per_block(block_size, mean_factor_length) *
         factor_bits / 8.0;
}

double table_size_bytes(double entry_count, double bits_per_entry) {
  if (entry_count < 0 || bits_per_entry <= 0)
    throw UsageError("table arithmetic needs non-negative inputs");
  return entry_count * bits_per_entry / 8.0;
}

}  // namespace rlz
