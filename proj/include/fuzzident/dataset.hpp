#pragma once

#include <string>
#include <vector>

namespace fuzzident {

/// Ordered (input vector, target) samples with provenance metadata.
struct TimeSeriesDataset {
  std::vector<std::string> input_names;
  std::vector<std::vector<double>> inputs;  // row-major, one row per sample
  std::vector<double> targets;
  std::string plant;
  std::string scenario;

  std::size_t size() const { return inputs.size(); }
  std::size_t arity() const { return input_names.size(); }

  /// Chronological head/tail split at `fraction` of the samples.
  std::pair<TimeSeriesDataset, TimeSeriesDataset> split(double fraction) const;
};

/// Render a double with 17 significant digits (bit-exact round trip).
std::string format_double(double v);

void write_dataset_csv(const TimeSeriesDataset& ds, const std::string& path);
TimeSeriesDataset read_dataset_csv(const std::string& path);

}  // namespace fuzzident
