#pragma once

#include <string>
#include <vector>

#include "fuzzident/dataset.hpp"
#include "fuzzident/model.hpp"

namespace fuzzident {

struct AdaptConfig {
  double epsilon = 1e-3;  // |e| threshold, normalized output units
  double alpha_c = 0.01;
  double alpha_delta = 0.01;
  double alpha_d = 0.01;
  long horizon = -1;      // max steps to process, -1 = whole stream
  int rms_window = 50;    // trailing window for reported RMS
  double spread_floor = 1e-4;

  void validate() const;
};

struct AdaptTrace {
  struct Step {
    std::size_t k = 0;
    double y_hat = 0.0;
    double y = 0.0;
    double e = 0.0;       // raw units
    bool updated = false;
  };
  std::vector<Step> steps;
  std::vector<double> trailing_rms;  // per step, raw units

  std::size_t size() const { return steps.size(); }
};

struct SelfLearnResult {
  double prediction = 0.0;
  bool updated = false;
};

/// One pass of the online loop: predict, compare |e| against epsilon, and
/// apply a single gradient step when the threshold is exceeded.
SelfLearnResult self_learn_step(FuzzyModel& model, std::span<const double> x,
                                double y, const AdaptConfig& config);

/// Sequential self-learning over a recorded stream.
AdaptTrace run_online(FuzzyModel& model, const TimeSeriesDataset& stream,
                      const AdaptConfig& config);

void write_trace_csv(const AdaptTrace& trace, const std::string& path);

}  // namespace fuzzident
