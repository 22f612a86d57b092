#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzident/dataset.hpp"
#include "fuzzident/model.hpp"

namespace fuzzident {

struct TrainConfig {
  double alpha_c = 0.01;
  double alpha_delta = 0.01;
  double alpha_d = 0.01;
  double epsilon = 1e-3;      // per-sample |e| threshold, normalized units
  int horizon = 1;            // reporting window length for batch_error
  int max_epochs = 500;
  int restarts = 2;
  std::uint64_t seed = 0;
  double spread_floor = 1e-4; // minimum spread after an update, normalized units

  void validate() const;
};

struct TrainReport {
  struct EpochEntry {
    int restart = 0;
    int epoch = 0;
    double error = 0.0;  // full-pass batch error, normalized units
  };
  std::vector<EpochEntry> history;
  int winner_restart = 0;
  int epochs_used = 0;
  double final_error = 0.0;     // winner's last epoch E
  double final_rms = 0.0;       // training RMS in raw output units
  std::string termination;      // "tolerance" or "max_epochs"
};

/// Parameter gradients of the single-sample squared error, shaped like the
/// model: one entry per (rule, input) for centers/spreads, one per rule for
/// consequents.
struct Gradients {
  std::vector<std::vector<double>> d_center;
  std::vector<std::vector<double>> d_spread;
  std::vector<double> d_consequent;
};

/// (1 / 2 max(T,1)) * sum_{t=0..T} e(k+t)^2 over the dataset window.
double batch_error(const FuzzyModel& model, const TimeSeriesDataset& dataset,
                   std::size_t window_start, int horizon);

/// Error gradients at one sample (model units); the residual factor makes
/// every entry vanish when the prediction is exact.
Gradients gradients(const FuzzyModel& model, std::span<const double> x,
                    double target);

/// One gradient-descent step; touches only centers, spreads and consequent
/// centers, with the spread floor applied after the spread update.
void update_step(FuzzyModel& model, const Gradients& grads,
                 const TrainConfig& config);

/// Batch identification with grid initialization and seeded multi-start.
/// The dataset is taken in raw units; the returned model carries the min-max
/// normalization computed from it.
std::pair<FuzzyModel, TrainReport> identify(const TimeSeriesDataset& dataset,
                                            int mfs_per_input,
                                            const Composition& composition,
                                            const TrainConfig& config);

/// Convergence history as (restart, epoch, E) rows.
void write_convergence_csv(const TrainReport& report, const std::string& path);

}  // namespace fuzzident
