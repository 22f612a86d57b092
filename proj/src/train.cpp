#include "fuzzident/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace fuzzident {

namespace {

TimeSeriesDataset normalize_dataset(const TimeSeriesDataset& raw,
                                    const Normalization& norm) {
  TimeSeriesDataset unit = raw;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = 0; j < raw.arity(); ++j) {
      unit.inputs[i][j] = norm.to_unit_input(j, raw.inputs[i][j]);
    }
    unit.targets[i] = norm.to_unit_output(raw.targets[i]);
  }
  return unit;
}

Normalization fit_normalization(const TimeSeriesDataset& ds) {
  Normalization norm;
  const std::size_t n = ds.arity();
  norm.input_min.assign(n, std::numeric_limits<double>::infinity());
  norm.input_max.assign(n, -std::numeric_limits<double>::infinity());
  norm.output_min = std::numeric_limits<double>::infinity();
  norm.output_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      norm.input_min[j] = std::min(norm.input_min[j], ds.inputs[i][j]);
      norm.input_max[j] = std::max(norm.input_max[j], ds.inputs[i][j]);
    }
    norm.output_min = std::min(norm.output_min, ds.targets[i]);
    norm.output_max = std::max(norm.output_max, ds.targets[i]);
  }
  return norm;
}

// Grid of M^n rules with uniformly spaced centers over [0, 1] per input.
FuzzyModel grid_model(int arity, int mfs_per_input,
                      const Composition& composition,
                      const TimeSeriesDataset& unit_data) {
  const int M = mfs_per_input;
  std::vector<double> centers(M);
  for (int m = 0; m < M; ++m) {
    centers[m] = (M == 1) ? 0.5 : static_cast<double>(m) / (M - 1);
  }
  const double spread = (M == 1) ? 0.5 : 0.5 / (M - 1);

  FuzzyModel model;
  model.composition = composition;
  model.input_arity = arity;

  std::vector<int> index(arity, 0);
  const std::size_t rule_count =
      static_cast<std::size_t>(std::pow(M, arity) + 0.5);
  for (std::size_t r = 0; r < rule_count; ++r) {
    Rule rule;
    for (int j = 0; j < arity; ++j) {
      rule.antecedents.emplace_back(centers[index[j]], spread);
    }
    // consequent: target of the nearest training sample to this center vector
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < unit_data.size(); ++i) {
      double dist = 0.0;
      for (int j = 0; j < arity; ++j) {
        const double d = unit_data.inputs[i][j] - rule.antecedents[j].center;
        dist += d * d;
      }
      if (dist < best) {
        best = dist;
        rule.consequent_center = unit_data.targets[i];
      }
    }
    model.rules.push_back(std::move(rule));
    for (int j = arity - 1; j >= 0; --j) {
      if (++index[j] < M) break;
      index[j] = 0;
    }
  }
  return model;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(alpha_c > 0.0 && alpha_delta > 0.0 && alpha_d > 0.0)) {
    throw std::invalid_argument("step lengths must be positive");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
}

double batch_error(const FuzzyModel& model, const TimeSeriesDataset& dataset,
                   std::size_t window_start, int horizon) {
  if (horizon < 0 ||
      window_start + static_cast<std::size_t>(horizon) >= dataset.size()) {
    throw std::out_of_range("batch_error: window outside dataset");
  }
  double sum = 0.0;
  for (int t = 0; t <= horizon; ++t) {
    const auto& x = dataset.inputs[window_start + t];
    const double e = predict(model, x).output - dataset.targets[window_start + t];
    sum += e * e;
  }
  return sum / (2.0 * std::max(horizon, 1));
}

Gradients gradients(const FuzzyModel& model, std::span<const double> x,
                    double target) {
  const Prediction p = predict_core(model, x);
  const double e = p.output - target;
  const std::size_t r = model.rules.size();
  const std::size_t n = static_cast<std::size_t>(model.input_arity);

  double strength_sum = 0.0;
  for (double s : p.record.strengths) strength_sum += s;

  Gradients g;
  g.d_center.assign(r, std::vector<double>(n, 0.0));
  g.d_spread.assign(r, std::vector<double>(n, 0.0));
  g.d_consequent.assign(r, 0.0);

  for (std::size_t i = 0; i < r; ++i) {
    g.d_consequent[i] = e * p.record.strengths[i] / strength_sum;
    const double dE_dstrength =
        e * (model.rules[i].consequent_center - p.output) / strength_sum;
    const std::vector<double> fold_grad =
        rule_strength_grad(model, i, p.record.memberships[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const GaussianMF& mf = model.rules[i].antecedents[j];
      const double common = dE_dstrength * fold_grad[j];
      g.d_center[i][j] = common * dmu_dc(mf, x[j]);
      g.d_spread[i][j] = common * dmu_ddelta(mf, x[j]);
    }
  }
  return g;
}

void update_step(FuzzyModel& model, const Gradients& grads,
                 const TrainConfig& config) {
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    Rule& rule = model.rules[i];
    for (std::size_t j = 0; j < rule.antecedents.size(); ++j) {
      GaussianMF& mf = rule.antecedents[j];
      mf.center -= config.alpha_c * grads.d_center[i][j];
      mf.spread -= config.alpha_delta * grads.d_spread[i][j];
      mf.spread = std::max(mf.spread, config.spread_floor);
    }
    rule.consequent_center -= config.alpha_d * grads.d_consequent[i];
  }
}

std::pair<FuzzyModel, TrainReport> identify(const TimeSeriesDataset& dataset,
                                            int mfs_per_input,
                                            const Composition& composition,
                                            const TrainConfig& config) {
  config.validate();
  if (dataset.size() == 0) throw std::invalid_argument("identify: empty dataset");
  if (mfs_per_input < 1) {
    throw std::invalid_argument("identify: mfs_per_input must be >= 1");
  }
  const int arity = static_cast<int>(dataset.arity());
  const Normalization norm = fit_normalization(dataset);
  const TimeSeriesDataset unit = normalize_dataset(dataset, norm);
  const FuzzyModel base = grid_model(arity, mfs_per_input, composition, unit);
  const double center_gap =
      (mfs_per_input == 1) ? 1.0 : 1.0 / (mfs_per_input - 1);

  TrainReport report;
  FuzzyModel best_model;
  double best_error = std::numeric_limits<double>::infinity();
  double best_rms_unit = 0.0;

  for (int restart = 0; restart < config.restarts; ++restart) {
    FuzzyModel model = base;
    if (restart > 0) {
      std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(restart));
      std::uniform_real_distribution<double> jitter(-0.1 * center_gap,
                                                    0.1 * center_gap);
      for (Rule& rule : model.rules) {
        for (GaussianMF& mf : rule.antecedents) mf.center += jitter(rng);
      }
    }

    double epoch_error = 0.0;
    int epochs = 0;
    std::string termination = "max_epochs";
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
      bool updated = false;
      for (std::size_t k = 0; k < unit.size(); ++k) {
        const auto& x = unit.inputs[k];
        const double e = predict_core(model, x).output - unit.targets[k];
        if (std::abs(e) > config.epsilon) {
          update_step(model, gradients(model, x, unit.targets[k]), config);
          updated = true;
        }
      }
      epoch_error =
          batch_error(model, unit, 0, static_cast<int>(unit.size()) - 1);
      if (!std::isfinite(epoch_error)) {
        throw std::runtime_error("identify: non-finite error at restart " +
                                 std::to_string(restart) + ", epoch " +
                                 std::to_string(epoch));
      }
      report.history.push_back({restart, epoch, epoch_error});
      epochs = epoch;
      if (!updated) {
        termination = "tolerance";
        break;
      }
    }

    if (epoch_error < best_error) {
      best_error = epoch_error;
      best_model = model;
      report.winner_restart = restart;
      report.epochs_used = epochs;
      report.termination = termination;
      double ss = 0.0;
      for (std::size_t k = 0; k < unit.size(); ++k) {
        const double e = predict_core(model, unit.inputs[k]).output - unit.targets[k];
        ss += e * e;
      }
      best_rms_unit = std::sqrt(ss / unit.size());
    }
  }

  report.final_error = best_error;
  report.final_rms = best_rms_unit * norm.output_range();
  best_model.normalization = norm;
  return {std::move(best_model), std::move(report)};
}

void write_convergence_csv(const TrainReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "restart,epoch,E\n";
  for (const auto& entry : report.history) {
    out << entry.restart << "," << entry.epoch << ","
        << format_double(entry.error) << "\n";
  }
}

}  // namespace fuzzident
