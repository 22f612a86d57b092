#include "fuzzident/adapt.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fuzzident/train.hpp"

namespace fuzzident {

void AdaptConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(alpha_c > 0.0 && alpha_delta > 0.0 && alpha_d > 0.0)) {
    throw std::invalid_argument("step lengths must be positive");
  }
  if (rms_window < 1) throw std::invalid_argument("rms_window must be >= 1");
}

SelfLearnResult self_learn_step(FuzzyModel& model, std::span<const double> x,
                                double y, const AdaptConfig& config) {
  config.validate();
  SelfLearnResult result;
  result.prediction = predict(model, x).output;

  // the threshold test runs in the units training used
  double unit_error;
  std::vector<double> unit_x(x.begin(), x.end());
  double unit_y = y;
  if (model.normalization) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      unit_x[j] = model.normalization->to_unit_input(j, x[j]);
    }
    unit_y = model.normalization->to_unit_output(y);
    unit_error = model.normalization->to_unit_output(result.prediction) - unit_y;
  } else {
    unit_error = result.prediction - y;
  }

  if (std::abs(unit_error) > config.epsilon) {
    TrainConfig step;
    step.alpha_c = config.alpha_c;
    step.alpha_delta = config.alpha_delta;
    step.alpha_d = config.alpha_d;
    step.spread_floor = config.spread_floor;
    update_step(model, gradients(model, unit_x, unit_y), step);
    result.updated = true;
  }
  return result;
}

AdaptTrace run_online(FuzzyModel& model, const TimeSeriesDataset& stream,
                      const AdaptConfig& config) {
  config.validate();
  AdaptTrace trace;
  if (config.horizon == 0) return trace;
  if (stream.size() == 0) {
    throw std::invalid_argument("run_online: empty stream");
  }
  std::size_t limit = stream.size();
  if (config.horizon > 0) {
    limit = std::min(limit, static_cast<std::size_t>(config.horizon));
  }
  double window_sum = 0.0;
  for (std::size_t k = 0; k < limit; ++k) {
    const SelfLearnResult r =
        self_learn_step(model, stream.inputs[k], stream.targets[k], config);
    AdaptTrace::Step step;
    step.k = k;
    step.y_hat = r.prediction;
    step.y = stream.targets[k];
    step.e = r.prediction - stream.targets[k];
    step.updated = r.updated;
    trace.steps.push_back(step);

    window_sum += step.e * step.e;
    const std::size_t w = static_cast<std::size_t>(config.rms_window);
    if (trace.steps.size() > w) {
      const double old = trace.steps[trace.steps.size() - 1 - w].e;
      window_sum -= old * old;
    }
    const std::size_t count = std::min(trace.steps.size(), w);
    trace.trailing_rms.push_back(std::sqrt(std::max(window_sum, 0.0) / count));
  }
  return trace;
}

void write_trace_csv(const AdaptTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "k,y_hat,y,e,updated\n";
  for (const auto& s : trace.steps) {
    out << s.k << "," << format_double(s.y_hat) << "," << format_double(s.y)
        << "," << format_double(s.e) << "," << (s.updated ? 1 : 0) << "\n";
  }
}

}  // namespace fuzzident
