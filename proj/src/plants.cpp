#include "fuzzident/plants.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fuzzident {

namespace {

void check_finite(double v, const char* what, double t) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string(what) +
                             ": non-finite state at t = " + std::to_string(t));
  }
}

}  // namespace

const std::vector<double>& Series::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw std::invalid_argument("series has no column \"" + name + "\"");
}

void MackeyGlassParams::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(dt > 0.0) || dt > tau / 10.0) {
    throw std::invalid_argument("dt must satisfy 0 < dt <= tau/10");
  }
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
}

std::string Scenario::name() const {
  switch (kind) {
    case ScenarioKind::Nominal: return "nominal";
    case ScenarioKind::ParamChange: return "param_change";
    case ScenarioKind::Noise: return "noise";
  }
  return "unknown";
}

Series mackey_glass(const MackeyGlassParams& params, const Scenario& scenario) {
  params.validate();
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(params.duration / params.dt));
  std::vector<double> x(steps + 1);
  x[0] = params.x0;

  // delayed state by linear interpolation over the computed grid;
  // constant pre-history x(t) = x0 for t <= 0
  auto delayed = [&](double t) {
    if (t <= 0.0) return params.x0;
    const double pos = t / params.dt;
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= x.size()) return x.back();
    const double frac = pos - static_cast<double>(i);
    return x[i] + frac * (x[i + 1] - x[i]);
  };

  std::mt19937_64 rng(scenario.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * params.dt;
    double b = params.b;
    switch (scenario.kind) {
      case ScenarioKind::Nominal: break;
      case ScenarioKind::ParamChange:
        if (t >= scenario.switch_time) b = scenario.new_b;
        break;
      case ScenarioKind::Noise:
        b = params.b + scenario.noise_amplitude * unit(rng);
        break;
    }
    auto f = [&](double xv, double xd) {
      return params.a * xd / (1.0 + std::pow(xd, params.C)) - b * xv;
    };
    const double h = params.dt;
    const double xd0 = delayed(t - params.tau);
    const double xdh = delayed(t + 0.5 * h - params.tau);
    const double xd1 = delayed(t + h - params.tau);
    const double k1 = f(x[k], xd0);
    const double k2 = f(x[k] + 0.5 * h * k1, xdh);
    const double k3 = f(x[k] + 0.5 * h * k2, xdh);
    const double k4 = f(x[k] + h * k3, xd1);
    x[k + 1] = x[k] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_finite(x[k + 1], "mackey_glass", t);
  }

  Series series;
  series.names = {"x"};
  series.t.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    series.t[k] = static_cast<double>(k) * params.dt;
  }
  series.columns.push_back(std::move(x));
  return series;
}

void CstrParams::validate() const {
  if (!(q > 0 && V > 0 && k0 > 0 && E_over_R > 0 && T0 > 0 && Tc0 > 0 &&
        Cp > 0 && Cpc > 0 && rho > 0 && rho_c > 0 && ha > 0 && Ca0 > 0)) {
    throw std::invalid_argument("CSTR physical constants must be positive");
  }
  if (!(dH < 0)) {
    throw std::invalid_argument("dH must be negative (exothermic reaction)");
  }
}

double QcProfile::at(double t) const {
  if (levels.empty()) throw std::invalid_argument("empty qc profile");
  std::size_t idx = static_cast<std::size_t>(t / dwell);
  if (idx >= levels.size()) idx = levels.size() - 1;
  return levels[idx];
}

QcProfile QcProfile::paper_steps() {
  QcProfile p;
  p.levels = {103.0, 105.0, 110.0, 100.0, 99.0, 110.0};
  p.dwell = 10.0;  // 100 samples at the 0.1 min sampling period
  return p;
}

double Tc0Disturbance::apply(double tc0, double t) const {
  if (!enabled) return tc0;
  const double k = std::floor(t / sample_period);
  return tc0 + amplitude * std::sin(k);
}

Series cstr_simulate(const CstrParams& params, const QcProfile& qc,
                     const Tc0Disturbance& disturbance, double dt,
                     double duration, CstrState initial) {
  params.validate();
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("dt and duration must be positive");
  }
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(duration / dt));
  const double c1 = params.k1(), c2 = params.k2(), c3 = params.k3();

  Series series;
  series.names = {"Ca", "T", "qc", "Tc0"};
  series.columns.assign(4, {});
  series.t.reserve(steps + 1);

  CstrState s = initial;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double qct = qc.at(t);
    if (!(qct > 0.0)) {
      throw std::invalid_argument("coolant flow rate must stay positive");
    }
    const double tc0 = disturbance.apply(params.Tc0, t);
    series.t.push_back(t);
    series.columns[0].push_back(s.Ca);
    series.columns[1].push_back(s.T);
    series.columns[2].push_back(qct);
    series.columns[3].push_back(tc0);
    if (k == steps) break;

    // inputs held constant across the step; the reaction heat enters with a
    // positive sign (k1 > 0 for exothermic dH), which reproduces the nominal
    // steady state Ca = 0.1 mol/l, T = 438.5 K at qc = 103.411 l/min
    auto f = [&](const CstrState& st, double* dCa, double* dT) {
      const double rate = params.k0 * st.Ca * std::exp(-params.E_over_R / st.T);
      *dCa = params.q / params.V * (params.Ca0 - st.Ca) - rate;
      *dT = params.q / params.V * (params.T0 - st.T) +
            c1 / params.k0 * rate +
            c2 * qct * (1.0 - std::exp(-c3 / qct)) * (tc0 - st.T);
    };
    double dCa1, dT1, dCa2, dT2, dCa3, dT3, dCa4, dT4;
    f(s, &dCa1, &dT1);
    f({s.Ca + 0.5 * dt * dCa1, s.T + 0.5 * dt * dT1}, &dCa2, &dT2);
    f({s.Ca + 0.5 * dt * dCa2, s.T + 0.5 * dt * dT2}, &dCa3, &dT3);
    f({s.Ca + dt * dCa3, s.T + dt * dT3}, &dCa4, &dT4);
    s.Ca += dt / 6.0 * (dCa1 + 2.0 * dCa2 + 2.0 * dCa3 + dCa4);
    s.T += dt / 6.0 * (dT1 + 2.0 * dT2 + 2.0 * dT3 + dT4);
    check_finite(s.Ca, "cstr_simulate", t);
    check_finite(s.T, "cstr_simulate", t);
  }
  return series;
}

TimeSeriesDataset build_regression_dataset(const Series& series,
                                           const std::vector<LagTerm>& inputs,
                                           const std::string& target_column,
                                           int lead_steps, int stride) {
  if (inputs.empty()) throw std::invalid_argument("no input lag terms");
  if (lead_steps < 0 || stride < 1) {
    throw std::invalid_argument("lead_steps must be >= 0 and stride >= 1");
  }
  int deepest = 0;
  for (const LagTerm& term : inputs) {
    if (term.lag_steps < 0) throw std::invalid_argument("negative lag");
    deepest = std::max(deepest, term.lag_steps);
  }
  const std::size_t n = series.length();
  if (n <= static_cast<std::size_t>(deepest + lead_steps)) {
    throw std::invalid_argument("series too short for the requested lags");
  }
  const std::vector<double>& target = series.column(target_column);

  TimeSeriesDataset ds;
  for (const LagTerm& term : inputs) {
    ds.input_names.push_back(term.column + "_lag" +
                             std::to_string(term.lag_steps));
  }
  for (std::size_t k = static_cast<std::size_t>(deepest);
       k + static_cast<std::size_t>(lead_steps) < n;
       k += static_cast<std::size_t>(stride)) {
    std::vector<double> row;
    row.reserve(inputs.size());
    for (const LagTerm& term : inputs) {
      row.push_back(series.column(term.column)[k - term.lag_steps]);
    }
    ds.inputs.push_back(std::move(row));
    ds.targets.push_back(target[k + lead_steps]);
  }
  return ds;
}

TimeSeriesDataset mackey_glass_embedding(const Series& series, double dt) {
  const int lag = static_cast<int>(std::llround(6.0 / dt));
  const int stride = std::max(1, static_cast<int>(std::llround(1.0 / dt)));
  TimeSeriesDataset ds = build_regression_dataset(
      series, {{"x", 0}, {"x", lag}, {"x", 2 * lag}, {"x", 3 * lag}}, "x", lag,
      stride);
  ds.plant = "mackey-glass";
  return ds;
}

TimeSeriesDataset cstr_embedding(const Series& series, double dt) {
  const int step = std::max(1, static_cast<int>(std::llround(0.1 / dt)));
  TimeSeriesDataset ds = build_regression_dataset(
      series, {{"Ca", 0}, {"Ca", step}, {"Ca", 2 * step}, {"qc", step}}, "Ca",
      step, step);
  ds.plant = "cstr";
  return ds;
}

void write_series_csv(const Series& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "t";
  for (const std::string& name : series.names) out << "," << name;
  out << "\n";
  for (std::size_t k = 0; k < series.length(); ++k) {
    out << format_double(series.t[k]);
    for (const auto& col : series.columns) out << "," << format_double(col[k]);
    out << "\n";
  }
}

Series read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series: " + path);
  Series series;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty series: " + path);
  {
    std::stringstream header(line);
    std::string field;
    bool first = true;
    while (std::getline(header, field, ',')) {
      if (first) {
        if (field != "t") throw std::runtime_error("series must start with t");
        first = false;
      } else {
        series.names.push_back(field);
      }
    }
  }
  series.columns.assign(series.names.size(), {});
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(ss, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(row) +
                                 ": bad number \"" + field + "\"");
      }
    }
    if (values.size() != series.names.size() + 1) {
      throw std::runtime_error(path + ":" + std::to_string(row) +
                               ": wrong column count");
    }
    series.t.push_back(values[0]);
    for (std::size_t c = 0; c < series.names.size(); ++c) {
      series.columns[c].push_back(values[c + 1]);
    }
  }
  return series;
}

}  // namespace fuzzident
