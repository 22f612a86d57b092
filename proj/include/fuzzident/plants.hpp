#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzident/dataset.hpp"

namespace fuzzident {

/// A simulated multi-column time series on a uniform time grid.
struct Series {
  std::vector<double> t;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one vector per name

  std::size_t length() const { return t.size(); }
  const std::vector<double>& column(const std::string& name) const;
};

struct MackeyGlassParams {
  double a = 0.2;
  double b = 0.1;
  double C = 10.0;
  double tau = 17.0;
  double x0 = 1.2;
  double dt = 0.1;
  double duration = 1000.0;

  void validate() const;
};

enum class ScenarioKind { Nominal, ParamChange, Noise };

/// Variation applied to the Mackey-Glass decay parameter b while integrating.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Nominal;
  double new_b = 0.15;        // ParamChange: value of b after switch_time
  double switch_time = 0.0;
  double noise_amplitude = 0.05;  // Noise: b = b0 + amplitude * U(0,1) per step
  std::uint64_t seed = 0;

  std::string name() const;
};

/// Fixed-step 4th-order integration of the delay-differential system, with
/// linear interpolation into the stored history for the delayed state.
Series mackey_glass(const MackeyGlassParams& params, const Scenario& scenario);

struct CstrParams {
  double q = 100.0;        // process flow rate, l/min
  double V = 100.0;        // reactor volume, l
  double k0 = 7.2e10;      // reaction rate constant, 1/min
  double E_over_R = 1e4;   // activation energy, K
  double T0 = 350.0;       // feed temperature, K
  double Tc0 = 350.0;      // inlet coolant temperature, K
  double dH = -2e5;        // heat of reaction, cal/mol (exothermic)
  double Cp = 1.0;         // specific heat, cal/g/K
  double Cpc = 1.0;
  double rho = 1e3;        // liquid density, g/l
  double rho_c = 1e3;
  double ha = 7e5;         // heat transfer coefficient, cal/min/K
  double Ca0 = 1.0;        // inlet feed concentration, mol/l

  // derived constants, always recomputed
  double k1() const { return -dH * k0 / (rho * Cp); }
  double k2() const { return rho_c * Cpc / (rho * Cp * V); }
  double k3() const { return ha / (rho_c * Cpc); }

  void validate() const;
};

struct CstrState {
  double Ca = 0.1;    // mol/l
  double T = 438.5;   // K
};

/// Piecewise-constant coolant flow rate: cycles through `levels`, holding
/// each for `dwell` minutes.
struct QcProfile {
  std::vector<double> levels{103.411};
  double dwell = 1e30;

  double at(double t) const;
  static QcProfile paper_steps();  // 103, 105, 110, 100, 99, 110 l/min
};

/// Optional sinusoidal modulation of the inlet coolant temperature,
/// Tc0 + amplitude * sin(k) with k the sample index.
struct Tc0Disturbance {
  bool enabled = false;
  double amplitude = 5.0;
  double sample_period = 0.1;  // minutes per index increment

  double apply(double tc0, double t) const;
};

/// Fixed-step 4th-order integration of the two coupled reactor ODEs.
Series cstr_simulate(const CstrParams& params, const QcProfile& qc,
                     const Tc0Disturbance& disturbance, double dt,
                     double duration, CstrState initial = {});

/// One lagged input column of a regression dataset.
struct LagTerm {
  std::string column;
  int lag_steps = 0;
};

/// Lag-embed a series into (inputs, target) samples. The target leads by
/// `lead_steps`; rows are taken every `stride` grid points.
TimeSeriesDataset build_regression_dataset(const Series& series,
                                           const std::vector<LagTerm>& inputs,
                                           const std::string& target_column,
                                           int lead_steps, int stride = 1);

/// Standard chaotic-series embedding: x(t), x(t-6), x(t-12), x(t-18) with
/// target x(t+6), one row per time unit.
TimeSeriesDataset mackey_glass_embedding(const Series& series, double dt);

/// One-step-ahead reactor embedding at the 0.1 min sampling period:
/// Ca(k), Ca(k-1), Ca(k-2), qc(k-1) with target Ca(k+1).
TimeSeriesDataset cstr_embedding(const Series& series, double dt);

void write_series_csv(const Series& series, const std::string& path);
Series read_series_csv(const std::string& path);

}  // namespace fuzzident
