#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzident/adapt.hpp"
#include "fuzzident/norms.hpp"
#include "fuzzident/train.hpp"

namespace fuzzident {

/// Full description of one benchmark study: plant, model structure,
/// compositions to compare and the training/adaptation settings.
struct ExperimentSpec {
  std::string plant = "mackey-glass";  // "mackey-glass" or "cstr"
  std::vector<Composition> compositions;
  int mfs_per_input = 2;
  TrainConfig train;
  AdaptConfig adapt;
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  /// The canned chaotic time-series study: four compositions, nominal /
  /// parametric-change / noise scenarios.
  static ExperimentSpec mackey_glass_study(std::uint64_t seed,
                                           const std::string& out_dir);
  /// The canned reactor study: 81-rule, 4-input model per composition.
  static ExperimentSpec cstr_study(std::uint64_t seed,
                                   const std::string& out_dir);
};

struct ResultTable {
  std::vector<std::string> cell_names;
  struct Row {
    std::string composition;
    std::vector<double> values;
    bool failed = false;
    std::string error;
  };
  std::vector<Row> rows;

  const Row& row(const std::string& composition) const;
  double cell(const std::string& composition, const std::string& name) const;
};

/// Train every composition, run the scenario evaluations and write the
/// result artifacts (results.csv, convergence and trace CSVs, SVG charts,
/// manifest) into spec.out_dir. Per-composition failures are recorded in the
/// table instead of aborting it.
ResultTable run_experiment(const ExperimentSpec& spec);

/// sqrt(mean of squares); rejects empty input.
double rms(std::span<const double> residuals);

void write_result_csv(const ResultTable& table, const std::string& path);

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained static SVG line chart; byte-deterministic for identical
/// inputs. Rejects an empty series list.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series);

}  // namespace fuzzident
