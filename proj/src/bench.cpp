#include "fuzzident/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "fuzzident/plants.hpp"
#include "fuzzident/version.hpp"

namespace fuzzident {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

std::string chart_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Mackey-Glass benchmark embedding: x(t), x(t-6), x(t-12), x(t-18) -> x(t+6),
// in grid steps of the 0.1 time-unit integration grid, one row per time unit.
struct MgLayout {
  std::vector<LagTerm> lags{{"x", 0}, {"x", 60}, {"x", 120}, {"x", 180}};
  int lead = 60;
  int stride = 10;
  double dt = 0.1;
  double duration = 1200.0;
  double switch_time = 600.0;

  TimeSeriesDataset dataset(const Series& series) const {
    return build_regression_dataset(series, lags, "x", lead, stride);
  }
  double row_time(std::size_t row) const {
    return (180.0 + static_cast<double>(row) * stride) * dt;
  }
};

// CSTR embedding per the one-step-ahead model: Ca(k), Ca(k-1), Ca(k-2),
// qc(k-1) -> Ca(k+1), with a 0.1 min sampling period on a 0.01 min grid.
struct CstrLayout {
  std::vector<LagTerm> lags{{"Ca", 0}, {"Ca", 10}, {"Ca", 20}, {"qc", 10}};
  int lead = 10;
  int stride = 10;
  double dt = 0.01;
  double duration = 180.0;

  TimeSeriesDataset dataset(const Series& series) const {
    return build_regression_dataset(series, lags, "Ca", lead, stride);
  }
};

std::vector<double> residuals_on(const FuzzyModel& model,
                                 const TimeSeriesDataset& ds) {
  std::vector<double> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.push_back(predict(model, ds.inputs[i]).output - ds.targets[i]);
  }
  return out;
}

void write_manifest(const ExperimentSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "library_version=" << kVersion << "\n";
  out << "plant=" << spec.plant << "\n";
  out << "seed=" << spec.seed << "\n";
  out << "mfs_per_input=" << spec.mfs_per_input << "\n";
  out << "compositions=";
  for (std::size_t i = 0; i < spec.compositions.size(); ++i) {
    out << (i ? "," : "") << spec.compositions[i].name();
  }
  out << "\n";
  out << "train.alpha_c=" << format_double(spec.train.alpha_c) << "\n";
  out << "train.alpha_delta=" << format_double(spec.train.alpha_delta) << "\n";
  out << "train.alpha_d=" << format_double(spec.train.alpha_d) << "\n";
  out << "train.epsilon=" << format_double(spec.train.epsilon) << "\n";
  out << "train.max_epochs=" << spec.train.max_epochs << "\n";
  out << "train.restarts=" << spec.train.restarts << "\n";
  out << "adapt.epsilon=" << format_double(spec.adapt.epsilon) << "\n";
  out << "adapt.rms_window=" << spec.adapt.rms_window << "\n";
}

ResultTable run_mackey_glass(const ExperimentSpec& spec) {
  const MgLayout layout;
  MackeyGlassParams params;
  params.dt = layout.dt;
  params.duration = layout.duration;

  const Series nominal = mackey_glass(params, Scenario{});
  const TimeSeriesDataset full = layout.dataset(nominal);
  auto [train_ds, valid_ds] = full.split(0.6);

  Scenario change;
  change.kind = ScenarioKind::ParamChange;
  change.new_b = 0.15;
  change.switch_time = layout.switch_time;
  const TimeSeriesDataset change_ds =
      layout.dataset(mackey_glass(params, change));

  Scenario noise;
  noise.kind = ScenarioKind::Noise;
  noise.noise_amplitude = 0.05;
  noise.seed = spec.seed * 2654435761u + 17;
  const TimeSeriesDataset noise_ds = layout.dataset(mackey_glass(params, noise));

  ResultTable table;
  table.cell_names = {"training_rms", "param_change_rms", "noise_rms"};

  std::vector<ChartSeries> convergence_curves;
  std::vector<ChartSeries> adapt_curves;

  for (std::size_t ci = 0; ci < spec.compositions.size(); ++ci) {
    const Composition& comp = spec.compositions[ci];
    ResultTable::Row row;
    row.composition = comp.name();
    try {
      TrainConfig tc = spec.train;
      tc.seed = spec.seed + 1000 * ci;
      auto [model, report] = identify(train_ds, spec.mfs_per_input, comp, tc);
      write_convergence_csv(
          report, join_path(spec.out_dir, "convergence_" + comp.name() + ".csv"));

      ChartSeries curve;
      curve.label = comp.name();
      for (const auto& e : report.history) {
        if (e.restart != report.winner_restart) continue;
        curve.x.push_back(e.epoch);
        curve.y.push_back(e.error);
      }
      convergence_curves.push_back(std::move(curve));

      // parametric change: adapt online, score after the switch
      FuzzyModel adaptive = model;
      AdaptTrace change_trace = run_online(adaptive, change_ds, spec.adapt);
      write_trace_csv(change_trace,
                      join_path(spec.out_dir,
                                "trace_" + comp.name() + "_param_change.csv"));
      std::vector<double> post;
      ChartSeries trail;
      trail.label = comp.name();
      for (std::size_t i = 0; i < change_trace.size(); ++i) {
        const double t = layout.row_time(i);
        trail.x.push_back(t);
        trail.y.push_back(change_trace.trailing_rms[i]);
        if (t > layout.switch_time + 20.0) post.push_back(change_trace.steps[i].e);
      }
      adapt_curves.push_back(std::move(trail));

      FuzzyModel noisy = model;
      AdaptTrace noise_trace = run_online(noisy, noise_ds, spec.adapt);
      write_trace_csv(
          noise_trace,
          join_path(spec.out_dir, "trace_" + comp.name() + "_noise.csv"));
      std::vector<double> noise_res;
      for (const auto& s : noise_trace.steps) noise_res.push_back(s.e);

      row.values = {report.final_rms, rms(post), rms(noise_res)};

      // validation overlay for the nominal split
      ChartSeries actual{"target", {}, {}}, predicted{comp.name(), {}, {}};
      for (std::size_t i = 0; i < valid_ds.size(); ++i) {
        actual.x.push_back(static_cast<double>(i));
        actual.y.push_back(valid_ds.targets[i]);
        predicted.x.push_back(static_cast<double>(i));
        predicted.y.push_back(predict(model, valid_ds.inputs[i]).output);
      }
      write_svg_chart(
          join_path(spec.out_dir, "validation_" + comp.name() + ".svg"),
          "Validation, " + comp.name() + " composition", "sample", "x",
          {actual, predicted});
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      row.values.assign(table.cell_names.size(),
                        std::numeric_limits<double>::quiet_NaN());
    }
    table.rows.push_back(std::move(row));
  }

  if (!convergence_curves.empty()) {
    write_svg_chart(join_path(spec.out_dir, "convergence.svg"),
                    "Training error convergence", "epoch", "E",
                    convergence_curves);
  }
  if (!adapt_curves.empty()) {
    write_svg_chart(join_path(spec.out_dir, "adapt_param_change.svg"),
                    "Trailing RMS under the parametric change", "t",
                    "trailing RMS", adapt_curves);
  }
  return table;
}

ResultTable run_cstr(const ExperimentSpec& spec) {
  const CstrLayout layout;
  CstrParams params;

  // training excitation: the published coolant step ladder, cycled
  QcProfile train_qc = QcProfile::paper_steps();
  train_qc.levels.insert(train_qc.levels.end(),
                         {103.0, 105.0, 110.0, 100.0, 99.0, 110.0,
                          103.0, 105.0, 110.0, 100.0, 99.0, 110.0});
  QcProfile valid_qc;
  valid_qc.levels = {105.0, 99.0, 110.0, 103.0, 100.0, 110.0,
                     105.0, 99.0, 110.0, 103.0, 100.0, 110.0,
                     105.0, 99.0, 110.0, 103.0, 100.0, 110.0};
  valid_qc.dwell = 10.0;

  const Series train_series =
      cstr_simulate(params, train_qc, {}, layout.dt, layout.duration);
  const Series valid_series =
      cstr_simulate(params, valid_qc, {}, layout.dt, layout.duration);
  Tc0Disturbance sinusoid;
  sinusoid.enabled = true;
  QcProfile nominal_qc;
  const Series disturbed = cstr_simulate(params, nominal_qc, sinusoid,
                                         layout.dt, layout.duration);

  const TimeSeriesDataset train_ds = layout.dataset(train_series);
  const TimeSeriesDataset valid_ds = layout.dataset(valid_series);
  const TimeSeriesDataset disturbed_ds = layout.dataset(disturbed);

  ResultTable table;
  table.cell_names = {"training_rms", "validation_rms", "disturbance_rms"};

  for (std::size_t ci = 0; ci < spec.compositions.size(); ++ci) {
    const Composition& comp = spec.compositions[ci];
    ResultTable::Row row;
    row.composition = comp.name();
    try {
      TrainConfig tc = spec.train;
      tc.seed = spec.seed + 1000 * ci;
      auto [model, report] = identify(train_ds, spec.mfs_per_input, comp, tc);
      write_convergence_csv(
          report, join_path(spec.out_dir, "convergence_" + comp.name() + ".csv"));

      const std::vector<double> valid_res = residuals_on(model, valid_ds);

      FuzzyModel adaptive = model;
      AdaptTrace trace = run_online(adaptive, disturbed_ds, spec.adapt);
      write_trace_csv(
          trace,
          join_path(spec.out_dir, "trace_" + comp.name() + "_disturbance.csv"));
      std::vector<double> dist_res;
      for (const auto& s : trace.steps) dist_res.push_back(s.e);

      row.values = {report.final_rms, rms(valid_res), rms(dist_res)};
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      row.values.assign(table.cell_names.size(),
                        std::numeric_limits<double>::quiet_NaN());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

ExperimentSpec ExperimentSpec::mackey_glass_study(std::uint64_t seed,
                                                  const std::string& out_dir) {
  ExperimentSpec spec;
  spec.plant = "mackey-glass";
  spec.compositions = {Composition(NormFamily::SmoothAtan),
                       Composition(NormFamily::SmoothAcos),
                       Composition(NormFamily::ProductSum),
                       Composition(NormFamily::MinMax)};
  spec.mfs_per_input = 2;
  spec.train.max_epochs = 80;
  spec.train.restarts = 2;
  spec.seed = seed;
  spec.out_dir = out_dir;
  return spec;
}

ExperimentSpec ExperimentSpec::cstr_study(std::uint64_t seed,
                                          const std::string& out_dir) {
  ExperimentSpec spec = mackey_glass_study(seed, out_dir);
  spec.plant = "cstr";
  spec.mfs_per_input = 3;  // 3 MFs on 4 inputs -> 81 rules
  spec.train.max_epochs = 25;
  return spec;
}

const ResultTable::Row& ResultTable::row(const std::string& composition) const {
  for (const Row& r : rows) {
    if (r.composition == composition) return r;
  }
  throw std::invalid_argument("no row for composition " + composition);
}

double ResultTable::cell(const std::string& composition,
                         const std::string& name) const {
  for (std::size_t i = 0; i < cell_names.size(); ++i) {
    if (cell_names[i] == name) return row(composition).values[i];
  }
  throw std::invalid_argument("no cell named " + name);
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  if (spec.compositions.empty()) {
    throw std::invalid_argument("experiment needs at least one composition");
  }
  ResultTable table;
  if (spec.plant == "mackey-glass") {
    table = run_mackey_glass(spec);
  } else if (spec.plant == "cstr") {
    table = run_cstr(spec);
  } else {
    throw std::invalid_argument("unknown plant \"" + spec.plant + "\"");
  }
  write_result_csv(table, join_path(spec.out_dir, "results.csv"));
  write_manifest(spec, join_path(spec.out_dir, "manifest"));
  return table;
}

double rms(std::span<const double> residuals) {
  if (residuals.empty()) throw std::invalid_argument("rms of empty input");
  double sum = 0.0;
  for (double e : residuals) sum += e * e;
  return std::sqrt(sum / residuals.size());
}

void write_result_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "composition";
  for (const std::string& name : table.cell_names) out << "," << name;
  out << ",error\n";
  for (const auto& row : table.rows) {
    out << row.composition;
    for (double v : row.values) {
      out << "," << (std::isfinite(v) ? format_double(v) : "FAILED");
    }
    out << "," << row.error << "\n";
  }
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series) {
  if (series.empty()) throw std::invalid_argument("no chart series");
  for (const ChartSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw std::invalid_argument("chart series must be non-empty and aligned");
    }
  }
  double xmin = series[0].x[0], xmax = xmin, ymin = series[0].y[0], ymax = ymin;
  for (const ChartSeries& s : series) {
    for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double W = 800, H = 480, ml = 70, mr = 160, mt = 40, mb = 50;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
         " transform=\"rotate(-90 18 " << (mt + H - mb) / 2 << ")\">"
      << y_label << "</text>\n";
  // axis extents
  out << "<text x=\"" << ml << "\" y=\"" << H - mb + 16
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << chart_num(xmin)
      << "</text>\n";
  out << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << chart_num(xmax) << "</text>\n";
  out << "<text x=\"" << ml - 4 << "\" y=\"" << H - mb
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << chart_num(ymin) << "</text>\n";
  out << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << chart_num(ymax) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    char buf[48];
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(series[s].x[i]),
                    py(series[s].y[i]));
      out << buf;
    }
    out << "\"/>\n";
    const double ly = mt + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly + 8 << "\" x2=\""
        << W - mr + 34 << "\" y2=\"" << ly + 8 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 12
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fuzzident
