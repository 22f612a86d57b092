#include "fuzzident/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fuzzident {

std::pair<TimeSeriesDataset, TimeSeriesDataset> TimeSeriesDataset::split(
    double fraction) const {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("split fraction must lie in (0, 1)");
  }
  const std::size_t cut = static_cast<std::size_t>(fraction * size());
  TimeSeriesDataset head, tail;
  head.input_names = tail.input_names = input_names;
  head.plant = tail.plant = plant;
  head.scenario = tail.scenario = scenario;
  head.inputs.assign(inputs.begin(), inputs.begin() + cut);
  head.targets.assign(targets.begin(), targets.begin() + cut);
  tail.inputs.assign(inputs.begin() + cut, inputs.end());
  tail.targets.assign(targets.begin() + cut, targets.end());
  return {std::move(head), std::move(tail)};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_dataset_csv(const TimeSeriesDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  for (const std::string& name : ds.input_names) out << name << ",";
  out << "target\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.inputs[i]) out << format_double(v) << ",";
    out << format_double(ds.targets[i]) << "\n";
  }
}

TimeSeriesDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  TimeSeriesDataset ds;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty dataset: " + path);
  {
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) ds.input_names.push_back(field);
    if (ds.input_names.empty() || ds.input_names.back() != "target") {
      throw std::runtime_error("dataset header must end with a target column: " +
                               path);
    }
    ds.input_names.pop_back();
  }
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
    if (values.size() != ds.input_names.size() + 1) {
      throw std::runtime_error(path + ":" + std::to_string(row) +
                               ": wrong column count");
    }
    ds.targets.push_back(values.back());
    values.pop_back();
    ds.inputs.push_back(std::move(values));
  }
  return ds;
}

}  // namespace fuzzident
