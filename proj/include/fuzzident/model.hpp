#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzident/membership.hpp"
#include "fuzzident/norms.hpp"

namespace fuzzident {

/// One IF-THEN rule: n Gaussian antecedents, a crisp consequent center and
/// a scalar confidence in (0, 1].
struct Rule {
  std::vector<GaussianMF> antecedents;
  double consequent_center = 0.0;
  double confidence = 1.0;
};

/// Min-max scaling attached to a trained model so it can accept inputs in
/// the original plant units.
struct Normalization {
  std::vector<double> input_min;
  std::vector<double> input_max;
  double output_min = 0.0;
  double output_max = 1.0;

  double to_unit_input(std::size_t j, double x) const;
  double to_unit_output(double y) const;
  double from_unit_output(double y) const;
  double output_range() const { return output_max - output_min; }
};

/// Rule-based fuzzy model. MF parameters live in normalized units when
/// `normalization` is set; prediction then maps raw inputs through it.
struct FuzzyModel {
  Composition composition;
  int input_arity = 1;
  std::vector<Rule> rules;
  std::optional<Normalization> normalization;

  void validate() const;
  std::size_t rule_count() const { return rules.size(); }
};

/// Intermediates of one model evaluation, retained for the trainer.
struct FiringRecord {
  std::vector<std::vector<double>> memberships;  // r x n
  std::vector<double> strengths;                 // r
  double output = 0.0;
};

struct Prediction {
  double output = 0.0;
  FiringRecord record;
};

/// r x n table of membership values for one input vector (model units).
std::vector<std::vector<double>> fuzzify(const FuzzyModel& model,
                                         std::span<const double> x);

/// Firing strength of one rule: S-fold over T(membership_j, confidence).
double rule_strength(const FuzzyModel& model, std::size_t rule_index,
                     std::span<const double> membership_row);

/// Exact derivative of rule_strength w.r.t. each membership value,
/// chained through the left fold.
std::vector<double> rule_strength_grad(const FuzzyModel& model,
                                       std::size_t rule_index,
                                       std::span<const double> membership_row);

/// Centroid defuzzification: sum(d_i y_i) / sum(y_i).
double defuzzify(std::span<const double> strengths,
                 std::span<const double> centers);

/// Evaluate in model units, ignoring any attached normalization.
Prediction predict_core(const FuzzyModel& model, std::span<const double> x);

/// Evaluate in raw units, applying normalization when present.
Prediction predict(const FuzzyModel& model, std::span<const double> x);

std::string save_model(const FuzzyModel& model);
FuzzyModel load_model(const std::string& text);

void save_model_file(const FuzzyModel& model, const std::string& path);
FuzzyModel load_model_file(const std::string& path);

}  // namespace fuzzident
