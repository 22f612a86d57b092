#include "fuzzident/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fuzzident {

namespace {

constexpr double kDenominatorFloor = 1e-300;

void check_arity(const FuzzyModel& model, std::size_t got, const char* what) {
  if (got != static_cast<std::size_t>(model.input_arity)) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(model.input_arity) +
                                " values, got " + std::to_string(got));
  }
}

}  // namespace

double Normalization::to_unit_input(std::size_t j, double x) const {
  const double range = input_max[j] - input_min[j];
  if (range <= 0.0) return 0.5;
  return (x - input_min[j]) / range;
}

double Normalization::to_unit_output(double y) const {
  const double range = output_max - output_min;
  if (range <= 0.0) return 0.5;
  return (y - output_min) / range;
}

double Normalization::from_unit_output(double y) const {
  return output_min + y * (output_max - output_min);
}

void FuzzyModel::validate() const {
  if (input_arity < 1) throw std::invalid_argument("input_arity must be >= 1");
  if (rules.empty()) throw std::invalid_argument("model needs at least one rule");
  for (const Rule& rule : rules) {
    if (rule.antecedents.size() != static_cast<std::size_t>(input_arity)) {
      throw std::invalid_argument("rule antecedent count does not match arity");
    }
    for (const GaussianMF& mf : rule.antecedents) {
      if (!(mf.spread > 0.0)) {
        throw std::invalid_argument("membership spread must be positive");
      }
    }
    if (!(rule.confidence > 0.0) || rule.confidence > 1.0) {
      throw std::invalid_argument("rule confidence must lie in (0, 1]");
    }
  }
  if (normalization) {
    if (normalization->input_min.size() != static_cast<std::size_t>(input_arity) ||
        normalization->input_max.size() != static_cast<std::size_t>(input_arity)) {
      throw std::invalid_argument("normalization arity mismatch");
    }
  }
}

std::vector<std::vector<double>> fuzzify(const FuzzyModel& model,
                                         std::span<const double> x) {
  check_arity(model, x.size(), "fuzzify");
  std::vector<std::vector<double>> table(model.rules.size());
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    table[i].resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      table[i][j] = mu(model.rules[i].antecedents[j], x[j]);
    }
  }
  return table;
}

double rule_strength(const FuzzyModel& model, std::size_t rule_index,
                     std::span<const double> membership_row) {
  check_arity(model, membership_row.size(), "rule_strength");
  const Rule& rule = model.rules[rule_index];
  double acc = t_norm(model.composition, membership_row[0], rule.confidence).value;
  for (std::size_t j = 1; j < membership_row.size(); ++j) {
    const double aj =
        t_norm(model.composition, membership_row[j], rule.confidence).value;
    acc = s_norm(model.composition, acc, aj).value;
  }
  return acc;
}

std::vector<double> rule_strength_grad(const FuzzyModel& model,
                                       std::size_t rule_index,
                                       std::span<const double> membership_row) {
  check_arity(model, membership_row.size(), "rule_strength_grad");
  const Rule& rule = model.rules[rule_index];
  const std::size_t n = membership_row.size();

  std::vector<double> dT(n);   // dA_j / d membership_j
  std::vector<double> A(n);
  for (std::size_t j = 0; j < n; ++j) {
    NormEval e = t_norm(model.composition, membership_row[j], rule.confidence);
    A[j] = e.value;
    dT[j] = e.d_da;
  }

  // fold F_1 = A_1, F_j = S(F_{j-1}, A_j); keep both partials per step
  std::vector<double> dS_dacc(n, 1.0), dS_dleaf(n, 1.0);
  double acc = A[0];
  for (std::size_t j = 1; j < n; ++j) {
    NormEval e = s_norm(model.composition, acc, A[j]);
    dS_dacc[j] = e.d_da;
    dS_dleaf[j] = e.d_db;
    acc = e.value;
  }

  // d strength / d A_j = dS_dleaf[j] * prod_{k>j} dS_dacc[k]
  std::vector<double> grad(n);
  double tail = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    const double leaf = (j == 0) ? 1.0 : dS_dleaf[j];
    grad[j] = leaf * tail * dT[j];
    if (j > 0) tail *= dS_dacc[j];
  }
  return grad;
}

double defuzzify(std::span<const double> strengths,
                 std::span<const double> centers) {
  if (strengths.size() != centers.size() || strengths.empty()) {
    throw std::invalid_argument("defuzzify: shape mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < strengths.size(); ++i) {
    num += centers[i] * strengths[i];
    den += strengths[i];
  }
  if (den <= kDenominatorFloor) {
    throw std::domain_error("defuzzify: degenerate strength sum");
  }
  return num / den;
}

Prediction predict_core(const FuzzyModel& model, std::span<const double> x) {
  Prediction p;
  p.record.memberships = fuzzify(model, x);
  p.record.strengths.resize(model.rules.size());
  std::vector<double> centers(model.rules.size());
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    p.record.strengths[i] = rule_strength(model, i, p.record.memberships[i]);
    centers[i] = model.rules[i].consequent_center;
  }
  p.output = defuzzify(p.record.strengths, centers);
  p.record.output = p.output;
  return p;
}

Prediction predict(const FuzzyModel& model, std::span<const double> x) {
  if (!model.normalization) return predict_core(model, x);
  check_arity(model, x.size(), "predict");
  std::vector<double> u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    u[j] = model.normalization->to_unit_input(j, x[j]);
  }
  Prediction p = predict_core(model, u);
  p.output = model.normalization->from_unit_output(p.output);
  p.record.output = p.output;
  return p;
}

std::string save_model(const FuzzyModel& model) {
  model.validate();
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["composition"] = model.composition.name();
  if (model.composition.family == NormFamily::Smooth1) {
    doc["beta"] = model.composition.beta;
  }
  doc["input_arity"] = model.input_arity;
  nlohmann::json rules = nlohmann::json::array();
  for (const Rule& rule : model.rules) {
    nlohmann::json antecedents = nlohmann::json::array();
    for (const GaussianMF& mf : rule.antecedents) {
      antecedents.push_back({{"center", mf.center}, {"spread", mf.spread}});
    }
    rules.push_back({{"antecedents", antecedents},
                     {"consequent_center", rule.consequent_center},
                     {"confidence", rule.confidence}});
  }
  doc["rules"] = rules;
  if (model.normalization) {
    doc["normalization"] = {{"input_min", model.normalization->input_min},
                            {"input_max", model.normalization->input_max},
                            {"output_min", model.normalization->output_min},
                            {"output_max", model.normalization->output_max}};
  }
  return doc.dump(2) + "\n";
}

FuzzyModel load_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("model parse error: ") + e.what());
  }
  if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1) {
    throw std::runtime_error("unsupported model format_version");
  }
  FuzzyModel model;
  const std::string comp = doc.at("composition").get<std::string>();
  const double beta = doc.value("beta", 2.0);
  model.composition = Composition::from_name(comp, beta);
  model.input_arity = doc.at("input_arity").get<int>();
  for (const auto& jr : doc.at("rules")) {
    Rule rule;
    for (const auto& ja : jr.at("antecedents")) {
      const double spread = ja.at("spread").get<double>();
      if (!(spread > 0.0)) {
        throw std::runtime_error("model file: nonpositive spread " +
                                 std::to_string(spread));
      }
      rule.antecedents.emplace_back(ja.at("center").get<double>(), spread);
    }
    rule.consequent_center = jr.at("consequent_center").get<double>();
    rule.confidence = jr.value("confidence", 1.0);
    model.rules.push_back(std::move(rule));
  }
  if (doc.contains("normalization")) {
    const auto& jn = doc["normalization"];
    Normalization norm;
    norm.input_min = jn.at("input_min").get<std::vector<double>>();
    norm.input_max = jn.at("input_max").get<std::vector<double>>();
    norm.output_min = jn.at("output_min").get<double>();
    norm.output_max = jn.at("output_max").get<double>();
    model.normalization = std::move(norm);
  }
  model.validate();
  return model;
}

void save_model_file(const FuzzyModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open model file for write: " + path);
  out << save_model(model);
}

FuzzyModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace fuzzident
