// Acceptance suite: ten numbered criteria, one pass/fail line each.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzident.h"
#include "fuzzident/adapt.hpp"
#include "fuzzident/bench.hpp"
#include "fuzzident/model.hpp"
#include "fuzzident/norms.hpp"
#include "fuzzident/plants.hpp"
#include "fuzzident/train.hpp"

using namespace fuzzident;
namespace fs = std::filesystem;

namespace {

const std::vector<Composition> kAllKinds = {
    Composition(NormFamily::MinMax),     Composition(NormFamily::ProductSum),
    Composition(NormFamily::Smooth1),    Composition(NormFamily::SmoothAtan),
    Composition(NormFamily::SmoothAcos), Composition(NormFamily::Smooth4)};

const std::vector<Composition> kSmoothKinds = {
    Composition(NormFamily::Smooth1), Composition(NormFamily::SmoothAtan),
    Composition(NormFamily::SmoothAcos), Composition(NormFamily::Smooth4)};

void report(int number, const char* label, bool ok, const std::string& detail) {
  std::printf("criterion %2d (%s): %s%s%s\n", number, label,
              ok ? "PASS" : "FAIL", detail.empty() ? "" : " - ",
              detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", number, " (", std::string(label), ") ",
                detail);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// the training split of the nominal chaotic-series study, matching the
// canned benchmark layout
struct MgData {
  TimeSeriesDataset train_ds;
  TimeSeriesDataset change_ds;
  double switch_time = 600.0;

  MgData() {
    MackeyGlassParams params;
    params.dt = 0.1;
    params.duration = 1200.0;
    const Series nominal = mackey_glass(params, Scenario{});
    const TimeSeriesDataset full =
        mackey_glass_embedding(nominal, params.dt);
    train_ds = full.split(0.6).first;

    Scenario change;
    change.kind = ScenarioKind::ParamChange;
    change.new_b = 0.15;
    change.switch_time = switch_time;
    change_ds = mackey_glass_embedding(mackey_glass(params, change), params.dt);
  }
};

}  // namespace

TEST_CASE("1 norm axioms") {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(20240801);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Composition& comp : kAllKinds) {
    for (int i = 0; i < 10000 && ok; ++i) {
      const double a = unit(rng), b = unit(rng), c = unit(rng);
      const double t_ab = t_norm(comp, a, b).value;
      const double s_ab = s_norm(comp, a, b).value;
      if (t_ab != t_norm(comp, b, a).value) ok = false;
      if (s_ab != s_norm(comp, b, a).value) ok = false;
      if (std::abs(t_norm(comp, t_ab, c).value -
                   t_norm(comp, a, t_norm(comp, b, c).value).value) > 1e-9)
        ok = false;
      if (std::abs(s_norm(comp, s_ab, c).value -
                   s_norm(comp, a, s_norm(comp, b, c).value).value) > 1e-9)
        ok = false;
      const double lo = std::min(a, c), hi = std::max(a, c);
      if (t_norm(comp, lo, b).value > t_norm(comp, hi, b).value + 1e-12)
        ok = false;
      if (s_norm(comp, lo, b).value > s_norm(comp, hi, b).value + 1e-12)
        ok = false;
      if (std::abs(t_norm(comp, a, 1.0).value - a) > 1e-12) ok = false;
      if (std::abs(s_norm(comp, a, 0.0).value - a) > 1e-12) ok = false;
      if (t_ab < 0.0 || t_ab > 1.0 || s_ab < 0.0 || s_ab > 1.0) ok = false;
    }
    if (!ok) {
      detail = "violated by the " + comp.name() + " composition";
      break;
    }
  }
  report(1, "norm axioms, 1e4 samples per kind", ok, detail);
}

TEST_CASE("2 duality") {
  const std::vector<Composition> pairs = {
      Composition(NormFamily::ProductSum), Composition(NormFamily::MinMax),
      Composition(NormFamily::SmoothAtan), Composition(NormFamily::SmoothAcos)};
  bool ok = true;
  std::string detail;
  std::mt19937 rng(20240802);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (const Composition& comp : pairs) {
    for (int i = 0; i < 10000; ++i) {
      const double a = unit(rng), b = unit(rng);
      worst = std::max(worst, std::abs(s_norm(comp, a, b).value -
                                       dual_s_from_t(comp, a, b).value));
    }
    if (worst > 1e-9) {
      ok = false;
      detail = comp.name() + " worst gap " + std::to_string(worst);
      break;
    }
  }
  report(2, "De Morgan duality within 1e-9", ok, detail);
}

TEST_CASE("3 gradient oracles") {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(20240803);
  std::uniform_real_distribution<double> interior(0.01, 0.99);
  const double h = 1e-6;

  // analytic norm partials
  for (int i = 0; i < 1000 && ok; ++i) {
    const Composition& comp = kSmoothKinds[i % kSmoothKinds.size()];
    const double a = interior(rng), b = interior(rng);
    for (bool use_t : {true, false}) {
      const NormEval e = use_t ? t_norm(comp, a, b) : s_norm(comp, a, b);
      auto eval = [&](double x) {
        return use_t ? t_norm(comp, x, b).value : s_norm(comp, x, b).value;
      };
      const double fd = (eval(a + h) - eval(a - h)) / (2 * h);
      if (std::abs(e.d_da - fd) / std::max({1.0, std::abs(fd)}) > 1e-5) {
        ok = false;
        detail = "norm partial, " + comp.name();
      }
    }
  }

  // membership gradients
  for (int i = 0; i < 1000 && ok; ++i) {
    const double c = 2.0 * interior(rng) - 1.0;
    const double d = 0.1 + interior(rng);
    const double x = c + 3.0 * (interior(rng) - 0.5) * d;
    const GaussianMF mf(c, d);
    const double hh = 1e-6 * d;
    const double fd_c =
        (mu(GaussianMF(c + hh, d), x) - mu(GaussianMF(c - hh, d), x)) / (2 * hh);
    const double fd_d =
        (mu(GaussianMF(c, d + hh), x) - mu(GaussianMF(c, d - hh), x)) / (2 * hh);
    if (std::abs(dmu_dc(mf, x) - fd_c) / std::max(1.0, std::abs(fd_c)) > 1e-6 ||
        std::abs(dmu_ddelta(mf, x) - fd_d) / std::max(1.0, std::abs(fd_d)) >
            1e-6) {
      ok = false;
      detail = "membership gradient";
    }
  }

  // rule-strength and full error gradients on randomized models
  for (int i = 0; i < 1000 && ok; ++i) {
    const Composition& comp = kSmoothKinds[i % kSmoothKinds.size()];
    FuzzyModel model;
    model.composition = comp;
    model.input_arity = 2 + static_cast<int>(rng() % 2);
    for (int r = 0; r < 3; ++r) {
      Rule rule;
      for (int j = 0; j < model.input_arity; ++j) {
        rule.antecedents.emplace_back(interior(rng), 0.2 + interior(rng));
      }
      rule.consequent_center = interior(rng);
      model.rules.push_back(std::move(rule));
    }
    std::vector<double> x(model.input_arity);
    for (double& v : x) v = interior(rng);
    const double target = interior(rng);

    // the finite-difference stencil needs interior membership values; at a
    // saturated membership the smooth s-norms have unbounded curvature and
    // the comparison would measure stencil error, not gradient error
    std::vector<double> row(x.size());
    for (double& m : row) m = interior(rng);
    const auto sgrad = rule_strength_grad(model, 0, row);
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::vector<double> up = row, dn = row;
      up[j] = std::min(1.0, up[j] + h);
      dn[j] = std::max(0.0, dn[j] - h);
      const double fd = (rule_strength(model, 0, up) -
                         rule_strength(model, 0, dn)) /
                        (up[j] - dn[j]);
      if (std::abs(sgrad[j] - fd) / std::max(1.0, std::abs(fd)) > 1e-5) {
        ok = false;
        detail = "rule-strength gradient, " + comp.name();
      }
    }

    const Gradients g = gradients(model, x, target);
    auto sample_error = [&](const FuzzyModel& m) {
      const double e = predict_core(m, x).output - target;
      return 0.5 * e * e;
    };
    for (std::size_t r = 0; r < model.rules.size() && ok; ++r) {
      FuzzyModel up = model, dn = model;
      up.rules[r].consequent_center += h;
      dn.rules[r].consequent_center -= h;
      if (std::abs(g.d_consequent[r] -
                   (sample_error(up) - sample_error(dn)) / (2 * h)) > 1e-5) {
        ok = false;
        detail = "error gradient (consequent), " + comp.name();
      }
      for (std::size_t j = 0; j < x.size() && ok; ++j) {
        up = model;
        dn = model;
        up.rules[r].antecedents[j].center += h;
        dn.rules[r].antecedents[j].center -= h;
        if (std::abs(g.d_center[r][j] -
                     (sample_error(up) - sample_error(dn)) / (2 * h)) > 1e-5) {
          ok = false;
          detail = "error gradient (center), " + comp.name();
        }
        up = model;
        dn = model;
        up.rules[r].antecedents[j].spread += h;
        dn.rules[r].antecedents[j].spread -= h;
        if (std::abs(g.d_spread[r][j] -
                     (sample_error(up) - sample_error(dn)) / (2 * h)) > 1e-5) {
          ok = false;
          detail = "error gradient (spread), " + comp.name();
        }
      }
    }
  }
  report(3, "gradients match finite differences", ok, detail);
}

TEST_CASE("4 reactor steady state") {
  QcProfile qc;  // constant 103.411 l/min
  const Series series = cstr_simulate(CstrParams{}, qc, Tc0Disturbance{}, 0.01,
                                      100.0, CstrState{0.08, 445.0});
  const double ca = series.column("Ca").back();
  const double temp = series.column("T").back();
  const bool ok = std::abs(ca - 0.1) <= 0.005 && std::abs(temp - 438.5) <= 1.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "Ca = %.5f mol/l, T = %.2f K", ca, temp);
  report(4, "reactor settles at Ca 0.1, T 438.5", ok, buf);
}

TEST_CASE("5 chaotic-series integrator vs brute-force oracle") {
  MackeyGlassParams params;
  params.duration = 100.0;
  const Series series = mackey_glass(params, Scenario{});

  // independent explicit-Euler integration at dt = 1e-3
  const double fine = 1e-3;
  const std::size_t steps = 100000;
  std::vector<double> x(steps + 1);
  x[0] = params.x0;
  auto delayed = [&](double t) {
    if (t <= 0.0) return params.x0;
    const double pos = t / fine;
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return x[i] + frac * (x[i + 1] - x[i]);
  };
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * fine;
    const double xd = delayed(t - params.tau);
    x[k + 1] = x[k] + fine * (params.a * xd / (1.0 + std::pow(xd, params.C)) -
                              params.b * x[k]);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < series.length(); ++k) {
    worst = std::max(worst, std::abs(series.column("x")[k] - x[k * 100]));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max abs gap %.3g", worst);
  report(5, "integrator matches fine-step oracle", worst < 1e-2, buf);
}

TEST_CASE("6 composition ordering across seeds") {
  int wins_train = 0, wins_change = 0, wins_noise = 0;
  const int seeds = 5;
  for (int seed = 0; seed < seeds; ++seed) {
    const fs::path dir = "acceptance_ordering_" + std::to_string(seed);
    fs::create_directories(dir);
    ExperimentSpec spec = ExperimentSpec::mackey_glass_study(
        static_cast<std::uint64_t>(seed), dir.string());
    spec.compositions = {Composition(NormFamily::SmoothAtan),
                         Composition(NormFamily::SmoothAcos),
                         Composition(NormFamily::ProductSum)};
    const ResultTable table = run_experiment(spec);
    const double ps_train = table.cell("prodsum", "training_rms");
    const double ps_change = table.cell("prodsum", "param_change_rms");
    const double ps_noise = table.cell("prodsum", "noise_rms");
    if (table.cell("atan", "training_rms") < ps_train &&
        table.cell("acos", "training_rms") < ps_train)
      ++wins_train;
    if (table.cell("atan", "param_change_rms") < ps_change &&
        table.cell("acos", "param_change_rms") < ps_change)
      ++wins_change;
    if (table.cell("atan", "noise_rms") < ps_noise &&
        table.cell("acos", "noise_rms") < ps_noise)
      ++wins_noise;
    fs::remove_all(dir);
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "smooth beats prodsum in %d/%d (training), %d/%d (change), "
                "%d/%d (noise) seeds",
                wins_train, seeds, wins_change, seeds, wins_noise, seeds);
  report(6, "smooth compositions outperform prodsum",
         wins_train >= 4 && wins_change >= 4 && wins_noise >= 4, buf);
}

TEST_CASE("7 self-learning efficacy") {
  const MgData data;
  bool ok = true;
  std::string detail;
  for (const Composition& comp : kSmoothKinds) {
    for (std::uint64_t seed = 0; seed < 3 && ok; ++seed) {
      TrainConfig tc;
      tc.max_epochs = 80;
      tc.restarts = 2;
      tc.seed = seed;
      auto [model, report_] = identify(data.train_ds, 2, comp, tc);

      AdaptConfig ac;
      FuzzyModel adaptive = model;
      const AdaptTrace trace = run_online(adaptive, data.change_ds, ac);

      // the frozen copy never updates; score both on the last 50 samples
      double frozen_ss = 0.0;
      std::size_t count = 0;
      const std::size_t n = data.change_ds.size();
      for (std::size_t k = (n > 50 ? n - 50 : 0); k < n; ++k) {
        const double e = predict(model, data.change_ds.inputs[k]).output -
                         data.change_ds.targets[k];
        frozen_ss += e * e;
        ++count;
      }
      const double frozen_rms = std::sqrt(frozen_ss / count);
      const double adaptive_rms = trace.trailing_rms.back();
      if (!(adaptive_rms < frozen_rms)) {
        ok = false;
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "%s seed %llu: adaptive %.4g vs frozen %.4g",
                      comp.name().c_str(),
                      static_cast<unsigned long long>(seed), adaptive_rms,
                      frozen_rms);
        detail = buf;
      }
    }
  }
  report(7, "adapting model beats its frozen copy after the switch", ok,
         detail);
}

TEST_CASE("8 descent property") {
  const MgData data;
  bool ok = true;
  std::string detail;
  for (const Composition& comp : kSmoothKinds) {
    for (std::uint64_t seed = 0; seed < 5 && ok; ++seed) {
      TrainConfig tc;
      tc.alpha_c = tc.alpha_delta = tc.alpha_d = 1e-3;
      tc.max_epochs = 40;
      tc.restarts = 1;
      tc.seed = seed;
      auto [model, rep] = identify(data.train_ds, 2, comp, tc);
      int down = 0, total = 0;
      for (std::size_t i = 1; i < rep.history.size(); ++i) {
        ++total;
        if (rep.history[i].error <= rep.history[i - 1].error + 1e-12) ++down;
      }
      if (total == 0 || down < static_cast<int>(std::ceil(0.95 * total))) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s seed %llu: %d/%d non-increasing",
                      comp.name().c_str(),
                      static_cast<unsigned long long>(seed), down, total);
        detail = buf;
        ok = false;
      }
    }
  }
  report(8, "epoch error non-increasing at small step length", ok, detail);
}

TEST_CASE("9 benchmark determinism") {
  const fs::path d1 = "acceptance_det_a", d2 = "acceptance_det_b";
  fs::create_directories(d1);
  fs::create_directories(d2);
  REQUIRE(fzi_reproduce("mackey-glass", 42, d1.string().c_str()) == FZI_OK);
  REQUIRE(fzi_reproduce("mackey-glass", 42, d2.string().c_str()) == FZI_OK);

  bool ok = slurp(d1 / "results.csv") == slurp(d2 / "results.csv");
  std::string detail = ok ? "" : "results.csv differs";
  for (const auto& entry : fs::directory_iterator(d1)) {
    if (entry.path().extension() != ".svg") continue;
    const fs::path other = d2 / entry.path().filename();
    if (slurp(entry.path()) != slurp(other)) {
      ok = false;
      detail = entry.path().filename().string() + " differs";
    }
  }
  report(9, "repeated runs are byte-identical", ok, detail);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("10 model persistence") {
  std::mt19937 rng(20240810);
  std::uniform_real_distribution<double> center(-3.0, 3.0);
  std::uniform_real_distribution<double> spread(1e-3, 4.0);
  std::uniform_real_distribution<double> conseq(-10.0, 10.0);
  std::uniform_real_distribution<double> conf(0.1, 1.0);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    FuzzyModel model;
    model.composition = kAllKinds[trial % kAllKinds.size()];
    model.input_arity = 1 + static_cast<int>(rng() % 4);
    const int rules = 1 + static_cast<int>(rng() % 6);
    for (int r = 0; r < rules; ++r) {
      Rule rule;
      for (int j = 0; j < model.input_arity; ++j) {
        rule.antecedents.emplace_back(center(rng), spread(rng));
      }
      rule.consequent_center = conseq(rng);
      rule.confidence = conf(rng);
      model.rules.push_back(std::move(rule));
    }
    if (trial % 3 == 0) {
      Normalization norm;
      for (int j = 0; j < model.input_arity; ++j) {
        const double lo = center(rng);
        norm.input_min.push_back(lo);
        norm.input_max.push_back(lo + spread(rng));
      }
      norm.output_min = conseq(rng);
      norm.output_max = norm.output_min + spread(rng);
      model.normalization = std::move(norm);
    }

    const std::string text = save_model(model);
    const FuzzyModel back = load_model(text);
    if (save_model(back) != text) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ", " +
               model.composition.name();
      break;
    }
    for (int r = 0; r < rules && ok; ++r) {
      if (back.rules[r].consequent_center != model.rules[r].consequent_center ||
          back.rules[r].confidence != model.rules[r].confidence) {
        ok = false;
      }
      for (int j = 0; j < model.input_arity; ++j) {
        if (back.rules[r].antecedents[j].center !=
                model.rules[r].antecedents[j].center ||
            back.rules[r].antecedents[j].spread !=
                model.rules[r].antecedents[j].spread) {
          ok = false;
        }
      }
      if (!ok) detail = "field drift at trial " + std::to_string(trial);
    }
  }
  report(10, "100 models survive save/load bit-exactly", ok, detail);
}
