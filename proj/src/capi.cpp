#include "fuzzident.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzident/adapt.hpp"
#include "fuzzident/bench.hpp"
#include "fuzzident/dataset.hpp"
#include "fuzzident/model.hpp"
#include "fuzzident/norms.hpp"
#include "fuzzident/plants.hpp"
#include "fuzzident/train.hpp"
#include "fuzzident/version.hpp"

struct fzi_model {
  fuzzident::FuzzyModel impl;
};

namespace {

thread_local std::string g_last_error;

fzi_status fail(fzi_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
fzi_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(FZI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(FZI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(FZI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos) {
      return fail(FZI_ERR_IO, what);
    }
    if (what.find("parse") != std::string::npos ||
        what.find("bad number") != std::string::npos ||
        what.find("column") != std::string::npos) {
      return fail(FZI_ERR_PARSE, what);
    }
    if (what.find("non-finite") != std::string::npos) {
      return fail(FZI_ERR_NUMERIC, what);
    }
    return fail(FZI_ERR_INTERNAL, what);
  } catch (const std::exception& e) {
    return fail(FZI_ERR_INTERNAL, e.what());
  }
}

fzi_status require(const void* p, const char* name) {
  if (p) return FZI_OK;
  return fail(FZI_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

void write_sidecar(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << body;
}

}  // namespace

extern "C" {

const char* fzi_version(void) { return fuzzident::kVersion; }

const char* fzi_last_error(void) { return g_last_error.c_str(); }

fzi_status fzi_t_norm(const char* composition, double beta, double a, double b,
                      double* value, double* d_da, double* d_db) {
  if (fzi_status s = require(composition, "composition")) return s;
  return guarded([&] {
    const fuzzident::NormEval e =
        t_norm(fuzzident::Composition::from_name(composition, beta), a, b);
    if (value) *value = e.value;
    if (d_da) *d_da = e.d_da;
    if (d_db) *d_db = e.d_db;
    return FZI_OK;
  });
}

fzi_status fzi_s_norm(const char* composition, double beta, double a, double b,
                      double* value, double* d_da, double* d_db) {
  if (fzi_status s = require(composition, "composition")) return s;
  return guarded([&] {
    const fuzzident::NormEval e =
        s_norm(fuzzident::Composition::from_name(composition, beta), a, b);
    if (value) *value = e.value;
    if (d_da) *d_da = e.d_da;
    if (d_db) *d_db = e.d_db;
    return FZI_OK;
  });
}

fzi_status fzi_model_load(const char* path, fzi_model** out) {
  if (fzi_status s = require(path, "path")) return s;
  if (fzi_status s = require(out, "out")) return s;
  return guarded([&] {
    auto handle = new fzi_model{fuzzident::load_model_file(path)};
    *out = handle;
    return FZI_OK;
  });
}

fzi_status fzi_model_save(const fzi_model* model, const char* path) {
  if (fzi_status s = require(model, "model")) return s;
  if (fzi_status s = require(path, "path")) return s;
  return guarded([&] {
    fuzzident::save_model_file(model->impl, path);
    return FZI_OK;
  });
}

void fzi_model_free(fzi_model* model) { delete model; }

int fzi_model_input_arity(const fzi_model* model) {
  return model ? model->impl.input_arity : 0;
}

int fzi_model_rule_count(const fzi_model* model) {
  return model ? static_cast<int>(model->impl.rule_count()) : 0;
}

fzi_status fzi_model_predict(const fzi_model* model, const double* x, int n,
                             double* y_out) {
  if (fzi_status s = require(model, "model")) return s;
  if (fzi_status s = require(x, "x")) return s;
  if (fzi_status s = require(y_out, "y_out")) return s;
  return guarded([&] {
    *y_out = fuzzident::predict(model->impl,
                                std::span<const double>(x, std::size_t(n)))
                 .output;
    return FZI_OK;
  });
}

void fzi_train_options_init(fzi_train_options* opts) {
  if (!opts) return;
  opts->alpha_c = 0.01;
  opts->alpha_delta = 0.01;
  opts->alpha_d = 0.01;
  opts->epsilon = 1e-3;
  opts->max_epochs = 500;
  opts->restarts = 2;
  opts->mfs_per_input = 2;
  opts->seed = 0;
}

fzi_status fzi_train_csv(const char* dataset_csv, const char* composition,
                         double beta, const fzi_train_options* opts,
                         const char* model_out, const char* convergence_csv,
                         double* training_rms) {
  if (fzi_status s = require(dataset_csv, "dataset_csv")) return s;
  if (fzi_status s = require(composition, "composition")) return s;
  if (fzi_status s = require(opts, "opts")) return s;
  if (fzi_status s = require(model_out, "model_out")) return s;
  return guarded([&] {
    fuzzident::TrainConfig config;
    config.alpha_c = opts->alpha_c;
    config.alpha_delta = opts->alpha_delta;
    config.alpha_d = opts->alpha_d;
    config.epsilon = opts->epsilon;
    config.max_epochs = opts->max_epochs;
    config.restarts = opts->restarts;
    config.seed = opts->seed;
    const fuzzident::TimeSeriesDataset ds =
        fuzzident::read_dataset_csv(dataset_csv);
    auto [model, report] =
        fuzzident::identify(ds, opts->mfs_per_input,
                            fuzzident::Composition::from_name(composition, beta),
                            config);
    fuzzident::save_model_file(model, model_out);
    if (convergence_csv) fuzzident::write_convergence_csv(report, convergence_csv);
    if (training_rms) *training_rms = report.final_rms;
    return FZI_OK;
  });
}

void fzi_adapt_options_init(fzi_adapt_options* opts) {
  if (!opts) return;
  opts->epsilon = 1e-3;
  opts->alpha_c = 0.01;
  opts->alpha_delta = 0.01;
  opts->alpha_d = 0.01;
  opts->horizon = -1;
  opts->rms_window = 50;
}

fzi_status fzi_adapt_csv(const char* model_in, const char* stream_csv,
                         const fzi_adapt_options* opts, const char* model_out,
                         const char* trace_csv, long* update_count) {
  if (fzi_status s = require(model_in, "model_in")) return s;
  if (fzi_status s = require(stream_csv, "stream_csv")) return s;
  if (fzi_status s = require(opts, "opts")) return s;
  return guarded([&] {
    fuzzident::FuzzyModel model = fuzzident::load_model_file(model_in);
    const fuzzident::TimeSeriesDataset stream =
        fuzzident::read_dataset_csv(stream_csv);
    fuzzident::AdaptConfig config;
    config.epsilon = opts->epsilon;
    config.alpha_c = opts->alpha_c;
    config.alpha_delta = opts->alpha_delta;
    config.alpha_d = opts->alpha_d;
    config.horizon = opts->horizon;
    config.rms_window = opts->rms_window;
    const fuzzident::AdaptTrace trace =
        fuzzident::run_online(model, stream, config);
    if (model_out) fuzzident::save_model_file(model, model_out);
    if (trace_csv) fuzzident::write_trace_csv(trace, trace_csv);
    if (update_count) {
      long updates = 0;
      for (const auto& step : trace.steps) updates += step.updated ? 1 : 0;
      *update_count = updates;
    }
    return FZI_OK;
  });
}

fzi_status fzi_predict_csv(const char* model_path, const char* dataset_csv,
                           const char* predictions_csv, double* rms_out) {
  if (fzi_status s = require(model_path, "model_path")) return s;
  if (fzi_status s = require(dataset_csv, "dataset_csv")) return s;
  return guarded([&] {
    const fuzzident::FuzzyModel model = fuzzident::load_model_file(model_path);
    const fuzzident::TimeSeriesDataset ds =
        fuzzident::read_dataset_csv(dataset_csv);
    std::vector<double> residuals;
    residuals.reserve(ds.size());
    std::ofstream out;
    if (predictions_csv) {
      out.open(predictions_csv);
      if (!out) {
        throw std::runtime_error(std::string("cannot open for write: ") +
                                 predictions_csv);
      }
      out << "y_hat,target,e\n";
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const double y_hat = fuzzident::predict(model, ds.inputs[i]).output;
      const double e = y_hat - ds.targets[i];
      residuals.push_back(e);
      if (predictions_csv) {
        out << fuzzident::format_double(y_hat) << ","
            << fuzzident::format_double(ds.targets[i]) << ","
            << fuzzident::format_double(e) << "\n";
      }
    }
    if (rms_out) *rms_out = fuzzident::rms(residuals);
    return FZI_OK;
  });
}

void fzi_mg_options_init(fzi_mg_options* opts) {
  if (!opts) return;
  opts->a = 0.2;
  opts->b = 0.1;
  opts->C = 10.0;
  opts->tau = 17.0;
  opts->x0 = 1.2;
  opts->dt = 0.1;
  opts->duration = 1000.0;
  opts->scenario = FZI_MG_NOMINAL;
  opts->new_b = 0.15;
  opts->switch_time = 500.0;
  opts->noise_amplitude = 0.05;
  opts->seed = 0;
}

fzi_status fzi_generate_mackey_glass(const fzi_mg_options* opts,
                                     const char* series_csv,
                                     const char* dataset_csv) {
  if (fzi_status s = require(opts, "opts")) return s;
  if (fzi_status s = require(series_csv, "series_csv")) return s;
  return guarded([&] {
    fuzzident::MackeyGlassParams params;
    params.a = opts->a;
    params.b = opts->b;
    params.C = opts->C;
    params.tau = opts->tau;
    params.x0 = opts->x0;
    params.dt = opts->dt;
    params.duration = opts->duration;
    fuzzident::Scenario scenario;
    switch (opts->scenario) {
      case FZI_MG_NOMINAL:
        scenario.kind = fuzzident::ScenarioKind::Nominal;
        break;
      case FZI_MG_PARAM_CHANGE:
        scenario.kind = fuzzident::ScenarioKind::ParamChange;
        break;
      case FZI_MG_NOISE:
        scenario.kind = fuzzident::ScenarioKind::Noise;
        break;
      default:
        throw std::invalid_argument("unknown Mackey-Glass scenario tag");
    }
    scenario.new_b = opts->new_b;
    scenario.switch_time = opts->switch_time;
    scenario.noise_amplitude = opts->noise_amplitude;
    scenario.seed = opts->seed;

    const fuzzident::Series series = fuzzident::mackey_glass(params, scenario);
    fuzzident::write_series_csv(series, series_csv);
    write_sidecar(std::string(series_csv) + ".meta",
                  "plant=mackey-glass\nscenario=" + scenario.name() +
                      "\na=" + fuzzident::format_double(params.a) +
                      "\nb=" + fuzzident::format_double(params.b) +
                      "\nC=" + fuzzident::format_double(params.C) +
                      "\ntau=" + fuzzident::format_double(params.tau) +
                      "\nx0=" + fuzzident::format_double(params.x0) +
                      "\ndt=" + fuzzident::format_double(params.dt) +
                      "\nduration=" + fuzzident::format_double(params.duration) +
                      "\nseed=" + std::to_string(opts->seed) + "\n");
    if (dataset_csv) {
      fuzzident::write_dataset_csv(
          fuzzident::mackey_glass_embedding(series, params.dt), dataset_csv);
    }
    return FZI_OK;
  });
}

void fzi_cstr_options_init(fzi_cstr_options* opts) {
  if (!opts) return;
  const fuzzident::CstrParams defaults;
  opts->q = defaults.q;
  opts->V = defaults.V;
  opts->k0 = defaults.k0;
  opts->E_over_R = defaults.E_over_R;
  opts->T0 = defaults.T0;
  opts->Tc0 = defaults.Tc0;
  opts->dH = defaults.dH;
  opts->Cp = defaults.Cp;
  opts->Cpc = defaults.Cpc;
  opts->rho = defaults.rho;
  opts->rho_c = defaults.rho_c;
  opts->ha = defaults.ha;
  opts->Ca0 = defaults.Ca0;
  opts->dt = 0.01;
  opts->duration = 120.0;
  opts->qc_constant = 103.411;
  opts->paper_qc_steps = 0;
  opts->tc0_sinusoid = 0;
  opts->tc0_amplitude = 5.0;
  opts->initial_Ca = 0.1;
  opts->initial_T = 438.5;
}

fzi_status fzi_generate_cstr(const fzi_cstr_options* opts,
                             const char* series_csv, const char* dataset_csv) {
  if (fzi_status s = require(opts, "opts")) return s;
  if (fzi_status s = require(series_csv, "series_csv")) return s;
  return guarded([&] {
    fuzzident::CstrParams params;
    params.q = opts->q;
    params.V = opts->V;
    params.k0 = opts->k0;
    params.E_over_R = opts->E_over_R;
    params.T0 = opts->T0;
    params.Tc0 = opts->Tc0;
    params.dH = opts->dH;
    params.Cp = opts->Cp;
    params.Cpc = opts->Cpc;
    params.rho = opts->rho;
    params.rho_c = opts->rho_c;
    params.ha = opts->ha;
    params.Ca0 = opts->Ca0;

    fuzzident::QcProfile qc;
    if (opts->paper_qc_steps) {
      qc = fuzzident::QcProfile::paper_steps();
    } else {
      qc.levels = {opts->qc_constant};
    }
    fuzzident::Tc0Disturbance disturbance;
    disturbance.enabled = opts->tc0_sinusoid != 0;
    disturbance.amplitude = opts->tc0_amplitude;

    const fuzzident::Series series =
        fuzzident::cstr_simulate(params, qc, disturbance, opts->dt,
                                 opts->duration,
                                 {opts->initial_Ca, opts->initial_T});
    fuzzident::write_series_csv(series, series_csv);
    write_sidecar(std::string(series_csv) + ".meta",
                  "plant=cstr\nqc_profile=" +
                      std::string(opts->paper_qc_steps ? "paper" : "constant") +
                      "\nqc_constant=" +
                      fuzzident::format_double(opts->qc_constant) +
                      "\ntc0_sinusoid=" +
                      std::to_string(opts->tc0_sinusoid) +
                      "\ndt=" + fuzzident::format_double(opts->dt) +
                      "\nduration=" + fuzzident::format_double(opts->duration) +
                      "\ninitial_Ca=" +
                      fuzzident::format_double(opts->initial_Ca) +
                      "\ninitial_T=" +
                      fuzzident::format_double(opts->initial_T) + "\n");
    if (dataset_csv) {
      fuzzident::write_dataset_csv(fuzzident::cstr_embedding(series, opts->dt),
                                   dataset_csv);
    }
    return FZI_OK;
  });
}

fzi_status fzi_reproduce(const char* example, unsigned long long seed,
                         const char* out_dir) {
  if (fzi_status s = require(example, "example")) return s;
  if (fzi_status s = require(out_dir, "out_dir")) return s;
  return guarded([&] {
    fuzzident::ExperimentSpec spec;
    if (std::strcmp(example, "mackey-glass") == 0) {
      spec = fuzzident::ExperimentSpec::mackey_glass_study(seed, out_dir);
    } else if (std::strcmp(example, "cstr") == 0) {
      spec = fuzzident::ExperimentSpec::cstr_study(seed, out_dir);
    } else {
      throw std::invalid_argument(
          "unknown example (expected mackey-glass or cstr)");
    }
    const fuzzident::ResultTable table = fuzzident::run_experiment(spec);
    bool any_ok = false;
    for (const auto& row : table.rows) any_ok |= !row.failed;
    if (!any_ok) throw std::runtime_error("every composition failed");
    return FZI_OK;
  });
}

}  // extern "C"
