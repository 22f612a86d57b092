// Command-line front end; talks to the library exclusively through the
// C API in fuzzident.h.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "fuzzident.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string out_path(const std::string& out_dir, const std::string& name) {
  if (name.find('/') != std::string::npos) return name;  // explicit path wins
  if (out_dir.empty() || out_dir == ".") return name;
  return out_dir.back() == '/' ? out_dir + name : out_dir + "/" + name;
}

int report_failure(fzi_status status) {
  std::fprintf(stderr, "error: %s\n", fzi_last_error());
  return status == FZI_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy system identification benchmark tool"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  if (const char* env = std::getenv("FUZZIDENT_OUT")) out_dir = env;
  app.add_option("--out-dir", out_dir,
                 "Directory for output files (env: FUZZIDENT_OUT)");

  // generate
  auto* generate = app.add_subcommand("generate", "Simulate a reference plant");
  std::string plant;
  generate->add_option("plant", plant, "mackey-glass or cstr")
      ->required()
      ->check(CLI::IsMember({"mackey-glass", "cstr"}));
  std::string series_out = "series.csv", dataset_out;
  generate->add_option("--series-out", series_out, "Series CSV path");
  generate->add_option("--dataset-out", dataset_out,
                       "Also write the lag-embedded regression dataset");
  double duration = -1.0, dt = -1.0;
  generate->add_option("--duration", duration, "Simulated time span");
  generate->add_option("--dt", dt, "Integration step");
  unsigned long long gen_seed = 0;
  generate->add_option("--seed", gen_seed, "Scenario RNG seed");
  // mackey-glass specifics
  fzi_mg_options mg;
  fzi_mg_options_init(&mg);
  std::string mg_scenario = "nominal";
  generate->add_option("--scenario", mg_scenario,
                       "mackey-glass scenario: nominal, param-change, noise")
      ->check(CLI::IsMember({"nominal", "param-change", "noise"}));
  generate->add_option("--tau", mg.tau, "Mackey-Glass delay")
      ->check(CLI::PositiveNumber);
  generate->add_option("--mg-b", mg.b, "Mackey-Glass decay parameter b");
  generate->add_option("--new-b", mg.new_b, "b after the parametric change");
  generate->add_option("--switch-time", mg.switch_time,
                       "Time of the parametric change");
  generate->add_option("--noise-amplitude", mg.noise_amplitude,
                       "Noise scenario amplitude on b");
  // cstr specifics
  fzi_cstr_options cstr;
  fzi_cstr_options_init(&cstr);
  std::string qc_profile = "constant";
  generate->add_option("--qc-profile", qc_profile,
                       "cstr coolant profile: constant or paper")
      ->check(CLI::IsMember({"constant", "paper"}));
  generate->add_option("--qc", cstr.qc_constant, "Constant coolant flow, l/min");
  bool tc0_sin = false;
  generate->add_flag("--tc0-sinusoid", tc0_sin,
                     "Add the sinusoidal coolant-temperature disturbance");

  // train
  auto* train = app.add_subcommand("train", "Identify a model from a dataset");
  std::string train_dataset, composition = "atan";
  std::string model_out = "model.json", convergence_out = "convergence.csv";
  fzi_train_options topts;
  fzi_train_options_init(&topts);
  double beta = 2.0;
  train->add_option("dataset", train_dataset, "Dataset CSV")->required();
  train->add_option("--composition", composition,
                    "minmax, prodsum, smooth1, atan, acos, smooth4");
  train->add_option("--beta", beta, "smooth1 shape parameter (> 1)");
  train->add_option("--model-out", model_out, "Model file path");
  train->add_option("--convergence-out", convergence_out,
                    "Per-epoch error CSV");
  train->add_option("--mfs-per-input", topts.mfs_per_input,
                    "Membership functions per input");
  train->add_option("--alpha-c", topts.alpha_c, "Center step length");
  train->add_option("--alpha-delta", topts.alpha_delta, "Spread step length");
  train->add_option("--alpha-d", topts.alpha_d, "Consequent step length");
  train->add_option("--epsilon", topts.epsilon, "Accuracy threshold");
  train->add_option("--max-epochs", topts.max_epochs, "Epoch cap");
  train->add_option("--restarts", topts.restarts, "Multi-start count");
  train->add_option("--seed", topts.seed, "Initialization seed");

  // adapt
  auto* adapt = app.add_subcommand("adapt", "Online self-learning on a stream");
  std::string adapt_model, adapt_stream;
  std::string adapted_out = "adapted.json", trace_out = "trace.csv";
  fzi_adapt_options aopts;
  fzi_adapt_options_init(&aopts);
  adapt->add_option("model", adapt_model, "Trained model file")->required();
  adapt->add_option("stream", adapt_stream, "Stream dataset CSV")->required();
  adapt->add_option("--model-out", adapted_out, "Updated model path");
  adapt->add_option("--trace-out", trace_out, "Adaptation trace CSV");
  adapt->add_option("--epsilon", aopts.epsilon, "Update threshold");
  adapt->add_option("--alpha-c", aopts.alpha_c, "Center step length");
  adapt->add_option("--alpha-delta", aopts.alpha_delta, "Spread step length");
  adapt->add_option("--alpha-d", aopts.alpha_d, "Consequent step length");
  adapt->add_option("--horizon", aopts.horizon, "Max samples (-1 = all)");
  adapt->add_option("--rms-window", aopts.rms_window, "Trailing RMS window");

  // predict
  auto* predict = app.add_subcommand("predict", "Frozen-model evaluation");
  std::string predict_model, predict_dataset, predictions_out;
  predict->add_option("model", predict_model, "Model file")->required();
  predict->add_option("dataset", predict_dataset, "Dataset CSV")->required();
  predict->add_option("--predictions-out", predictions_out,
                      "Per-sample prediction CSV");

  // reproduce
  auto* reproduce =
      app.add_subcommand("reproduce", "Run a full benchmark study");
  std::string example;
  unsigned long long rep_seed = 0;
  reproduce->add_option("example", example, "mackey-glass or cstr")
      ->required()
      ->check(CLI::IsMember({"mackey-glass", "cstr"}));
  reproduce->add_option("--seed", rep_seed, "Study seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*generate) {
    fzi_status status;
    const char* dataset = dataset_out.empty() ? nullptr : dataset_out.c_str();
    const std::string series_path = out_path(out_dir, series_out);
    const std::string dataset_path =
        dataset ? out_path(out_dir, dataset_out) : "";
    if (plant == "mackey-glass") {
      if (duration > 0) mg.duration = duration;
      if (dt > 0) mg.dt = dt;
      mg.seed = gen_seed;
      if (mg_scenario == "param-change") mg.scenario = FZI_MG_PARAM_CHANGE;
      if (mg_scenario == "noise") mg.scenario = FZI_MG_NOISE;
      status = fzi_generate_mackey_glass(
          &mg, series_path.c_str(), dataset ? dataset_path.c_str() : nullptr);
    } else {
      if (duration > 0) cstr.duration = duration;
      if (dt > 0) cstr.dt = dt;
      cstr.paper_qc_steps = qc_profile == "paper" ? 1 : 0;
      cstr.tc0_sinusoid = tc0_sin ? 1 : 0;
      status = fzi_generate_cstr(&cstr, series_path.c_str(),
                                 dataset ? dataset_path.c_str() : nullptr);
    }
    if (status != FZI_OK) return report_failure(status);
    std::printf("wrote %s\n", series_path.c_str());
    return kExitOk;
  }

  if (*train) {
    double training_rms = 0.0;
    const std::string model_path = out_path(out_dir, model_out);
    const std::string conv_path = out_path(out_dir, convergence_out);
    const fzi_status status =
        fzi_train_csv(train_dataset.c_str(), composition.c_str(), beta, &topts,
                      model_path.c_str(), conv_path.c_str(), &training_rms);
    if (status != FZI_OK) return report_failure(status);
    std::printf("wrote %s (training RMS %.6g)\n", model_path.c_str(),
                training_rms);
    return kExitOk;
  }

  if (*adapt) {
    long updates = 0;
    const std::string model_path = out_path(out_dir, adapted_out);
    const std::string trace_path = out_path(out_dir, trace_out);
    const fzi_status status =
        fzi_adapt_csv(adapt_model.c_str(), adapt_stream.c_str(), &aopts,
                      model_path.c_str(), trace_path.c_str(), &updates);
    if (status != FZI_OK) return report_failure(status);
    std::printf("wrote %s (%ld updates)\n", model_path.c_str(), updates);
    return kExitOk;
  }

  if (*predict) {
    double rms = 0.0;
    const char* pred_out =
        predictions_out.empty() ? nullptr : predictions_out.c_str();
    std::string pred_path;
    if (pred_out) {
      pred_path = out_path(out_dir, predictions_out);
      pred_out = pred_path.c_str();
    }
    const fzi_status status = fzi_predict_csv(
        predict_model.c_str(), predict_dataset.c_str(), pred_out, &rms);
    if (status != FZI_OK) return report_failure(status);
    std::printf("RMS %.17g\n", rms);
    return kExitOk;
  }

  if (*reproduce) {
    const fzi_status status =
        fzi_reproduce(example.c_str(), rep_seed, out_dir.c_str());
    if (status != FZI_OK) return report_failure(status);
    std::printf("wrote %s/results.csv\n", out_dir.c_str());
    return kExitOk;
  }

  return kExitUsage;
}
