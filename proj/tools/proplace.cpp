// Copyright 2026 The proplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: data generation, preparation, the full
// explain-and-evaluate run, and standalone certification.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include "proplace/certify.hpp"
#include "proplace/dataset.hpp"
#include "proplace/errors.hpp"
#include "proplace/experiment.hpp"
#include "proplace/generators.hpp"
#include "proplace/milp.hpp"
#include "proplace/report.hpp"
#include "proplace/serialization.hpp"

namespace fs = std::filesystem;
using namespace proplace;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

Dataset load_raw(const std::string& path) {
  Dataset raw = read_csv_file(path);
  if (raw.size() == 0) throw Error(ErrorCode::kDegenerateData, path + " has no rows");
  return raw;
}

PreparedData prepare_and_warn(const Dataset& raw, std::uint64_t seed) {
  PreparedData data = prepare(raw, seed);
  for (int j : data.constant_features) {
    std::cerr << "warning: feature '" << raw.feature_names.at(j) << "' is constant and scales to 0\n";
  }
  return data;
}

void write_splits(const fs::path& dir, const PreparedData& data) {
  fs::create_directories(dir);
  write_csv_file((dir / "first_half.csv").string(), data.splits.first_half);
  write_csv_file((dir / "second_half.csv").string(), data.splits.second_half);
  write_csv_file((dir / "train.csv").string(), data.splits.train);
  write_csv_file((dir / "test.csv").string(), data.splits.test);
  write_json(dir / "scaler.json", scaler_to_json(data.scaler));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plausible and provably robust counterfactual explanations for ReLU networks"};
  app.require_subcommand(1);

  // gen-data
  std::string kind = "moons", gen_out;
  int gen_n = 500;
  std::optional<double> gen_noise;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic dataset as CSV");
  gen->add_option("--kind", kind, "moons, blobs or credit")->check(CLI::IsMember({"moons", "blobs", "credit"}));
  gen->add_option("--n", gen_n, "Number of rows")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--noise", gen_noise, "Noise scale for moons and blobs (default 0.1 and 0.08)");
  gen->add_option("--out", gen_out, "Output CSV")->required();

  // prepare
  std::string prep_data, prep_out = "prepared";
  std::uint64_t prep_seed = 0;
  auto* prep = app.add_subcommand("prepare", "Scale a CSV and write its halves and train/test splits");
  prep->add_option("--data", prep_data, "Input CSV with a label column")->required()->check(CLI::ExistingFile);
  prep->add_option("--seed", prep_seed, "Shuffle seed")->envname("PROPLACE_SEED");
  prep->add_option("--out", prep_out, "Output directory")->envname("PROPLACE_OUT");

  // run
  RunConfig rc;
  std::string run_out = "results";
  double time_limit = rc.proplace.milp_time_limit.count();
  rc.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* run = app.add_subcommand("run", "Train, explain class-0 inputs and evaluate the explanations");
  run->add_option("--data", rc.data_path, "Input CSV with a label column")
      ->required()
      ->check(CLI::ExistingFile)
      ->envname("PROPLACE_DATA");
  run->add_option("--delta", rc.proplace.delta, "Model-shift radius")->envname("PROPLACE_DELTA")->capture_default_str();
  run->add_option("--k", rc.proplace.k, "Robust neighbours per input")->envname("PROPLACE_K")->capture_default_str();
  run->add_option("--sigma", rc.proplace.sigma, "Validity margin")->envname("PROPLACE_SIGMA")->capture_default_str();
  run->add_option("--t", rc.proplace.t, "Termination slack")->envname("PROPLACE_T")->capture_default_str();
  run->add_option("--max-iters", rc.proplace.max_iters, "Outer iteration cap")
      ->envname("PROPLACE_MAX_ITERS")
      ->capture_default_str();
  run->add_option("--milp-time-limit", time_limit, "Seconds per MILP solve")
      ->envname("PROPLACE_MILP_TIME_LIMIT")
      ->capture_default_str();
  run->add_option("--n-explain", rc.n_explain, "Inputs to explain")->envname("PROPLACE_N_EXPLAIN")->capture_default_str();
  run->add_option("--seed", rc.seed, "Master seed")->envname("PROPLACE_SEED")->capture_default_str();
  run->add_option("--hidden", rc.train.hidden, "Hidden layer widths")
      ->delimiter(',')
      ->envname("PROPLACE_HIDDEN")
      ->capture_default_str();
  run->add_option("--epochs", rc.train.epochs, "Training epochs")->envname("PROPLACE_EPOCHS")->capture_default_str();
  run->add_option("--lr", rc.train.learning_rate, "Adam learning rate")->envname("PROPLACE_LR")->capture_default_str();
  run->add_option("--threads", rc.threads, "Worker threads")->envname("PROPLACE_THREADS");
  run->add_option("--lp-dump", rc.lp_dump_dir, "Directory for LP files of every MILP")->envname("PROPLACE_LP_DUMP");
  run->add_option("--out", run_out, "Output directory")->envname("PROPLACE_OUT")->capture_default_str();

  // certify
  std::string model_path, point_path, cert_lp_dump;
  double cert_delta = 0.0;
  auto* cert = app.add_subcommand("certify", "Check Δ-robustness of one point");
  cert->add_option("--model", model_path, "Network JSON")->required()->check(CLI::ExistingFile);
  cert->add_option("--point", point_path, "Point JSON (array or {\"x\": [...]})")->required()->check(CLI::ExistingFile);
  cert->add_option("--delta", cert_delta, "Model-shift radius")->required()->envname("PROPLACE_DELTA");
  cert->add_option("--lp-dump", cert_lp_dump, "Write the worst-case MILP to this LP file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Dataset d = kind == "moons"   ? make_moons(gen_n, gen_seed, gen_noise.value_or(0.1))
                  : kind == "blobs" ? make_blobs(gen_n, gen_seed, gen_noise.value_or(0.08))
                                    : make_credit(gen_n, gen_seed);
      write_csv_file(gen_out, d);
      std::cout << "wrote " << d.size() << " rows to " << gen_out << "\n";
      return 0;
    }
    if (*prep) {
      const Dataset raw = load_raw(prep_data);
      const PreparedData data = prepare_and_warn(raw, prep_seed);
      write_splits(prep_out, data);
      std::cout << "first half " << data.splits.first_half.size() << ", second half "
                << data.splits.second_half.size() << ", train " << data.splits.train.size() << ", test "
                << data.splits.test.size() << "\n";
      return 0;
    }
    if (*run) {
      rc.proplace.milp_time_limit = std::chrono::duration<double>(time_limit);
      const Dataset raw = load_raw(rc.data_path);
      const PreparedData data = prepare_and_warn(raw, rc.seed);
      const ExperimentResult result = run_experiment(data, rc);
      const fs::path out(run_out);
      write_splits(out / "splits", data);
      save_network((out / "model.json").string(), result.model);
      write_json(out / "results.json", experiment_to_json(result));
      write_json(out / "traces.json", traces_to_json(result));
      const std::string table = format_table("proplace", result.metrics);
      write_text(out / "table.txt", table);
      std::cout << table;
      if (result.available < rc.n_explain) {
        std::cout << "note: only " << result.available << " class-0 inputs available, " << rc.n_explain
                  << " requested\n";
      }
      for (std::size_t i = 0; i < result.instances.size(); ++i) {
        const InstanceOutcome& o = result.instances[i];
        if (!o.result) std::cout << "instance " << i << ": " << o.error << ": " << o.message << "\n";
      }
      return all_instances_resolved(result) ? 0 : 1;
    }
    if (*cert) {
      const Network net = load_network(model_path);
      const Vec x = load_point(point_path);
      CertifyOptions opts;
      if (!cert_lp_dump.empty()) {
        opts.observer = [&](const milp::Model& m, const std::string&) { write_text(cert_lp_dump, milp::export_lp(m)); };
      }
      const Certificate c = certify_delta_robust(net, ModelShiftSet(cert_delta), x, opts);
      std::cout << std::setprecision(12) << (c.robust ? "robust" : "not robust") << "\n"
                << "worst_logit " << c.worst_logit << "\n"
                << "interval [" << c.bounds.l << ", " << c.bounds.u << "]\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
