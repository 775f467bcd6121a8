#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gcrf/admm.hpp"
#include "gcrf/datagen.hpp"
#include "gcrf/errors.hpp"
#include "gcrf/evalkit.hpp"
#include "gcrf/gd.hpp"
#include "gcrf/landmarks.hpp"
#include "gcrf/model.hpp"
#include "io.hpp"

namespace gcrf::cli {

namespace fs = std::filesystem;

namespace {

// Offsets the dataset stream from the ground-truth stream for one seed.
constexpr std::uint64_t kDatasetSeedSalt = 0x9E3779B97F4A7C15ULL;

std::vector<std::string> numbered(const std::string& prefix, Index count) {
  std::vector<std::string> names;
  for (Index i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

struct GenerateOptions {
  Index n = 0;
  Index p = 0;
  Index m = 0;
  std::uint64_t seed = 0;
  double diag_dominance = 1.0;
  double theta_density = 0.5;
  fs::path out_dir;
};

struct TrainOptions {
  fs::path x_path;
  fs::path y_path;
  std::string solver = "admm";
  fs::path model_path = "model.json";
  fs::path trace_path = "trace.csv";
  bool center = false;
  SolverConfig config;
  bool max_iter_set = false;
};

struct PredictOptions {
  fs::path model_path;
  fs::path x_path;
  fs::path out_path = "predictions.csv";
};

struct EvalOptions {
  fs::path pred_path;
  fs::path truth_path;
  double threshold = 0.0;
  fs::path out_path;
};

struct BenchOptions {
  int seeds = 5;
  std::uint64_t first_seed = 1;
  Index n = 5;
  Index p = 3;
  Index m = 1000;
  fs::path out_path;
  SolverConfig config;
};

struct FeaturesOptions {
  fs::path landmarks_path;
  fs::path reference_path;
  fs::path out_path = "features.csv";
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  const GroundTruth truth =
      sample_ground_truth(opt.n, opt.p, opt.diag_dominance, opt.theta_density, opt.seed);
  const Dataset data = sample_dataset(truth, opt.m, opt.seed ^ kDatasetSeedSalt);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw Error("cannot create " + opt.out_dir.string() + ": " + ec.message());
  io::write_matrix_csv(opt.out_dir / "X.csv", data.x, numbered("x", opt.n));
  io::write_matrix_csv(opt.out_dir / "Y.csv", data.y, numbered("y", opt.p));
  io::write_model_json(opt.out_dir / "truth.model.json", {truth.params, {}, {}});

  out << "generated X.csv (" << opt.m << "x" << opt.n << "), Y.csv (" << opt.m << "x" << opt.p
      << "), truth.model.json in " << opt.out_dir.string() << "\n"
      << "seed " << opt.seed << "\n";
  return kExitOk;
}

int cmd_train(TrainOptions opt, std::ostream& out) {
  Dataset data{io::read_matrix_csv(opt.x_path), io::read_matrix_csv(opt.y_path)};
  data.validate();
  io::ModelFile model;
  if (opt.center) {
    model.x_mean = data.x.colwise().mean().transpose();
    model.y_mean = data.y.colwise().mean().transpose();
    data = center_columns(data);
  }
  const SufficientStats stats = compute_stats(data);

  FitResult fit;
  if (opt.solver == "gd") {
    fit = fit_gd(stats, opt.config);
  } else {
    if (!opt.max_iter_set) opt.config.max_iter = SolverConfig::admm_defaults().max_iter;
    fit = fit_admm(stats, opt.config);
  }
  model.params = fit.params;
  io::write_model_json(opt.model_path, model);
  io::write_trace_csv(opt.trace_path, fit.trace);

  out << opt.solver << ": " << fit.iterations << " iterations, objective "
      << io::format_double(fit.trace.back().objective)
      << (fit.converged ? ", converged" : ", NOT converged") << "\n"
      << "model -> " << opt.model_path.string() << ", trace -> " << opt.trace_path.string()
      << "\n";
  return fit.converged ? kExitOk : kExitNotConverged;
}

int cmd_predict(const PredictOptions& opt, std::ostream& out) {
  const io::ModelFile model = io::read_model_json(opt.model_path);
  Matrix x = io::read_matrix_csv(opt.x_path);
  if (x.cols() != model.params.n()) {
    throw DimensionMismatch(opt.x_path.string() + " has " + std::to_string(x.cols()) +
                            " columns but the model expects n=" +
                            std::to_string(model.params.n()));
  }
  model.params.validate();
  if (model.x_mean) x.rowwise() -= model.x_mean->transpose();
  Matrix y_hat = predict(model.params, x);
  if (model.y_mean) y_hat.rowwise() += model.y_mean->transpose();
  io::write_matrix_csv(opt.out_path, y_hat, numbered("y", model.params.p()));
  out << "wrote " << y_hat.rows() << "x" << y_hat.cols() << " predictions to "
      << opt.out_path.string() << "\n";
  return kExitOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out) {
  const Matrix pred = io::read_matrix_csv(opt.pred_path);
  const Matrix truth = io::read_matrix_csv(opt.truth_path);
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols()) {
    throw DimensionMismatch("predictions and truth have different shapes");
  }
  std::ostringstream report;
  report << "column,mse,auc\n";
  out << "column  mse                      auc\n";
  for (Index j = 0; j < pred.cols(); ++j) {
    const double mse = (pred.col(j) - truth.col(j)).squaredNorm() / static_cast<double>(pred.rows());
    std::vector<double> scores(pred.col(j).data(), pred.col(j).data() + pred.rows());
    std::vector<int> labels(static_cast<std::size_t>(truth.rows()));
    for (Index i = 0; i < truth.rows(); ++i) labels[i] = truth(i, j) > opt.threshold ? 1 : 0;
    const bool both = std::any_of(labels.begin(), labels.end(), [](int l) { return l == 1; }) &&
                      std::any_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
    const std::string auc = both ? io::format_double(roc_auc(scores, labels)) : "";
    report << (j + 1) << ',' << io::format_double(mse) << ',' << auc << '\n';
    out << "y" << (j + 1) << "      " << io::format_double(mse) << "  "
        << (both ? auc : "n/a (single class)") << "\n";
  }
  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw Error("cannot write " + opt.out_path.string());
    file << report.str();
  }
  return kExitOk;
}

std::string optional_int(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  std::ostringstream csv;
  csv << "seed,n,p,m,gd_iters,admm_iters,f_star,agree\n";
  int admm_not_worse = 0;
  int agreeing = 0;
  const auto suite = standard_suite(opt.seeds, opt.first_seed, opt.n, opt.p, opt.m);
  for (const auto& c : suite) {
    const SolverComparison cmp = compare_solvers(compute_stats(suite_dataset(c)), opt.config);
    csv << c.seed << ',' << c.n << ',' << c.p << ',' << c.m << ',' << optional_int(cmp.gd_iters)
        << ',' << optional_int(cmp.admm_iters) << ',' << io::format_double(cmp.f_star) << ','
        << (cmp.agree ? "true" : "false") << '\n';
    if (cmp.admm_iters && (!cmp.gd_iters || *cmp.admm_iters <= *cmp.gd_iters)) ++admm_not_worse;
    agreeing += cmp.agree;
  }

  if (opt.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw Error("cannot write " + opt.out_path.string());
    file << csv.str();
  }
  out << "suite: " << suite.size() << " cases (n=" << opt.n << ", p=" << opt.p << ", m=" << opt.m
      << ")\n"
      << "admm reached f*+1e-6 in no more iterations than gd on " << admm_not_worse << "/"
      << suite.size() << "\n"
      << "final parameters agree within 1e-4 on " << agreeing << "/" << suite.size() << "\n";
  return kExitOk;
}

int cmd_features(const FeaturesOptions& opt, std::ostream& out) {
  const auto frames = load_landmark_csv(opt.landmarks_path);
  if (frames.empty()) throw Error(opt.landmarks_path.string() + " contains no frames");
  LandmarkFrame reference;
  if (opt.reference_path.empty()) {
    reference = mean_reference(frames);
  } else {
    const auto ref = load_landmark_csv(opt.reference_path);
    if (ref.empty()) throw Error(opt.reference_path.string() + " contains no frames");
    reference = ref.front();
  }
  const Matrix features = build_feature_matrix(frames, reference);
  std::vector<std::string> header;
  for (Index k = 1; k <= reference.size(); ++k) {
    header.push_back("x" + std::to_string(k));
    header.push_back("y" + std::to_string(k));
  }
  io::write_matrix_csv(opt.out_path, features, header);
  out << "wrote " << features.rows() << "x" << features.cols() << " features to "
      << opt.out_path.string() << "\n";
  return kExitOk;
}

void add_solver_flags(CLI::App& cmd, SolverConfig& c, bool* max_iter_set = nullptr) {
  auto* max_iter = cmd.add_option("--max-iter", c.max_iter, "Iteration cap")
                       ->check(CLI::NonNegativeNumber);
  if (max_iter_set) {
    max_iter->each([max_iter_set](const std::string&) { *max_iter_set = true; });
  }
  cmd.add_option("--grad-tol", c.grad_tol, "Relative gradient tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--armijo-c", c.armijo_c, "Armijo sufficient-decrease constant")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--backtrack", c.backtrack_factor, "Step reduction factor")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--initial-step", c.initial_step, "First trial step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--l1", c.l1_weight, "L1 weight on Θ and off-diagonal Λ")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--mu0", c.mu0, "Initial ADMM penalty")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--beta", c.beta, "Penalty growth factor")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--mu-max", c.mu_max, "Penalty cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--primal-tol", c.primal_tol, "ADMM primal residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--dual-tol", c.dual_tol, "ADMM dual residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian conditional random field training and evaluation", "gcrf"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample a synthetic ground truth and dataset");
  generate->add_option("--n", gen.n, "Input dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--p", gen.p, "Output dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--m", gen.m, "Number of samples")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--diag-dominance", gen.diag_dominance, "Added to Λ's diagonal")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  generate->add_option("--theta-density", gen.theta_density, "Probability a Θ entry is nonzero")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  generate->add_option("--out", gen.out_dir, "Output directory")->required();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Fit a model from X/Y CSV files");
  train_cmd->add_option("--x", train.x_path, "Input CSV (m×n)")->required();
  train_cmd->add_option("--y", train.y_path, "Output CSV (m×p)")->required();
  train_cmd->add_option("--solver", train.solver, "gd or admm")
      ->check(CLI::IsMember({"gd", "admm"}))
      ->capture_default_str();
  train_cmd->add_option("--model", train.model_path, "Model JSON to write")->capture_default_str();
  train_cmd->add_option("--trace", train.trace_path, "Trace CSV to write")->capture_default_str();
  train_cmd->add_flag("--center", train.center, "Subtract column means before fitting");
  add_solver_flags(*train_cmd, train.config, &train.max_iter_set);

  PredictOptions pred;
  auto* predict_cmd = app.add_subcommand("predict", "Conditional-mean predictions");
  predict_cmd->add_option("--model", pred.model_path, "Model JSON")->required();
  predict_cmd->add_option("--x", pred.x_path, "Input CSV (m×n)")->required();
  predict_cmd->add_option("--out", pred.out_path, "Predictions CSV")->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "MSE and ROC AUC of predictions against truth");
  eval_cmd->add_option("--pred", eval.pred_path, "Predictions CSV")->required();
  eval_cmd->add_option("--truth", eval.truth_path, "Observed outputs CSV")->required();
  eval_cmd->add_option("--threshold", eval.threshold, "Truth values above this are positives")
      ->capture_default_str();
  eval_cmd->add_option("--out", eval.out_path, "Optional report CSV");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare gd and admm on the synthetic suite");
  bench_cmd->add_option("--seeds", bench.seeds, "Number of seeds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--first-seed", bench.first_seed, "First seed")->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Input dimension")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--p", bench.p, "Output dimension")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--m", bench.m, "Samples per case")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--out", bench.out_path, "Report CSV (stdout when omitted)");
  add_solver_flags(*bench_cmd, bench.config);

  FeaturesOptions feat;
  auto* features_cmd = app.add_subcommand("features", "Aligned landmark features from a landmark CSV");
  features_cmd->add_option("--landmarks", feat.landmarks_path, "Landmark CSV")->required();
  features_cmd->add_option("--reference", feat.reference_path,
                           "Reference shape CSV (first frame used); default is the mean shape");
  features_cmd->add_option("--out", feat.out_path, "Feature CSV")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*train_cmd) return cmd_train(train, out);
    if (*predict_cmd) return cmd_predict(pred, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*features_cmd) return cmd_features(feat, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gcrf::cli
