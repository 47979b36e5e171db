// smmi: mutual information of spatial/index modulation links, three ways
// (Monte Carlo oracle, Jensen approximation, trained network), plus the
// dataset/training/evaluation jobs around them.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "smmi/channel.hpp"
#include "smmi/dataset.hpp"
#include "smmi/errors.hpp"
#include "smmi/evaluate.hpp"
#include "smmi/experiments.hpp"
#include "smmi/jensen.hpp"
#include "smmi/mi_monte_carlo.hpp"
#include "smmi/network.hpp"
#include "smmi/rng.hpp"
#include "smmi/trainer.hpp"

namespace {

std::vector<smmi::ConstellationKind> parse_constellations(const std::string& csv) {
  std::vector<smmi::ConstellationKind> kinds;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) kinds.push_back(smmi::parse_constellation(item));
  if (kinds.empty()) throw CLI::ValidationError("--constellations", "empty list");
  return kinds;
}

Eigen::MatrixXcd parse_h(const std::vector<double>& reals, int nt) {
  if (static_cast<int>(reals.size()) != 2 * nt * nt)
    throw CLI::ValidationError(
        "--h", "expected " + std::to_string(2 * nt * nt) + " reals (re,im row-major)");
  Eigen::MatrixXcd h(nt, nt);
  std::size_t at = 0;
  for (int r = 0; r < nt; ++r)
    for (int c = 0; c < nt; ++c) {
      h(r, c) = {reals[at], reals[at + 1]};
      at += 2;
    }
  return h;
}

Eigen::MatrixXcd read_h_file(const std::string& path, int nt) {
  std::ifstream in(path);
  if (!in) throw smmi::DataError("cannot open H file: " + path);
  std::vector<double> reals;
  double v;
  while (in >> v) reals.push_back(v);
  if (static_cast<int>(reals.size()) != 2 * nt * nt)
    throw smmi::DataError("H file: expected " + std::to_string(2 * nt * nt) +
                          " reals, got " + std::to_string(reals.size()));
  Eigen::MatrixXcd h(nt, nt);
  std::size_t at = 0;
  for (int r = 0; r < nt; ++r)
    for (int c = 0; c < nt; ++c) {
      h(r, c) = {reals[at], reals[at + 1]};
      at += 2;
    }
  return h;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw smmi::DataError("cannot open output file: " + path);
  out << text;
  if (!out) throw smmi::DataError("failed writing output file: " + path);
}

struct CommonGen {
  int nt = 2;
  std::uint64_t n = 20000;
  int draws = 2000;
  double snr_lo = -20.0, snr_hi = 20.0;
  std::string constellations = "qpsk,8psk,16qam";
  std::vector<double> split{0.70, 0.15, 0.15};
  std::uint64_t seed = 1;
  int threads = 0;
  bool no_resume = false;
};

int run(int argc, char** argv) {
  CLI::App app{"Mutual information of spatial/index modulation links"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // ---- gen-dataset ----------------------------------------------------
  auto* gen = app.add_subcommand("gen-dataset", "Generate a labeled MI dataset");
  CommonGen g;
  std::string gen_out = "dataset.csv";
  gen->add_option("--nt", g.nt, "Antenna count")->check(CLI::IsMember({2, 4, 8}));
  gen->add_option("--n", g.n, "Number of rows")->capture_default_str();
  gen->add_option("--draws", g.draws, "Noise draws per MI label")->capture_default_str();
  gen->add_option("--snr-lo", g.snr_lo, "SNR lower bound, dB")->capture_default_str();
  gen->add_option("--snr-hi", g.snr_hi, "SNR upper bound, dB")->capture_default_str();
  gen->add_option("--constellations", g.constellations, "Comma separated target list")
      ->capture_default_str();
  gen->add_option("--split", g.split, "Train/val/test fractions")->expected(3);
  gen->add_option("--seed", g.seed, "Base seed")->capture_default_str();
  gen->add_option("--threads", g.threads, "Worker cap, 0 = all cores");
  gen->add_flag("--no-resume", g.no_resume, "Ignore an existing partial file");
  gen->add_option("--out", gen_out, "Output path")->capture_default_str();

  // ---- train ----------------------------------------------------------
  auto* tr = app.add_subcommand("train", "Train the MI network on a dataset");
  std::string tr_dataset, tr_model = "model.json", tr_report, tr_config;
  std::string tr_features = "v";
  int tr_hidden = 10, tr_restarts = 10, tr_epochs = 200, tr_patience = 6, tr_quantiles = 5;
  std::uint64_t tr_seed = 1;
  tr->add_option("--dataset", tr_dataset, "Labeled dataset path")->required();
  tr->add_option("--features", tr_features, "i|ii|iii|iv|v|multi4|quant8")
      ->capture_default_str();
  tr->add_option("--hidden", tr_hidden, "Hidden units")->capture_default_str();
  tr->add_option("--restarts", tr_restarts, "Random restarts")->capture_default_str();
  tr->add_option("--max-epochs", tr_epochs, "Epoch cap")->capture_default_str();
  tr->add_option("--patience", tr_patience, "Validation-fail limit")->capture_default_str();
  tr->add_option("--quantiles", tr_quantiles, "Q for quant8 features")->capture_default_str();
  tr->add_option("--seed", tr_seed, "Training seed")->capture_default_str();
  tr->add_option("--config", tr_config, "JSON training config (overrides flags)");
  tr->add_option("--out", tr_model, "Model output path")->capture_default_str();
  tr->add_option("--report", tr_report, "Per-epoch CSV report path");

  // ---- eval -----------------------------------------------------------
  auto* ev = app.add_subcommand("eval", "Evaluate a method against dataset labels");
  std::string ev_method = "nn", ev_model, ev_dataset, ev_split = "test", ev_out;
  int ev_draws = 1000;
  std::uint64_t ev_seed = 1;
  bool ev_noise_floor = false;
  ev->add_option("--method", ev_method, "nn|jensen|oracle")->capture_default_str();
  ev->add_option("--model", ev_model, "Model file (nn method)");
  ev->add_option("--dataset", ev_dataset, "Labeled dataset path")->required();
  ev->add_option("--split", ev_split, "train|val|test")->capture_default_str();
  ev->add_option("--draws", ev_draws, "Noise draws (oracle method)")->capture_default_str();
  ev->add_option("--seed", ev_seed, "Seed (oracle method)")->capture_default_str();
  ev->add_flag("--noise-floor", ev_noise_floor, "Also estimate the label noise floor");
  ev->add_option("--out", ev_out, "Report CSV path (stdout otherwise)");

  // ---- predict ----------------------------------------------------------
  auto* pr = app.add_subcommand("predict", "One-shot MI prediction from a model");
  std::string pr_model, pr_hfile;
  double pr_gamma_db = 0.0;
  std::vector<double> pr_h;
  pr->add_option("--model", pr_model, "Model file")->required();
  pr->add_option("--gamma-db", pr_gamma_db, "SNR in dB")->required();
  pr->add_option("--h", pr_h, "Channel entries, 2*Nt*Nr reals re,im row-major");
  pr->add_option("--h-file", pr_hfile, "Whitespace separated reals, same order");

  // ---- ergodic ----------------------------------------------------------
  auto* er = app.add_subcommand("ergodic", "Ergodic MI curves vs SNR");
  std::string er_model, er_out = "ergodic.csv", er_constellations = "qpsk,8psk,16qam";
  double er_lo = -20.0, er_hi = 20.0, er_step = 4.0;
  int er_channels = 100, er_draws = 1000, er_threads = 0;
  std::uint64_t er_seed = 1;
  er->add_option("--model", er_model, "Model file (adds the nn curve)");
  er->add_option("--snr-lo", er_lo)->capture_default_str();
  er->add_option("--snr-hi", er_hi)->capture_default_str();
  er->add_option("--step", er_step)->capture_default_str();
  er->add_option("--channels", er_channels, "Channels per point")->capture_default_str();
  er->add_option("--draws", er_draws, "Noise draws per channel")->capture_default_str();
  er->add_option("--constellations", er_constellations)->capture_default_str();
  er->add_option("--seed", er_seed)->capture_default_str();
  er->add_option("--threads", er_threads, "Worker cap, 0 = all cores");
  er->add_option("--out", er_out, "Output CSV")->capture_default_str();

  // ---- angle-sweep ------------------------------------------------------
  auto* an = app.add_subcommand("angle-sweep", "MI over the (theta_H, phi) channel grid");
  std::string an_constellation = "qpsk", an_out = "angle_sweep.csv";
  double an_gamma = 2.0;
  int an_theta_steps = 9, an_phi_steps = 17, an_draws = 2000, an_threads = 0;
  std::uint64_t an_seed = 1;
  an->add_option("--gamma", an_gamma, "Linear SNR")->capture_default_str();
  an->add_option("--constellation", an_constellation)->capture_default_str();
  an->add_option("--theta-steps", an_theta_steps, "Grid points over [0, pi/2]")
      ->capture_default_str();
  an->add_option("--phi-steps", an_phi_steps, "Grid points over (-pi, pi]")
      ->capture_default_str();
  an->add_option("--draws", an_draws)->capture_default_str();
  an->add_option("--seed", an_seed)->capture_default_str();
  an->add_option("--threads", an_threads, "Worker cap, 0 = all cores");
  an->add_option("--out", an_out, "Output CSV")->capture_default_str();

  // ---- ablation -----------------------------------------------------------
  auto* ab = app.add_subcommand("ablation", "Global MSE per feature option and width");
  std::string ab_dataset, ab_options = "i,ii,iii,iv,v", ab_out;
  std::vector<int> ab_hidden{10};
  int ab_restarts = 5;
  std::uint64_t ab_seed = 1;
  ab->add_option("--dataset", ab_dataset)->required();
  ab->add_option("--options", ab_options, "Comma separated feature options")
      ->capture_default_str();
  ab->add_option("--hidden", ab_hidden, "Hidden unit counts")->capture_default_str();
  ab->add_option("--restarts", ab_restarts)->capture_default_str();
  ab->add_option("--seed", ab_seed)->capture_default_str();
  ab->add_option("--out", ab_out, "Output CSV (stdout otherwise)");

  // ---- bench -----------------------------------------------------------
  auto* be = app.add_subcommand("bench", "Static op counts and wall time per method");
  std::string be_features = "v", be_out;
  int be_hidden = 20, be_evals = 7500;
  std::uint64_t be_seed = 1;
  be->add_option("--features", be_features)->capture_default_str();
  be->add_option("--hidden", be_hidden)->capture_default_str();
  be->add_option("--n-evals", be_evals)->capture_default_str();
  be->add_option("--seed", be_seed)->capture_default_str();
  be->add_option("--out", be_out, "Output CSV (stdout otherwise)");

  // ---- multi -----------------------------------------------------------
  auto* mu = app.add_subcommand("multi", "Dataset + training + eval for Nt in {4, 8}");
  int mu_nt = 4, mu_q = 5, mu_draws = 2000, mu_hidden = 20, mu_restarts = 5,
      mu_threads = 0;
  std::uint64_t mu_n = 5000, mu_seed = 1;
  std::string mu_outdir = ".";
  mu->add_option("--nt", mu_nt)->check(CLI::IsMember({4, 8}))->capture_default_str();
  mu->add_option("--n", mu_n, "Dataset rows")->capture_default_str();
  mu->add_option("--draws", mu_draws)->capture_default_str();
  mu->add_option("--q", mu_q, "Quantiles (Nt = 8)")->capture_default_str();
  mu->add_option("--hidden", mu_hidden)->capture_default_str();
  mu->add_option("--restarts", mu_restarts)->capture_default_str();
  mu->add_option("--seed", mu_seed)->capture_default_str();
  mu->add_option("--threads", mu_threads, "Worker cap, 0 = all cores");
  mu->add_option("--out-dir", mu_outdir, "Artifact directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (gen->parsed()) {
    smmi::GenOptions options;
    options.nt = g.nt;
    options.n_samples = g.n;
    options.n_noise_draws = g.draws;
    options.snr_lo_db = g.snr_lo;
    options.snr_hi_db = g.snr_hi;
    options.constellations = parse_constellations(g.constellations);
    options.split_fractions = g.split;
    options.seed = g.seed;
    options.threads = g.threads;
    options.resume = !g.no_resume;
    const auto ds = smmi::gen_dataset(options, gen_out);
    std::printf("gen-dataset: %zu rows (nt=%d, draws=%d, seed=%llu) -> %s\n",
                ds.rows.size(), options.nt, options.n_noise_draws,
                static_cast<unsigned long long>(options.seed), gen_out.c_str());
    return 0;
  }

  if (tr->parsed()) {
    const auto dataset = smmi::load_dataset(tr_dataset);
    smmi::TrainConfig cfg;
    if (!tr_config.empty()) {
      cfg = smmi::load_train_config(tr_config);
    } else {
      cfg.n_hidden = tr_hidden;
      cfg.restarts = tr_restarts;
      cfg.max_epochs = tr_epochs;
      cfg.patience = tr_patience;
      cfg.seed = tr_seed;
    }
    const auto option = smmi::parse_feature_option(tr_features);
    const auto result = smmi::train_on_dataset(dataset, option, cfg, tr_quantiles);
    smmi::save_model(result.params, tr_model);
    if (!tr_report.empty()) result.report.write_csv(tr_report);
    std::printf(
        "train: option %s, N=%d, %d restarts -> val MSE %.3e, test MSE %.3e (%.1f s) -> %s\n",
        tr_features.c_str(), cfg.n_hidden, cfg.restarts, result.report.best_val_mse,
        result.report.test_mse, result.report.wall_seconds, tr_model.c_str());
    return 0;
  }

  if (ev->parsed()) {
    const auto dataset = smmi::load_dataset(ev_dataset);
    smmi::Predictor predictor;
    if (ev_method == "nn") {
      if (ev_model.empty()) throw CLI::ValidationError("--model", "required for nn");
      predictor = smmi::nn_predictor(smmi::load_model(ev_model));
    } else if (ev_method == "jensen") {
      predictor = smmi::jensen_predictor(dataset.header.constellations);
    } else if (ev_method == "oracle") {
      predictor = smmi::oracle_predictor(dataset.header.constellations, ev_draws, ev_seed);
    } else {
      throw CLI::ValidationError("--method", "unknown method " + ev_method);
    }
    auto report = smmi::evaluate(predictor, dataset, smmi::parse_split(ev_split));
    if (ev_noise_floor)
      report.noise_floor_mse =
          smmi::estimate_label_noise_floor(dataset, smmi::parse_split(ev_split), 50, ev_seed);
    const std::string csv = report.to_csv();
    if (ev_out.empty())
      std::fputs(csv.c_str(), stdout);
    else
      write_text(ev_out, csv);
    std::printf("eval: %s on %s/%s -> global MSE %.3e over %zu rows\n", ev_method.c_str(),
                ev_dataset.c_str(), ev_split.c_str(), report.global_mse, report.n_rows);
    return 0;
  }

  if (pr->parsed()) {
    const auto model = smmi::load_model(pr_model);
    Eigen::MatrixXcd h;
    if (!pr_h.empty())
      h = parse_h(pr_h, model.meta.nt);
    else if (!pr_hfile.empty())
      h = read_h_file(pr_hfile, model.meta.nt);
    else
      throw CLI::ValidationError("--h", "provide --h or --h-file");
    const double gamma = smmi::db_to_linear(pr_gamma_db);
    const auto option = smmi::parse_feature_option(model.meta.feature_option);
    const auto fn = smmi::feature_fn(option, model.meta.quantiles > 0 ? model.meta.quantiles : 5);
    const auto prediction = smmi::predict(model, fn(gamma, h));
    for (std::size_t k = 0; k < model.meta.constellations.size(); ++k)
      std::printf("%s: %.6f bpcu\n", smmi::to_string(model.meta.constellations[k]).c_str(),
                  prediction.y_clamped(static_cast<Eigen::Index>(k)));
    return 0;
  }

  if (er->parsed()) {
    std::vector<double> grid;
    for (double s = er_lo; s <= er_hi + 1e-9; s += er_step) grid.push_back(s);
    smmi::NetworkParams model;
    const bool have_model = !er_model.empty();
    if (have_model) model = smmi::load_model(er_model);
    const auto points =
        smmi::ergodic_curve(grid, er_channels, er_draws,
                            parse_constellations(er_constellations),
                            have_model ? &model : nullptr, er_seed, er_threads);
    write_text(er_out, smmi::ergodic_to_csv(points));
    std::printf("ergodic: %zu records -> %s\n", points.size(), er_out.c_str());
    return 0;
  }

  if (an->parsed()) {
    std::vector<double> thetas, phis;
    for (int i = 0; i < an_theta_steps; ++i)
      thetas.push_back(std::numbers::pi / 2.0 * i / (an_theta_steps - 1));
    for (int i = 1; i <= an_phi_steps; ++i)
      phis.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * i / an_phi_steps);
    const auto cells =
        smmi::angle_sweep(an_gamma, thetas, phis, smmi::make_constellation(an_constellation),
                          an_draws, an_seed, an_threads);
    write_text(an_out, smmi::angle_sweep_to_csv(cells));
    std::printf("angle-sweep: %zu cells -> %s\n", cells.size(), an_out.c_str());
    return 0;
  }

  if (ab->parsed()) {
    const auto dataset = smmi::load_dataset(ab_dataset);
    std::vector<smmi::FeatureOption> options;
    std::stringstream ss(ab_options);
    std::string item;
    while (std::getline(ss, item, ',')) options.push_back(smmi::parse_feature_option(item));
    const auto table = smmi::feature_ablation(dataset, options, ab_hidden, ab_restarts, ab_seed);
    std::ostringstream csv;
    csv << "option,n_hidden,test_mse,val_mse\n";
    for (const auto& cell : table)
      csv << cell.option << ',' << cell.n_hidden << ',' << cell.test_mse << ','
          << cell.val_mse << '\n';
    if (ab_out.empty())
      std::fputs(csv.str().c_str(), stdout);
    else
      write_text(ab_out, csv.str());
    std::printf("ablation: %zu cells\n", table.size());
    return 0;
  }

  if (be->parsed()) {
    const auto option = smmi::parse_feature_option(be_features);
    const auto costs = smmi::complexity_report(
        {smmi::ConstellationKind::QPSK, smmi::ConstellationKind::PSK8,
         smmi::ConstellationKind::QAM16},
        option, be_hidden, be_evals, be_seed);
    std::ostringstream csv;
    csv << "method,real_products,exp_class,log2_class,other_nonlinear,wall_seconds,n_evals\n";
    for (const auto& c : costs)
      csv << c.method << ',' << c.static_counts.real_products << ','
          << c.static_counts.exp_class << ',' << c.static_counts.log2_class << ','
          << c.static_counts.other_nonlinear << ',' << c.wall_seconds << ',' << c.n_evals
          << '\n';
    if (be_out.empty())
      std::fputs(csv.str().c_str(), stdout);
    else
      write_text(be_out, csv.str());
    double nn_t = costs[0].wall_seconds, jensen_t = costs[1].wall_seconds;
    std::printf("bench: %d evals, jensen/nn wall ratio %.1f\n", be_evals,
                jensen_t / nn_t);
    return 0;
  }

  if (mu->parsed()) {
    std::filesystem::create_directories(mu_outdir);
    smmi::GenOptions gen_options;
    gen_options.nt = mu_nt;
    gen_options.n_samples = mu_n;
    gen_options.n_noise_draws = mu_draws;
    gen_options.constellations = parse_constellations("qpsk,8psk,16qam");
    gen_options.seed = mu_seed;
    gen_options.threads = mu_threads;
    smmi::TrainConfig cfg;
    cfg.n_hidden = mu_hidden;
    cfg.restarts = mu_restarts;
    cfg.seed = smmi::derive_seed(mu_seed, 77);
    const std::string ds_path = mu_outdir + "/multi" + std::to_string(mu_nt) + ".csv";
    const auto result =
        smmi::multi_antenna_experiment(mu_nt, mu_q, gen_options, cfg, ds_path);
    smmi::save_model(result.training.params,
                     mu_outdir + "/multi" + std::to_string(mu_nt) + "_model.json");
    write_text(mu_outdir + "/multi" + std::to_string(mu_nt) + "_eval.csv",
               result.eval.to_csv());
    std::printf("multi: nt=%d F=%d -> test MSE %.3e (3sigma %s%.3f)\n", mu_nt,
                result.feature_length, result.eval.global_mse, "qpsk ",
                result.eval.per_constellation[0].three_sigma);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    return 2;  // CLI11_PARSE already printed the message
  } catch (const smmi::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const smmi::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
