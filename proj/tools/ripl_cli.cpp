// Command-line front end: deterministic experiment runs driven by JSON
// configs, with all outputs written atomically and stamped with the config
// hash and seeds so reruns are byte-identical.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ripl/counterexamples.hpp"
#include "ripl/rng.hpp"
#include "ripl/io.hpp"
#include "ripl/oracle.hpp"
#include "ripl/solver.hpp"

namespace fs = std::filesystem;
using ripl::json;

namespace {

constexpr const char* kVersion = "ripl 0.1.0";

struct CliContext {
  fs::path out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::string config_text;  // raw bytes for the provenance hash
};

[[noreturn]] void config_error(const std::string& msg) {
  throw ripl::Error(ripl::ErrorCode::ConfigError, msg);
}

json load_config(const fs::path& path, CliContext& ctx) {
  std::ifstream in(path);
  if (!in.good()) config_error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ctx.config_text = ss.str();
  json cfg;
  try {
    cfg = json::parse(ctx.config_text);
  } catch (const std::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) config_error("config root must be an object");
  if (cfg.value("version", 0) != 1) config_error("config must declare \"version\": 1");
  return cfg;
}

json provenance(const CliContext& ctx, std::uint64_t seed) {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  return json{{"config_hash", ripl::fnv1a_hex(ctx.config_text)},
              {"seed", seed},
              {"version", kVersion},
              {"threads", threads}};
}

void write_json(const fs::path& path, const json& j) {
  ripl::atomic_write(path, j.dump(2) + "\n");
}

ripl::SparsityPattern parse_pattern(const json& j) {
  if (!j.is_object() || !j.contains("s") || !j.contains("M"))
    config_error("pattern needs \"s\" and \"M\" arrays");
  return ripl::make_pattern(j["s"].get<std::vector<int>>(), j["M"].get<std::vector<int>>());
}

ripl::WaveletSpec parse_wavelet(const json& j) {
  ripl::WaveletSpec spec;
  const std::string family = j.value("family", "haar");
  if (family == "haar") {
    spec.family = ripl::WaveletFamily::Haar;
    spec.vanishing_moments = 1;
  } else if (family == "daubechies") {
    spec.family = ripl::WaveletFamily::Daubechies;
    spec.vanishing_moments = j.value("vanishing_moments", 2);
  } else {
    config_error("unknown wavelet family '" + family + "'");
  }
  spec.levels = j.value("levels", 1);
  return spec;
}

ripl::SamplingScheme parse_scheme(const json& j) {
  if (j.contains("indices")) {
    return ripl::SamplingScheme::from_indices(j["indices"].get<std::vector<int>>());
  }
  if (!j.contains("bands") || !j.contains("m")) config_error("scheme needs bands+m or indices");
  std::vector<ripl::Band> bands;
  for (const auto& b : j["bands"]) {
    if (!b.is_array() || b.size() != 2) config_error("each band is a [lo, hi] pair");
    bands.push_back(ripl::Band{b[0].get<int>(), b[1].get<int>()});
  }
  return ripl::multilevel_scheme(bands, j["m"].get<std::vector<int>>(),
                                 j.value("seed", std::uint64_t{0}));
}

ripl::CounterexampleInstance build_counterexample(const std::string& name, int a, int C,
                                                  double rho, double tau) {
  if (name == "covering-eta") return ripl::covering_counterexamples().first;
  if (name == "covering-boundary") return ripl::covering_counterexamples().second;
  if (name == "eta-dependence") return ripl::construct_eta_dependence(a, C);
  if (name == "l-dependence") return ripl::construct_l_dependence(a, C);
  if (name == "l2-sharp" || name == "l2-sharp-eta")
    return ripl::construct_l2_sharpness(a, C, rho, ripl::SharpnessVariant::Eta, tau);
  if (name == "l2-sharp-levels")
    return ripl::construct_l2_sharpness(a, C, rho, ripl::SharpnessVariant::Levels, tau);
  config_error("unknown counterexample '" + name + "'");
}

ripl::SensingOperator parse_operator(const json& j);

ripl::SensingOperator parse_operator_inner(const json& j) {
  if (!j.is_object() || !j.contains("kind")) config_error("operator spec needs \"kind\"");
  const std::string kind = j["kind"];
  if (kind == "identity") return ripl::identity_operator(j.at("n").get<int>());
  if (kind == "dft") {
    const std::string order = j.value("order", "natural");
    return ripl::dft(j.at("n").get<int>(), order == "centered" ? ripl::FreqOrder::Centered
                                                               : ripl::FreqOrder::Natural);
  }
  if (kind == "wht") {
    const std::string order = j.value("order", "paley");
    ripl::HadamardOrder ho = ripl::HadamardOrder::Paley;
    if (order == "natural") ho = ripl::HadamardOrder::Natural;
    else if (order == "sequency") ho = ripl::HadamardOrder::Sequency;
    else if (order != "paley") config_error("unknown wht order '" + order + "'");
    return ripl::wht(j.at("n").get<int>(), ho);
  }
  if (kind == "dwt") return ripl::dwt(parse_wavelet(j), j.at("n").get<int>());
  if (kind == "idwt") return ripl::idwt(parse_wavelet(j), j.at("n").get<int>());
  if (kind == "matrix-csv") return ripl::dense_operator(ripl::read_complex_csv(j.at("path").get<std::string>()));
  if (kind == "matrix-binary")
    return ripl::dense_operator(ripl::read_complex_binary(j.at("path").get<std::string>()));
  if (kind == "tensor2d") return ripl::tensor2d(parse_operator(j.at("base")));
  if (kind == "subsample")
    return ripl::subsample(parse_operator(j.at("base")), parse_scheme(j.at("scheme")));
  if (kind == "chain") {
    const auto& ops = j.at("ops");
    if (!ops.is_array() || ops.empty()) config_error("chain needs a non-empty ops array");
    std::optional<ripl::SensingOperator> acc;
    for (const auto& spec : ops) {
      auto op = parse_operator(spec);
      acc = acc ? ripl::compose(*acc, op) : op;
    }
    return *acc;
  }
  if (kind == "counterexample") {
    const auto inst = build_counterexample(j.at("name").get<std::string>(), j.value("a", 1),
                                           j.value("C", 4), j.value("rho", 0.5),
                                           j.value("tau", 0.0));
    return ripl::dense_operator(inst.U.cast<std::complex<double>>(), inst.name);
  }
  config_error("unknown operator kind '" + kind + "'");
}

ripl::SensingOperator parse_operator(const json& j) { return parse_operator_inner(j); }

ripl::cvec parse_signal(const json& j, int expect_n) {
  if (!j.is_object() || !j.contains("kind")) config_error("signal spec needs \"kind\"");
  const std::string kind = j["kind"];
  ripl::cvec x;
  if (kind == "values") {
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j["im"].get<std::vector<double>>();
    if (im.size() != re.size()) config_error("re and im lengths differ");
    x.resize(static_cast<int>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) x[static_cast<int>(i)] = {re[i], im[i]};
  } else if (kind == "csv") {
    const ripl::cmat M = ripl::read_complex_csv(j.at("path").get<std::string>());
    x = ripl::cvec(Eigen::Map<const ripl::cvec>(M.data(), M.size()));
  } else if (kind == "binary") {
    const ripl::cmat M = ripl::read_complex_binary(j.at("path").get<std::string>());
    x = ripl::cvec(Eigen::Map<const ripl::cvec>(M.data(), M.size()));
  } else if (kind == "pgm") {
    const auto img = ripl::read_pgm(j.at("path").get<std::string>());
    x = img.pixels.cast<std::complex<double>>();
  } else if (kind == "sparse-random") {
    const auto pattern = parse_pattern(j.at("pattern"));
    const auto budgets = j.value("per_level", pattern.budgets());
    ripl::Rng rng(j.value("seed", std::uint64_t{1}));
    x = ripl::cvec::Zero(pattern.dimension());
    for (int lvl = 1; lvl <= pattern.levels(); ++lvl) {
      const int k = budgets[lvl - 1];
      const auto idx =
          rng.sample_without_replacement(pattern.level_begin(lvl) - 1, pattern.level_width(lvl), k);
      for (int j0 : idx) {
        const double phase = rng.next_double() * 2.0 * M_PI;
        x[j0] = std::complex<double>(std::cos(phase), std::sin(phase));
      }
    }
  } else {
    config_error("unknown signal kind '" + kind + "'");
  }
  if (expect_n > 0 && x.size() != expect_n)
    config_error("signal length " + std::to_string(x.size()) + " does not match operator input " +
                 std::to_string(expect_n));
  return x;
}

ripl::SolveOptions parse_solver(const json& cfg) {
  ripl::SolveOptions opts;
  if (!cfg.contains("solver")) return opts;
  const auto& j = cfg["solver"];
  opts.max_iters = j.value("max_iters", opts.max_iters);
  opts.tol_primal = j.value("tol_primal", opts.tol_primal);
  opts.tol_dual = j.value("tol_dual", opts.tol_dual);
  opts.tol_feas = j.value("tol_feas", opts.tol_feas);
  opts.step_scale = j.value("step_scale", opts.step_scale);
  return opts;
}

// ---- subcommands ----------------------------------------------------------

int cmd_pattern(const json& cfg, const CliContext& ctx) {
  const auto p = parse_pattern(cfg);
  const auto eta = ripl::ratio_constant(p);
  json out{{"pattern", ripl::to_json(p)},
           {"eta", ripl::to_json(eta)},
           {"num_elements", ripl::num_elements(p)},
           {"levels", p.levels()}};
  if (cfg.contains("n")) out["covers"] = ripl::covers(p, cfg["n"].get<int>());
  if (eta.finite()) out["recovery_threshold"] = ripl::recovery_threshold(p);
  out["provenance"] = provenance(ctx, 0);
  write_json(ctx.out_dir / "pattern.json", out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_certify(const json& cfg, const CliContext& ctx) {
  const std::string task = cfg.value("task", "ripl-exact");
  const std::uint64_t seed = ctx.seed_override.value_or(cfg.value("seed", std::uint64_t{0}));
  json out{{"task", task}};
  int exit_code = 0;

  if (task == "nsp-falsify") {
    const auto op = parse_operator(cfg.at("operator"));
    const auto p = parse_pattern(cfg.at("pattern"));
    const auto rep =
        ripl::nsp_falsify(op, p, cfg.at("rho").get<double>(), cfg.at("tau").get<double>(),
                          cfg.value("trials", 10000), seed);
    out["report"] = ripl::to_json(rep);
    exit_code = rep.satisfied ? 0 : 1;
  } else {
    const auto op = parse_operator(cfg.at("operator"));
    const ripl::cmat A = ripl::materialize(op, cfg.value("materialize_cap", ripl::kDefaultMaterializeCap));
    if (task == "ripl-exact") {
      const auto p = parse_pattern(cfg.at("pattern"));
      out["report"] = ripl::to_json(
          ripl::ripl_exact(A, p, cfg.value("cap", ripl::kDefaultEnumerationCap)));
    } else if (task == "rip-exact") {
      out["report"] = ripl::to_json(ripl::rip_exact(
          A, cfg.at("s").get<int>(), cfg.value("cap", ripl::kDefaultEnumerationCap)));
    } else if (task == "ripl-lower-bound") {
      const auto p = parse_pattern(cfg.at("pattern"));
      out["report"] = ripl::to_json(ripl::ripl_lower_bound(A, p, cfg.value("budget", 64), seed));
    } else if (task == "recovery-condition") {
      const auto p = parse_pattern(cfg.at("pattern"));
      const auto check = ripl::check_recovery_condition(A, p);
      out["satisfied"] = check.satisfied;
      out["certified"] = check.certified;
      out["threshold"] = check.threshold;
      out["reason"] = check.reason;
      out["report"] = ripl::to_json(check.report);
      exit_code = check.satisfied ? 0 : 1;
    } else if (task == "kernel-recovery") {
      const auto p = parse_pattern(cfg.at("pattern"));
      const auto rep = ripl::kernel_exact_recovery_check(A, p, cfg.value("trials", 2000), seed);
      out["report"] = ripl::to_json(rep);
      exit_code = rep.satisfied ? 0 : 1;
    } else {
      config_error("unknown certify task '" + task + "'");
    }
  }

  out["provenance"] = provenance(ctx, seed);
  write_json(ctx.out_dir / "certificate.json", out);

  // one-line human summary
  std::ostringstream line;
  line << task << ": ";
  if (out.contains("report")) {
    const auto& r = out["report"];
    line << r["kind"].get<std::string>() << " value=" << r["value"].get<double>()
         << " method=" << r["method"].get<std::string>()
         << (r["satisfied"].get<bool>() ? "" : " [FAILED]");
  }
  ripl::atomic_write(ctx.out_dir / "certificate.txt", line.str() + "\n");
  std::cout << line.str() << "\n";
  return exit_code;
}

int cmd_recover(const json& cfg, const CliContext& ctx) {
  const auto op = parse_operator(cfg.at("operator"));
  const auto opts = parse_solver(cfg);
  const double eps = cfg.value("eps", 0.0);
  const std::uint64_t seed = ctx.seed_override.value_or(cfg.value("seed", std::uint64_t{0}));

  ripl::cvec y;
  std::optional<ripl::cvec> truth;
  if (cfg.contains("signal")) {
    truth = parse_signal(cfg["signal"], op.n_in());
    y = op.forward(*truth);
  } else if (cfg.contains("y")) {
    y = parse_signal(cfg["y"], op.n_out());
  } else {
    config_error("recover needs \"signal\" (ground truth) or \"y\" (measurements)");
  }

  ripl::SolveResult res;
  if (cfg.contains("weights")) {
    ripl::rvec w(op.n_in());
    if (cfg["weights"].contains("values")) {
      const auto vals = cfg["weights"]["values"].get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != op.n_in()) config_error("weights length mismatch");
      for (int i = 0; i < w.size(); ++i) w[i] = vals[i];
    } else if (cfg["weights"].value("rule", "") == "pow2") {
      const auto p = parse_pattern(cfg.at("pattern"));
      w = ripl::Weights::per_level_pow2(p).values();
    } else {
      config_error("weights need \"values\" or rule \"pow2\"");
    }
    res = ripl::solve_weighted_l1(op, y, ripl::Weights(w), eps, opts);
  } else {
    res = ripl::solve_bpdn(op, y, eps, opts);
  }

  ripl::cmat xmat(res.x.size(), 1);
  xmat.col(0) = res.x;
  ripl::write_complex_csv(ctx.out_dir / "xhat.csv", xmat);

  json out{{"objective", res.objective},
           {"iterations", res.iterations},
           {"converged", res.converged},
           {"feasibility_residual", res.feasibility_residual}};
  if (truth) {
    out["rel_err_l2"] = (res.x - *truth).norm() / std::max(1e-300, truth->norm());
    out["rel_err_l1"] =
        (res.x - *truth).cwiseAbs().sum() / std::max(1e-300, truth->cwiseAbs().sum());
  }
  out["provenance"] = provenance(ctx, seed);
  write_json(ctx.out_dir / "recover.json", out);
  std::cout << out.dump(2) << "\n";
  return res.converged ? 0 : 1;
}

int cmd_skeps(const json& cfg, const CliContext& ctx) {
  const auto spec = parse_wavelet(cfg.at("wavelet"));
  ripl::cvec signal = parse_signal(cfg.at("signal"), 0);
  const int n = static_cast<int>(signal.size());
  const auto w = ripl::wavelet_forward(signal, spec);
  const auto M = ripl::wavelet_boundaries(n, spec.levels);
  std::vector<int> budgets(M.size() - 1);
  for (std::size_t i = 0; i + 1 < M.size(); ++i) budgets[i] = M[i + 1] - M[i];
  const ripl::SparsityPattern p(budgets, M);

  std::vector<double> epsilons = cfg.value("epsilons", std::vector<double>{});
  if (epsilons.empty())
    for (int i = 50; i <= 100; ++i) epsilons.push_back(i / 100.0);

  std::string csv = "eps,s";
  for (int lvl = 1; lvl <= p.levels(); ++lvl) csv += ",s_" + std::to_string(lvl);
  csv += "\n";
  for (double eps : epsilons) {
    const auto counts = ripl::sk_epsilon(w, p, eps);
    int total = 0;
    for (int c : counts) total += c;
    std::ostringstream line;
    line.precision(17);
    line << eps << "," << total;
    for (int c : counts) line << "," << c;
    csv += line.str() + "\n";
  }
  ripl::atomic_write(ctx.out_dir / "skeps.csv", csv);

  json out{{"levels", p.levels()},
           {"boundaries", M},
           {"rows", epsilons.size()},
           {"provenance", provenance(ctx, 0)}};
  write_json(ctx.out_dir / "skeps.json", out);
  std::cout << "wrote " << (ctx.out_dir / "skeps.csv").string() << "\n";
  return 0;
}

int cmd_fliptest(const json& cfg, const CliContext& ctx) {
  const auto op = parse_operator(cfg.at("operator"));
  const auto opts = parse_solver(cfg);
  const double eps = cfg.value("eps", 0.0);
  const std::uint64_t seed = ctx.seed_override.value_or(cfg.value("seed", std::uint64_t{0}));
  const std::string mode = cfg.value("mode", "single");

  std::string csv = "perm_index,seed,err_orig_l2,err_flip_l2,err_orig_l1,err_flip_l1,iterations\n";
  auto append_row = [&csv](const ripl::FlipReport& r) {
    std::ostringstream line;
    line.precision(17);
    line << r.permutation_index << "," << r.permutation_seed << "," << r.err_original_l2 << ","
         << r.err_flipped_l2 << "," << r.err_original_l1 << "," << r.err_flipped_l1 << ","
         << r.iterations_original + r.iterations_flipped;
    csv += line.str() + "\n";
  };

  json out;
  int exit_code = 0;
  if (mode == "generalized") {
    const auto p = parse_pattern(cfg.at("pattern"));
    const auto x = parse_signal(cfg.at("signal"), op.n_in());
    ripl::Weights w = ripl::Weights::per_level_pow2(p);
    if (cfg.contains("weights") && cfg["weights"].contains("values")) {
      ripl::rvec wv(op.n_in());
      const auto vals = cfg["weights"]["values"].get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != op.n_in()) config_error("weights length mismatch");
      for (int i = 0; i < wv.size(); ++i) wv[i] = vals[i];
      w = ripl::Weights(wv);
    }
    ripl::GeneralizedFlipConfig gcfg;
    gcfg.thresholds = cfg.value("thresholds", std::vector<double>{});
    gcfg.recovered_tol = cfg.value("recovered_tol", 1e-4);
    if (cfg.contains("mover")) {
      gcfg.mover.level = cfg["mover"].value("level", 0);
      gcfg.mover.count = cfg["mover"].value("count", 0);
    }
    const auto rep = ripl::generalized_flip_test(op, x, w, p, gcfg, opts, eps);
    append_row(rep.flip);
    out["report"] = ripl::to_json(rep.flip);
    out["threshold_used"] = rep.threshold_used;
    out["weighted_budget"] = rep.weighted_budget;
    out["mover_level"] = rep.mover_level;
    out["mover_count"] = rep.mover_count;
  } else if (mode == "sweep") {
    const auto p = parse_pattern(cfg.at("pattern"));
    const auto x = parse_signal(cfg.at("signal"), op.n_in());
    const auto sweep =
        ripl::permutation_sweep(op, x, p, cfg.value("count", 100), seed, opts, eps);
    for (const auto& r : sweep.reports) append_row(r);
    std::ostringstream summary;
    summary.precision(17);
    summary << "summary,,," << sweep.summary.max_err << ",min=" << sweep.summary.min_err
            << ",mean=" << sweep.summary.mean_err << ",stddev=" << sweep.summary.stddev_err;
    csv += summary.str() + "\n";
    out["summary"] = ripl::to_json(sweep.summary);
  } else if (mode == "single") {
    const auto x = parse_signal(cfg.at("signal"), op.n_in());
    ripl::Permutation perm = ripl::Permutation::identity(op.n_in());
    const std::string kind = cfg.value("permutation", json::object()).value("kind", "global-reverse");
    if (kind == "global-reverse") {
      perm = ripl::Permutation::global_reverse(op.n_in());
    } else if (kind == "level-reverse") {
      perm = ripl::Permutation::level_reverse(parse_pattern(cfg.at("pattern")));
    } else if (kind == "level-random") {
      perm = ripl::Permutation::level_random(parse_pattern(cfg.at("pattern")),
                                             cfg["permutation"].value("seed", seed));
    } else if (kind != "identity") {
      config_error("unknown permutation kind '" + kind + "'");
    }
    const auto rep = run_flip_test(op, x, perm, opts, eps);
    append_row(rep);
    out["report"] = ripl::to_json(rep);
  } else {
    config_error("unknown fliptest mode '" + mode + "'");
  }

  out["provenance"] = provenance(ctx, seed);
  ripl::atomic_write(ctx.out_dir / "fliptest.csv", csv);
  write_json(ctx.out_dir / "fliptest.json", out);
  std::cout << "wrote " << (ctx.out_dir / "fliptest.csv").string() << "\n";
  return exit_code;
}

int cmd_counterexample(const std::string& name, int a, int C, double rho, double tau, int trials,
                       const CliContext& ctx) {
  const auto inst = build_counterexample(name, a, C, rho, tau);
  ripl::VerifyOptions vopts;
  if (trials > 0) {
    vopts.nsp_trials = trials;
    vopts.nsp_halved_rho_trials = std::min(trials, 1000);
  }
  const auto rep = ripl::verify(inst, vopts);

  json manifest = ripl::to_json(inst);
  manifest["verification"] = ripl::to_json(rep);
  manifest["provenance"] = provenance(ctx, vopts.seed);
  write_json(ctx.out_dir / (inst.name + ".json"), manifest);
  ripl::write_complex_binary(ctx.out_dir / (inst.name + ".mat"),
                             inst.U.cast<std::complex<double>>());

  for (const auto& c : rep.claims)
    std::cout << (c.pass ? "PASS " : "FAIL ") << inst.name << "/" << c.name
              << " measured=" << c.measured << " expected=" << c.expected << "\n";
  std::cout << (rep.all_pass ? "all claims pass" : "CLAIM FAILURES PRESENT") << "\n";
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsity-in-levels toolkit"};
  app.require_subcommand(1);

  CliContext ctx;
  std::string out_dir = ".";
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
  app.add_option("--seed", seed, "seed override")->each([&](const std::string&) { seed_set = true; });

  std::string config_path;
  auto add_config = [&config_path](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
  };

  auto* sc_pattern = app.add_subcommand("pattern", "inspect a sparsity pattern");
  add_config(sc_pattern);
  auto* sc_certify = app.add_subcommand("certify", "compute certificates");
  add_config(sc_certify);
  auto* sc_recover = app.add_subcommand("recover", "run one l1 recovery");
  add_config(sc_recover);
  auto* sc_skeps = app.add_subcommand("skeps", "per-level head-coefficient counts");
  add_config(sc_skeps);
  auto* sc_flip = app.add_subcommand("fliptest", "flip tests and permutation sweeps");
  add_config(sc_flip);

  auto* sc_ce = app.add_subcommand("counterexample", "construct and verify a named instance");
  std::string ce_name;
  int ce_a = 1, ce_C = 4, ce_trials = 0;
  double ce_rho = 0.5, ce_tau = 0.0;
  sc_ce->add_option("--name", ce_name, "instance name")->required();
  sc_ce->add_option("--a", ce_a, "budget multiplier");
  sc_ce->add_option("--C", ce_C, "size parameter");
  sc_ce->add_option("--rho", ce_rho, "nullspace constant");
  sc_ce->add_option("--tau", ce_tau, "nullspace constant (0 = sqrt 2)");
  sc_ce->add_option("--trials", ce_trials, "nsp falsification trials (0 = default)");

  CLI11_PARSE(app, argc, argv);

  ctx.out_dir = out_dir;
  if (seed_set) ctx.seed_override = seed;
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (sc_ce->parsed()) return cmd_counterexample(ce_name, ce_a, ce_C, ce_rho, ce_tau, ce_trials, ctx);
    const json cfg = load_config(config_path, ctx);
    if (sc_pattern->parsed()) return cmd_pattern(cfg, ctx);
    if (sc_certify->parsed()) return cmd_certify(cfg, ctx);
    if (sc_recover->parsed()) return cmd_recover(cfg, ctx);
    if (sc_skeps->parsed()) return cmd_skeps(cfg, ctx);
    if (sc_flip->parsed()) return cmd_fliptest(cfg, ctx);
  } catch (const ripl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ripl::ErrorCode::ConfigError ? 2 : 1;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
