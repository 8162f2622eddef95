#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "heatsrc/config.hpp"
#include "heatsrc/csv.hpp"
#include "heatsrc/cutoff.hpp"
#include "heatsrc/error.hpp"
#include "heatsrc/experiments.hpp"
#include "heatsrc/iterative.hpp"
#include "heatsrc/noise.hpp"

namespace fs = std::filesystem;
using namespace heatsrc;

namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every key a flag or a config line can set. Unset means "use the default".
struct Settings {
  std::optional<double> k, T, noiselv, p, sigma, M, tau, t;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> theta, N, grid_x_cells, grid_t_cells, seeds, threads, n_max;
  std::optional<std::string> rule, example, out_dir, space, in, out;
};

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  T v{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw UsageError("config: bad value '" + text + "' for key '" + key + "'");
  return v;
}

void apply(Settings& s, const std::string& key, const std::string& value) {
  auto num = [&](auto& slot) { slot = parse_value<typename std::decay_t<decltype(slot)>::value_type>(key, value); };
  if (key == "k") num(s.k);
  else if (key == "T") num(s.T);
  else if (key == "noiselv") num(s.noiselv);
  else if (key == "p") num(s.p);
  else if (key == "sigma") num(s.sigma);
  else if (key == "M") num(s.M);
  else if (key == "tau") num(s.tau);
  else if (key == "t") num(s.t);
  else if (key == "seed") num(s.seed);
  else if (key == "theta") num(s.theta);
  else if (key == "N") num(s.N);
  else if (key == "grid_x_cells") num(s.grid_x_cells);
  else if (key == "grid_t_cells") num(s.grid_t_cells);
  else if (key == "seeds") num(s.seeds);
  else if (key == "threads") num(s.threads);
  else if (key == "n_max") num(s.n_max);
  else if (key == "rule") s.rule = value;
  else if (key == "example") s.example = value;
  else if (key == "out_dir") s.out_dir = value;
  else if (key == "space") s.space = value;
  else if (key == "in") s.in = value;
  else if (key == "out") s.out = value;
  else throw UsageError("config: unknown key '" + key + "'");
}

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--example", s.example, "ex1, ex2 or ex3");
  cmd->add_option("--k", s.k, "diffusivity");
  cmd->add_option("--T", s.T, "final time");
  cmd->add_option("--grid-x-cells", s.grid_x_cells, "cells of the measurement grid on [0, 1]");
  cmd->add_option("--grid-t-cells", s.grid_t_cells, "cells of the time grid on [0, T]");
  cmd->add_option("--out-dir", s.out_dir, "directory for CSV output");
}

void add_noise(CLI::App* cmd, Settings& s) {
  cmd->add_option("--noiselv", s.noiselv, "relative noise level in [0, 1]");
  cmd->add_option("--seed", s.seed, "PRNG seed");
}

void add_rule(CLI::App* cmd, Settings& s) {
  cmd->add_option("--theta", s.theta, "cut-off mode (default from M, delta, p, sigma)");
  cmd->add_option("--M", s.M, "source bound");
  cmd->add_option("--p", s.p, "smoothness index");
  cmd->add_option("--sigma", s.sigma, "rate exponent");
}

Example load_example(const Settings& s) {
  ExampleOptions opts;
  opts.k = s.k.value_or(1.0);
  opts.T = s.T.value_or(1.0);
  return builtin_example(parse_example(s.example.value_or("ex1")), opts);
}

fs::path out_dir(const Settings& s) {
  fs::path dir = s.out_dir.value_or(".");
  fs::create_directories(dir);
  return dir;
}

constexpr double kDefaultM = 1.870888;

std::size_t choose_theta(const Settings& s, double delta, double k, double T) {
  if (s.theta) return *s.theta;
  return theta_of(s.M.value_or(kDefaultM), delta, k, T, s.p.value_or(1.0 / 3.0),
                  s.sigma.value_or(0.2));
}

int cmd_forward(const Settings& s) {
  const Example ex = load_example(s);
  const Grid1D xg = Grid1D::unit(s.grid_x_cells.value_or(50));
  std::vector<double> ts;
  if (s.t) ts = {*s.t};
  else ts = Grid1D(0.0, ex.spec.T, s.grid_t_cells.value_or(20)).nodes();
  const fs::path path = out_dir(s) / "u.csv";
  csv::Writer w(path, {"x", "t", "u"});
  for (double t : ts) {
    const CosineSpectrum spec = ex.u_spectrum(t);
    const GridFunction u = synthesize(spec, xg);
    for (std::size_t i = 0; i < u.size(); ++i)
      w.row({csv::num(xg.node(i)), csv::num(t), csv::num(u[i])});
    std::printf("t=%.17g mean=%.17g\n", t, spec[0]);
  }
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_invert_cutoff(const Settings& s) {
  const CutoffExperiment exp(load_example(s), s.grid_x_cells.value_or(50),
                             s.grid_t_cells.value_or(20));
  const double lv = s.noiselv.value_or(0.01);
  const std::uint64_t seed = s.seed.value_or(1);
  std::size_t theta = 0;
  if (s.theta) theta = *s.theta;
  else {
    const double delta = perturb(exp.exact_final_data(), NoiseSpec{lv, seed}).delta;
    theta = choose_theta(s, delta, exp.example().spec.k, exp.example().spec.T);
  }
  const CutoffRun run = exp.run(lv, seed, theta);
  const fs::path dir = out_dir(s);
  write_profile_csv(dir / "profile_f.csv", exp.exact_f(), run.result.f_delta);
  std::vector<GridFunction> u_true;
  for (std::size_t j = 0; j < exp.t_nodes().size(); ++j) u_true.push_back(exp.exact_u(j));
  write_field_csv(dir / "field_u.csv", exp.t_nodes(), u_true, run.u_recon);
  std::printf("delta=%.6g theta=%zu err_f=%.6g err_u_max=%.6g\n", run.report.delta, theta,
              run.report.err_f, run.report.err_u_max);
  return 0;
}

StoppingRule make_rule(const Settings& s) {
  StoppingRule rule;
  const std::string kind = s.rule.value_or("a_priori");
  if (kind == "a_priori" || kind == "a-priori") rule.kind = StopKind::a_priori;
  else if (kind == "discrepancy") rule.kind = StopKind::discrepancy;
  else throw UsageError("rule must be a_priori or discrepancy");
  rule.N = static_cast<int>(s.N.value_or(2));
  rule.M = s.M.value_or(kDefaultM);
  rule.p = s.p.value_or(1.0 / 3.0);
  rule.sigma = s.sigma.value_or(0.2);
  rule.tau = s.tau;
  if (s.n_max) rule.n_max = *s.n_max;
  return rule;
}

int cmd_invert_iter(const Settings& s) {
  const StoppingRule rule = make_rule(s);
  const double lv = s.noiselv.value_or(0.01);
  const std::uint64_t seed = s.seed.value_or(1);
  const fs::path dir = out_dir(s);
  const std::string space = s.space.value_or("mode");

  if (space == "line") {
    const LineExample ex = line_example({20.0, 1024}, s.k.value_or(1.0), s.T.value_or(1.0));
    const auto noisy = perturb(ex.muT_hat, NoiseSpec{lv, seed});
    const double theta1 = s.theta ? static_cast<double>(*s.theta)
                                  : theta1_of(rule.M, noisy.delta, ex.k, ex.T, rule.p, rule.sigma);
    const auto res = run_line(noisy.data, ex.mu0_hat, ex.h, ex.k, ex.T, rule, theta1, noisy.delta);
    write_residuals_csv(dir / "residuals.csv", res.trace, res.threshold);
    csv::Writer w(dir / "profile_fhat.csv", {"xi", "f_true", "f_recon"});
    for (std::size_t j = 0; j < ex.f_hat.size(); ++j)
      w.row({csv::num(ex.f_hat.grid().xi(j)), csv::num(ex.f_hat[j].real()),
             csv::num(res.f_hat[j].real())});
    std::printf("delta=%.6g theta1=%.6g n_stop=%zu threshold=%.6g err_fhat=%.6g\n", noisy.delta,
                theta1, res.n_stop, res.threshold, freq_l2_distance(res.f_hat, ex.f_hat));
    return 0;
  }
  if (space != "mode") throw UsageError("space must be mode or line");

  const Example ex = load_example(s);
  const Grid1D xg = Grid1D::unit(s.grid_x_cells.value_or(50));
  const auto noisy = perturb(ex.final_data(xg), NoiseSpec{lv, seed});
  const std::size_t theta = choose_theta(s, noisy.delta, ex.spec.k, ex.spec.T);
  const auto res = run_modes(noisy.data, ex.spec, rule, theta, noisy.delta);
  write_residuals_csv(dir / "residuals.csv", res.trace, res.threshold);
  const GridFunction f_true = ex.f_on(xg);
  const GridFunction f_recon = synthesize(res.f_hat, xg);
  write_profile_csv(dir / "profile_f.csv", f_true, f_recon);
  std::printf("delta=%.6g theta=%zu n_stop=%zu threshold=%.6g err_f=%.6g\n", noisy.delta, theta,
              res.n_stop, res.threshold, l2_norm(f_recon - f_true));
  return 0;
}

int cmd_noise(const Settings& s) {
  if (!s.in || !s.out) throw UsageError("noise: --in and --out are required");
  const csv::Table table = csv::read(*s.in);
  if (table.header.size() != 2) throw UsageError("noise: expected two columns (x, value)");
  if (table.rows.size() < 3) throw UsageError("noise: need at least three rows");
  const double lo = table.rows.front()[0];
  const double hi = table.rows.back()[0];
  const Grid1D g(lo, hi, table.rows.size() - 1);
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (std::abs(table.rows[i][0] - g.node(i)) > 1e-9 * (hi - lo))
      throw UsageError("noise: x column must be a uniform grid");
  std::vector<double> v;
  for (const auto& r : table.rows) v.push_back(r[1]);
  const auto noisy = perturb(GridFunction(g, std::move(v)),
                             NoiseSpec{s.noiselv.value_or(0.01), s.seed.value_or(1)});
  csv::Writer w(*s.out, table.header);
  for (std::size_t i = 0; i < noisy.data.size(); ++i)
    w.row({csv::num(g.node(i)), csv::num(noisy.data[i])});
  std::printf("delta=%.17g\n", noisy.delta);
  return 0;
}

int cmd_table1(const Settings& s) {
  Table1Config cfg;
  cfg.example = parse_example(s.example.value_or("ex1"));
  if (s.seeds) cfg.seeds = *s.seeds;
  if (s.seed) cfg.first_seed = *s.seed;
  if (s.grid_x_cells) cfg.grid_x_cells = *s.grid_x_cells;
  if (s.grid_t_cells) cfg.grid_t_cells = *s.grid_t_cells;
  if (s.p) cfg.p = *s.p;
  if (s.sigma) cfg.sigma = *s.sigma;
  if (s.M) cfg.M = *s.M;
  if (s.threads) cfg.threads = static_cast<unsigned>(*s.threads);
  if (s.noiselv) {
    std::vector<std::size_t> thetas = *s.noiselv <= 0.01 ? std::vector<std::size_t>{12, 24, 36}
                                                         : std::vector<std::size_t>{6, 12, 18};
    if (s.theta) thetas = {*s.theta};
    cfg.rows = {{*s.noiselv, thetas}};
  } else if (s.theta) {
    for (auto& row : cfg.rows) row.thetas = {*s.theta};
  }
  const fs::path dir = out_dir(s);
  const auto reports = run_table1(cfg, dir);
  write_table1_csv(dir / "table1.csv", reports);
  const auto stats = summarize(reports);
  write_summary_csv(dir / "table1_summary.csv", stats);
  const Example ex = builtin_example(cfg.example);
  write_meta_csv(dir / "table1_meta.csv", ex, cfg);
  write_err_u_curves(dir / "table1_err_u.csv", reports,
                     Grid1D(0.0, ex.spec.T, cfg.grid_t_cells).nodes());
  std::printf("noise_level,theta,median_delta,median_err_f,iqr_err_f,median_err_u_max\n");
  for (const auto& c : stats)
    std::printf("%g,%zu,%.6g,%.6g,%.6g,%.6g\n", c.noise_level, c.theta, c.median_delta,
                c.median_err_f, c.iqr_err_f, c.median_err_u_max);
  return 0;
}

int cmd_example(const std::string& id, const Settings& s) {
  const Example ex = builtin_example(parse_example(id), ExampleOptions{s.k.value_or(1.0), s.T.value_or(1.0)});
  const fs::path dir = out_dir(s);
  const fs::path cfg = dir / (std::string(example_name(ex.id)) + ".cfg");
  {
    std::ofstream out(cfg);
    if (!out) throw std::runtime_error("cannot write " + cfg.string());
    out << "example = " << example_name(ex.id) << "\n"
        << "k = " << csv::num(ex.spec.k) << "\n"
        << "T = " << csv::num(ex.spec.T) << "\n"
        << "out_dir = " << dir.string() << "\n";
  }
  const Grid1D xg = Grid1D::unit(s.grid_x_cells.value_or(50));
  const GridFunction f = ex.f_on(xg);
  write_profile_csv(dir / "profile_f.csv", f, synthesize(ex.f_spectrum, xg));
  std::printf("example=%s k=%g T=%g f_l2=%.10g h_abs_mass=%.10g single_signed_h=%s\n",
              std::string(example_name(ex.id)).c_str(), ex.spec.k, ex.spec.T,
              spectral_l2_norm(ex.f_spectrum), ex.spec.h.c_h(),
              ex.spec.h.single_signed() ? "yes" : "no");
  std::printf("wrote %s\n", cfg.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat source identification from final-time data"};
  app.require_subcommand(1);
  std::string config_path;

  Settings s;
  std::string example_id;
  auto* forward = app.add_subcommand("forward", "solve the direct problem and dump u(x, t)");
  add_common(forward, s);
  forward->add_option("--t", s.t, "single time level (default: the whole t grid)");

  auto* cutoff = app.add_subcommand("invert-cutoff", "frequency cut-off reconstruction");
  add_common(cutoff, s);
  add_noise(cutoff, s);
  add_rule(cutoff, s);

  auto* iter = app.add_subcommand("invert-iter", "relaxed iteration with a stopping rule");
  add_common(iter, s);
  add_noise(iter, s);
  add_rule(iter, s);
  iter->add_option("--space", s.space, "mode (Neumann, [0, 1]) or line (whole line)");
  iter->add_option("--rule", s.rule, "a_priori or discrepancy");
  iter->add_option("--N", s.N, "relaxation exponent");
  iter->add_option("--tau", s.tau, "discrepancy factor");
  iter->add_option("--n-max", s.n_max, "iteration cap");

  auto* noise = app.add_subcommand("noise", "perturb a data file (x, value)");
  add_noise(noise, s);
  noise->add_option("--in", s.in, "input CSV");
  noise->add_option("--out", s.out, "output CSV");

  auto* table1 = app.add_subcommand("table1", "noise x theta x seed batch for the first example");
  add_common(table1, s);
  add_noise(table1, s);
  add_rule(table1, s);
  table1->add_option("--seeds", s.seeds, "seeds per cell");
  table1->add_option("--threads", s.threads, "worker threads (0: all cores)");

  auto* example = app.add_subcommand("example", "describe a built-in example and write its config");
  add_common(example, s);
  example->add_option("id", example_id, "ex1, ex2 or ex3");

  for (auto* cmd : app.get_subcommands({}))
    cmd->add_option("--config", config_path, "key = value file; its values override flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (!config_path.empty()) {
      const Config cfg = Config::load(config_path);
      for (const auto& [key, value] : cfg.resolved(cmd->get_name())) apply(s, key, value);
    }
    if (const char* env = std::getenv("HEATSOURCE_SEED")) apply(s, "seed", env);

    if (cmd == forward) return cmd_forward(s);
    if (cmd == cutoff) return cmd_invert_cutoff(s);
    if (cmd == iter) return cmd_invert_iter(s);
    if (cmd == noise) return cmd_noise(s);
    if (cmd == table1) return cmd_table1(s);
    if (example_id.empty()) throw UsageError("example: missing id");
    return cmd_example(example_id, s);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
