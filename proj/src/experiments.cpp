#include "heatsrc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "heatsrc/csv.hpp"
#include "heatsrc/error.hpp"

namespace heatsrc {

using std::numbers::pi;

ExampleId parse_example(std::string_view id) {
  if (id == "ex1" || id == "1") return ExampleId::ex1;
  if (id == "ex2" || id == "2") return ExampleId::ex2;
  if (id == "ex3" || id == "3") return ExampleId::ex3;
  throw ParameterError("unknown example '" + std::string(id) + "' (expected ex1, ex2 or ex3)");
}

std::string_view example_name(ExampleId id) {
  switch (id) {
    case ExampleId::ex1: return "ex1";
    case ExampleId::ex2: return "ex2";
    case ExampleId::ex3: return "ex3";
  }
  return "?";
}

namespace {

// phi(r, t) for h(t) = t.
double ramp_kernel(double r, double t) {
  if (r == 0.0) return 0.5 * t * t;
  return (r * t - 1.0 + std::exp(-r * t)) / (r * r);
}

double ex1_u(double x, double t, double k) {
  auto mode = [&](int m) {
    const double r = m * m * pi * pi * k;
    return std::cos(m * pi * x) * ramp_kernel(r, t);
  };
  return std::exp(-4.0 * pi * pi * k * t) * std::cos(2.0 * pi * x) + mode(0) + mode(3) +
         2.0 * mode(5);
}

}  // namespace

Example builtin_example(ExampleId id, ExampleOptions opts) {
  std::function<double(double)> f, mu0, h;
  std::vector<double> breaks;
  std::function<double(double, double)> closed;
  switch (id) {
    case ExampleId::ex1:
      f = [](double x) { return 1.0 + std::cos(3.0 * pi * x) + 2.0 * std::cos(5.0 * pi * x); };
      mu0 = [](double x) { return std::cos(2.0 * pi * x); };
      h = [](double t) { return t; };
      closed = [k = opts.k](double x, double t) { return ex1_u(x, t, k); };
      break;
    case ExampleId::ex2:
      f = [](double x) { return (1.0 - x) * x / (std::abs(x - 0.5) + 0.5); };
      mu0 = [](double) { return 0.0; };
      h = [](double t) { return 5.0 * std::sin(2.0 * pi * t) + 1.0; };
      breaks = {0.5};
      break;
    case ExampleId::ex3:
      f = [](double x) {
        if (x < 0.2 || x > 0.8) return 0.0;
        return x <= 0.5 ? x : 1.0 - x;
      };
      mu0 = [](double) { return 0.0; };
      h = [](double t) { return std::exp(t) + 6.0 * std::sin(4.0 * pi * t) + t * t + 1.0; };
      breaks = {0.2, 0.5, 0.8};
      break;
  }
  const Grid1D fine = Grid1D::unit(opts.mu0_cells);
  ProblemSpec spec{opts.k, opts.T, TimeProfile(h, opts.T, opts.time_cells), GridFunction::sample(fine, mu0),
                   GridFunction::sample(fine, f),
                   DomainMode::neumann_unit_interval, std::nullopt};
  spec.validate();
  CosineSpectrum fs = analyze_function(f, opts.f_modes, breaks);
  CosineSpectrum ms = analyze_function(mu0, opts.f_modes);
  return Example{id, std::move(spec), f, mu0, std::move(breaks), std::move(fs), std::move(ms), closed};
}

CosineSpectrum Example::u_spectrum(double t) const {
  return series_spectrum(mu0_spectrum, f_spectrum, spec.h, spec.k, t);
}

GridFunction Example::u(double t, const Grid1D& grid) const { return synthesize(u_spectrum(t), grid); }

GridFunction Example::f_on(const Grid1D& grid) const { return GridFunction::sample(grid, f); }

GridFunction Example::final_data(const Grid1D& grid) const { return u(spec.T, grid); }

LineExample line_example(LineBand band, double k, double T) {
  const FreqGrid g(band.xi_max, band.n_bins);
  TimeProfile h([](double t) { return 1.0 + t; }, T);
  auto f_hat = FreqFunction::sample(g, [](double xi) {
    return Complex(std::sqrt(pi) * std::exp(-0.25 * xi * xi), 0.0);
  });
  auto mu0_hat = FreqFunction::sample(g, [](double xi) {
    return Complex(0.5 * std::sqrt(pi) * std::exp(-0.25 * xi * xi), 0.0);
  });
  auto muT_hat = line_forward(mu0_hat, f_hat, h, k, T);
  return {k, T, std::move(h), std::move(f_hat), std::move(mu0_hat), std::move(muT_hat)};
}

CutoffExperiment::CutoffExperiment(Example ex, std::size_t grid_x_cells, std::size_t grid_t_cells)
    : ex_(std::move(ex)),
      x_grid_(Grid1D::unit(grid_x_cells)),
      muT_(ex_.final_data(x_grid_)),
      f_true_(ex_.f_on(x_grid_)) {
  t_ = Grid1D(0.0, ex_.spec.T, grid_t_cells).nodes();
  for (double t : t_) u_true_.push_back(ex_.u(t, x_grid_));
}

CutoffRun CutoffExperiment::run(double noiselv, std::uint64_t seed, std::size_t theta) const {
  auto noisy = perturb(muT_, NoiseSpec{noiselv, seed});
  CutoffResult res = reconstruct(ex_.spec, noisy.data, theta, x_grid_);

  RunReport rep;
  rep.noise_level = noiselv;
  rep.delta = noisy.delta;
  rep.theta = theta;
  rep.seed = seed;
  rep.err_f = l2_norm(res.f_delta - f_true_);
  std::vector<GridFunction> u_recon;
  for (std::size_t j = 0; j < t_.size(); ++j) {
    u_recon.push_back(res.u_delta(t_[j], x_grid_));
    const double e = l2_norm(u_recon.back() - u_true_[j]);
    rep.err_u.push_back(e);
    const double tail = initial_truncation_residual(ex_.mu0_spectrum, 3 * theta, ex_.spec.k, t_[j]);
    rep.err_u_bound.push_back(u_error_bound(ex_.spec.h, t_[j], rep.err_f, tail));
    rep.err_u_max = std::max(rep.err_u_max, e);
  }
  return {std::move(rep), std::move(noisy.data), std::move(res), std::move(u_recon)};
}

std::vector<RunReport> run_table1(const Table1Config& cfg,
                                  const std::optional<std::filesystem::path>& out_dir) {
  if (cfg.rows.empty() || cfg.seeds == 0) throw ParameterError("table1: nothing to run");
  struct Job {
    double noise;
    std::size_t theta;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& row : cfg.rows) {
    if (row.thetas.empty()) throw ParameterError("table1: empty theta list");
    for (std::size_t theta : row.thetas)
      for (std::size_t s = 0; s < cfg.seeds; ++s) jobs.push_back({row.noise_level, theta, cfg.first_seed + s});
  }

  const CutoffExperiment exp(builtin_example(cfg.example), cfg.grid_x_cells, cfg.grid_t_cells);
  std::vector<std::optional<RunReport>> done(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        done[i] = exp.run(jobs[i].noise, jobs[i].seed, jobs[i].theta).report;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<RunReport> reports;
  for (auto& r : done)
    if (r) reports.push_back(std::move(*r));
  for (auto& e : errors)
    if (e) {
      if (out_dir) write_table1_csv(*out_dir / "table1.csv", reports);
      std::rethrow_exception(e);
    }
  return reports;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw DomainError("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<CellStats> summarize(const std::vector<RunReport>& reports) {
  std::vector<CellStats> out;
  std::size_t i = 0;
  while (i < reports.size()) {
    std::size_t j = i;
    std::vector<double> d, ef, eu;
    while (j < reports.size() && reports[j].noise_level == reports[i].noise_level &&
           reports[j].theta == reports[i].theta) {
      d.push_back(reports[j].delta);
      ef.push_back(reports[j].err_f);
      eu.push_back(reports[j].err_u_max);
      ++j;
    }
    out.push_back({reports[i].noise_level, reports[i].theta, j - i, quantile(d, 0.5),
                   quantile(ef, 0.5), quantile(ef, 0.75) - quantile(ef, 0.25), quantile(eu, 0.5),
                   quantile(eu, 0.75) - quantile(eu, 0.25)});
    i = j;
  }
  return out;
}

void write_table1_csv(const std::filesystem::path& path, const std::vector<RunReport>& reports) {
  csv::Writer w(path, {"noise_level", "delta", "theta", "seed", "err_f", "err_u_max", "n_stop"});
  for (const auto& r : reports)
    w.row({csv::num(r.noise_level), csv::num(r.delta), csv::num(r.theta), csv::num(r.seed),
           csv::num(r.err_f), csv::num(r.err_u_max), r.n_stop ? csv::num(*r.n_stop) : ""});
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<CellStats>& stats) {
  csv::Writer w(path, {"noise_level", "theta", "runs", "median_delta", "median_err_f", "iqr_err_f",
                       "median_err_u_max", "iqr_err_u_max"});
  for (const auto& s : stats)
    w.row({csv::num(s.noise_level), csv::num(s.theta), csv::num(s.runs), csv::num(s.median_delta),
           csv::num(s.median_err_f), csv::num(s.iqr_err_f), csv::num(s.median_err_u_max),
           csv::num(s.iqr_err_u_max)});
}

void write_meta_csv(const std::filesystem::path& path, const Example& ex, const Table1Config& cfg) {
  csv::Writer w(path, {"key", "value"});
  w.row({"example", std::string(example_name(ex.id))});
  w.row({"M", csv::num(cfg.M)});
  w.row({"p", csv::num(cfg.p)});
  w.row({"sigma", csv::num(cfg.sigma)});
  w.row({"f_l2_norm", csv::num(spectral_l2_norm(ex.f_spectrum))});
  w.row({"f_hp_norm", csv::num(hp_norm(ex.f_spectrum, cfg.p))});
  w.row({"grid_x_cells", csv::num(cfg.grid_x_cells)});
  w.row({"grid_t_cells", csv::num(cfg.grid_t_cells)});
  w.row({"seeds", csv::num(cfg.seeds)});
  w.row({"first_seed", csv::num(cfg.first_seed)});
}

void write_err_u_curves(const std::filesystem::path& path, const std::vector<RunReport>& reports,
                        const std::vector<double>& t_nodes) {
  csv::Writer w(path, {"noise_level", "theta", "seed", "t", "err_u", "bound"});
  for (const auto& r : reports)
    for (std::size_t j = 0; j < r.err_u.size() && j < t_nodes.size(); ++j)
      w.row({csv::num(r.noise_level), csv::num(r.theta), csv::num(r.seed), csv::num(t_nodes[j]),
             csv::num(r.err_u[j]), csv::num(r.err_u_bound[j])});
}

void write_profile_csv(const std::filesystem::path& path, const GridFunction& f_true,
                       const GridFunction& f_recon) {
  if (!(f_true.grid() == f_recon.grid())) throw GridMismatchError("profile: grid mismatch");
  csv::Writer w(path, {"x", "f_true", "f_recon"});
  for (std::size_t i = 0; i < f_true.size(); ++i)
    w.row({csv::num(f_true.grid().node(i)), csv::num(f_true[i]), csv::num(f_recon[i])});
}

void write_field_csv(const std::filesystem::path& path, const std::vector<double>& t_nodes,
                     const std::vector<GridFunction>& u_true,
                     const std::vector<GridFunction>& u_recon) {
  if (u_true.size() != t_nodes.size() || u_recon.size() != t_nodes.size())
    throw DomainError("field: one profile per t node expected");
  csv::Writer w(path, {"x", "t", "u_true", "u_recon"});
  for (std::size_t j = 0; j < t_nodes.size(); ++j) {
    if (!(u_true[j].grid() == u_recon[j].grid())) throw GridMismatchError("field: grid mismatch");
    for (std::size_t i = 0; i < u_true[j].size(); ++i)
      w.row({csv::num(u_true[j].grid().node(i)), csv::num(t_nodes[j]), csv::num(u_true[j][i]),
             csv::num(u_recon[j][i])});
  }
}

void write_residuals_csv(const std::filesystem::path& path, const std::vector<double>& trace,
                         double threshold) {
  csv::Writer w(path, {"n", "residual", "threshold"});
  for (std::size_t n = 0; n < trace.size(); ++n)
    w.row({csv::num(n), csv::num(trace[n]), csv::num(threshold)});
}

}  // namespace heatsrc
