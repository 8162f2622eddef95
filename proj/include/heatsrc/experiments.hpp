#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatsrc/cosine.hpp"
#include "heatsrc/cutoff.hpp"
#include "heatsrc/forward.hpp"
#include "heatsrc/grid.hpp"
#include "heatsrc/iterative.hpp"
#include "heatsrc/line_spectral.hpp"
#include "heatsrc/noise.hpp"

namespace heatsrc {

enum class ExampleId { ex1, ex2, ex3 };

/// "ex1", "ex2", "ex3" (also "1", "2", "3"). Throws ParameterError otherwise.
ExampleId parse_example(std::string_view id);
std::string_view example_name(ExampleId id);

struct ExampleOptions {
  double k = 1.0;
  double T = 1.0;
  std::size_t mu0_cells = 2000;  ///< fine grid holding mu0 and f_true
  std::size_t f_modes = 400;     ///< modes kept in the reference source spectrum
  std::size_t time_cells = TimeProfile::kDefaultDenseCells;
};

/// One of the three test problems on [0, 1] (published with k = T = 1).
struct Example {
  ExampleId id;
  ProblemSpec spec;
  std::function<double(double)> f;
  std::function<double(double)> mu0;
  std::vector<double> breakpoints;  ///< jumps and kinks of f
  CosineSpectrum f_spectrum;        ///< reference coefficients, piecewise Simpson
  CosineSpectrum mu0_spectrum;
  /// Closed-form u(x, t); ex1 only.
  std::function<double(double, double)> u_closed_form;

  /// Reference u(., t) from the series with f_spectrum and mu0_spectrum.
  CosineSpectrum u_spectrum(double t) const;
  GridFunction u(double t, const Grid1D& grid) const;
  GridFunction f_on(const Grid1D& grid) const;
  /// Reference final data sampled on `grid`.
  GridFunction final_data(const Grid1D& grid) const;
};

Example builtin_example(ExampleId id, ExampleOptions opts = {});

/// Whole-line test problem: h(t) = 1 + t, f = exp(-x^2),
/// mu0 = exp(-x^2) / 2, transforms taken analytically (f^ = sqrt(pi) exp(-xi^2/4)).
struct LineExample {
  double k;
  double T;
  TimeProfile h;
  FreqFunction f_hat;
  FreqFunction mu0_hat;
  FreqFunction muT_hat;
};

LineExample line_example(LineBand band = {20.0, 1024}, double k = 1.0, double T = 1.0);

struct RunReport {
  double noise_level = 0.0;
  double delta = 0.0;
  std::size_t theta = 0;
  std::uint64_t seed = 0;
  double err_f = 0.0;             ///< ||f^delta - f|| on the x grid
  std::vector<double> err_u;      ///< ||u^delta(., t) - u(., t)|| per t node
  std::vector<double> err_u_bound;  ///< abs_mass(h, t) err_f + initial truncation residual
  double err_u_max = 0.0;
  std::optional<std::size_t> n_stop;
};

struct CutoffRun {
  RunReport report;
  GridFunction muT_delta;
  CutoffResult result;
  std::vector<GridFunction> u_recon;  ///< per t node
};

/// Shared state for repeated cut-off runs of one example on the measurement
/// grids (x: grid_x_cells, t: grid_t_cells nodes over [0, T]).
class CutoffExperiment {
 public:
  CutoffExperiment(Example ex, std::size_t grid_x_cells, std::size_t grid_t_cells);

  CutoffRun run(double noiselv, std::uint64_t seed, std::size_t theta) const;

  const Example& example() const noexcept { return ex_; }
  const Grid1D& x_grid() const noexcept { return x_grid_; }
  const std::vector<double>& t_nodes() const noexcept { return t_; }
  const GridFunction& exact_final_data() const noexcept { return muT_; }
  const GridFunction& exact_u(std::size_t j) const noexcept { return u_true_[j]; }
  const GridFunction& exact_f() const noexcept { return f_true_; }

 private:
  Example ex_;
  Grid1D x_grid_;
  std::vector<double> t_;
  GridFunction muT_;
  GridFunction f_true_;
  std::vector<GridFunction> u_true_;
};

struct Table1Row {
  double noise_level;
  std::vector<std::size_t> thetas;
};

struct Table1Config {
  ExampleId example = ExampleId::ex1;
  std::vector<Table1Row> rows = {
      {0.01, {12, 24, 36}}, {0.05, {6, 12, 18}}, {0.10, {6, 12, 18}}, {0.20, {6, 12, 18}}};
  std::size_t seeds = 100;
  std::uint64_t first_seed = 1;
  std::size_t grid_x_cells = 50;
  std::size_t grid_t_cells = 20;
  double p = 1.0 / 3.0;
  double sigma = 0.2;
  double M = 1.870888;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Every (noise, theta, seed) cell, ordered by noise row, theta, then seed no
/// matter how the worker pool schedules them. If some runs fail and out_dir is
/// given, the successful rows are still written to table1.csv before the first
/// error is rethrown.
std::vector<RunReport> run_table1(const Table1Config& cfg,
                                  const std::optional<std::filesystem::path>& out_dir = {});

struct CellStats {
  double noise_level;
  std::size_t theta;
  std::size_t runs;
  double median_delta;
  double median_err_f;
  double iqr_err_f;
  double median_err_u_max;
  double iqr_err_u_max;
};

/// Median and interquartile range per (noise, theta), in report order.
std::vector<CellStats> summarize(const std::vector<RunReport>& reports);

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> v, double q);

void write_table1_csv(const std::filesystem::path& path, const std::vector<RunReport>& reports);
void write_summary_csv(const std::filesystem::path& path, const std::vector<CellStats>& stats);
/// Source-norm facts behind the bound M: key,value rows.
void write_meta_csv(const std::filesystem::path& path, const Example& ex, const Table1Config& cfg);
/// err_u per t node for every run: noise_level, theta, seed, t, err_u, bound.
void write_err_u_curves(const std::filesystem::path& path, const std::vector<RunReport>& reports,
                        const std::vector<double>& t_nodes);

void write_profile_csv(const std::filesystem::path& path, const GridFunction& f_true,
                       const GridFunction& f_recon);
void write_field_csv(const std::filesystem::path& path, const std::vector<double>& t_nodes,
                     const std::vector<GridFunction>& u_true,
                     const std::vector<GridFunction>& u_recon);
void write_residuals_csv(const std::filesystem::path& path, const std::vector<double>& trace,
                         double threshold);

}  // namespace heatsrc
