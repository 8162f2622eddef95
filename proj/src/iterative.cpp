#include "heatsrc/iterative.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "heatsrc/error.hpp"
#include "heatsrc/log.hpp"
#include "heatsrc/simd/kernels.hpp"

namespace heatsrc {

using std::numbers::pi;

void StoppingRule::validate() const {
  if (N < 1) throw ParameterError("StoppingRule: N must be >= 1");
  if (!(M > 0.0)) throw ParameterError("StoppingRule: M must be positive");
  if (!(sigma >= 0.0)) throw ParameterError("StoppingRule: sigma must be >= 0");
  if (!(p >= 0.0)) throw ParameterError("StoppingRule: p must be >= 0");
  if (tau && !(*tau > 0.0)) throw ParameterError("StoppingRule: tau must be positive");
  if (n_max < 1) throw ParameterError("StoppingRule: n_max must be >= 1");
  if (!(n_multiplier > 0.0)) throw ParameterError("StoppingRule: n_multiplier must be positive");
  if (tau && *tau <= 1.0) log::warn("discrepancy factor tau <= 1");
}

double lambda_line(double xi, double k, double T, int N) {
  return std::exp(-k * xi * xi * T / N);
}

double lambda_mode(std::size_t m, double k, double T, int N) {
  const auto mm = static_cast<double>(m);
  return std::exp(-mm * mm * pi * pi * k * T / N);
}

namespace {

double log_ratio(double M, double delta) {
  if (!(delta > 0.0) || !(M > delta))
    throw ParameterError("need M > delta > 0 (M = " + std::to_string(M) +
                         ", delta = " + std::to_string(delta) + ")");
  const double L = std::log(M / delta);
  // M / delta = e lands a rounding step below 1
  if (!(L >= 1.0 - 1e-12)) throw ParameterError("need ln(M / delta) >= 1");
  return L;
}

}  // namespace

double theta1_of(double M, double delta, double k, double T, double p, double sigma,
                 double multiplier) {
  const double L = log_ratio(M, delta);
  if (!(k > 0.0 && T > 0.0)) throw ParameterError("theta1_of: k and T must be positive");
  if (!(p >= 0.0 && sigma >= 0.0)) throw ParameterError("theta1_of: p and sigma must be >= 0");
  const double bracket = L * std::pow(L, -0.5 * (1.0 + sigma) * p);
  return multiplier * std::sqrt(bracket / ((1.0 + sigma) * k * T));
}

std::size_t a_priori_stop(double M, double delta, int N, double multiplier) {
  if (!(delta > 0.0) || !(M > 0.0)) throw ParameterError("a_priori_stop: need M, delta > 0");
  if (N < 1) throw ParameterError("a_priori_stop: N must be >= 1");
  return static_cast<std::size_t>(std::floor(multiplier * std::pow(M / delta, 1.0 / N)));
}

double discrepancy_c1(double M, double delta, double p, double sigma) {
  const double L = log_ratio(M, delta);
  const double bracket = L * std::pow(L, -0.5 * (1.0 + sigma) * p);
  return std::pow(L / bracket, p);
}

double discrepancy_tau(double M, double delta, double p, double sigma, double c_h) {
  if (!(c_h > 0.0)) throw ParameterError("discrepancy_tau: C_h must be positive");
  const double e = sigma / (1.0 + sigma);
  return discrepancy_c1(M, delta, p, sigma) * std::pow(M, e) +
         (c_h + 1.0) / c_h * std::pow(delta, e);
}

double discrepancy_threshold(double tau, double delta, double sigma) {
  return tau * std::pow(delta, 1.0 / (1.0 + sigma));
}

void detail::RelaxationCore::step(std::vector<double>& w) const { simd::relax(w, lambda, target); }

double detail::RelaxationCore::residual(const std::vector<double>& w) const {
  return std::sqrt(simd::weighted_sq_diff(residual_weight, data, w));
}

namespace {

std::vector<double> flatten(std::span<const Complex> v) {
  std::vector<double> out(2 * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[2 * j] = v[j].real();
    out[2 * j + 1] = v[j].imag();
  }
  return out;
}

FreqFunction unflatten(const FreqGrid& g, const std::vector<double>& flat) {
  std::vector<Complex> v(flat.size() / 2);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = {flat[2 * j], flat[2 * j + 1]};
  return FreqFunction(g, std::move(v));
}

void require_nonsingular(double phi, double floor, double where, const char* who) {
  if (!(std::abs(phi) > floor))
    throw SingularKernelError(std::string(who) + ": kernel vanishes at " + std::to_string(where),
                              where);
}

}  // namespace


LineIteration::LineIteration(FreqFunction muT_delta, FreqFunction mu0_hat, TimeProfile h, double k,
                             double T, int N, double theta1)
    : muT_(std::move(muT_delta)), mu0_(std::move(mu0_hat)), h_(std::move(h)), k_(k), T_(T) {
  if (!(muT_.grid() == mu0_.grid())) throw GridMismatchError("LineIteration: grid mismatch");
  if (N < 1) throw ParameterError("LineIteration: N must be >= 1");
  const FreqGrid& g = mu0_.grid();
  const std::size_t n = g.size();
  std::vector<double> rates(n);
  for (std::size_t j = 0; j < n; ++j) rates[j] = k * g.xi(j) * g.xi(j);
  phi_ = h_.decayed_kernels(rates, T);
  const double floor = 1e-13 * h_.abs_mass(T);

  lambda_.resize(n);
  v_.resize(n);
  band_.resize(n);
  core_.lambda.resize(2 * n);
  core_.target.resize(2 * n);
  core_.data = flatten(muT_.values());
  core_.residual_weight.assign(2 * n, 0.0);
  const double dxi = g.spacing();
  for (std::size_t j = 0; j < n; ++j) {
    v_[j] = std::exp(-rates[j] * T);
    lambda_[j] = std::exp(-rates[j] * T / N);
    band_[j] = std::abs(g.xi(j)) <= theta1;
    const Complex target = band_[j] ? muT_[j] : v_[j] * mu0_[j];
    core_.lambda[2 * j] = core_.lambda[2 * j + 1] = lambda_[j];
    core_.target[2 * j] = target.real();
    core_.target[2 * j + 1] = target.imag();
    if (band_[j]) {
      require_nonsingular(phi_[j], floor, g.xi(j), "LineIteration");
      const double trap = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      const double scale = v_[j] / phi_[j];
      core_.residual_weight[2 * j] = core_.residual_weight[2 * j + 1] = trap * dxi * scale * scale;
    }
  }
}

LineIterState LineIteration::initial_state() const {
  std::vector<Complex> w(mu0_.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = v_[j] * mu0_[j];
  FreqFunction w0(mu0_.grid(), std::move(w));
  const double r = residual(w0);
  return {std::move(w0), 0, r};
}

LineIterState LineIteration::step(const LineIterState& s) const {
  auto flat = flatten(s.w.values());
  core_.step(flat);
  const double r = core_.residual(flat);
  return {unflatten(mu0_.grid(), flat), s.n + 1, r};
}

double LineIteration::residual(const FreqFunction& w) const {
  return core_.residual(flatten(w.values()));
}

FreqFunction LineIteration::source_of(const FreqFunction& w) const {
  std::vector<Complex> f(w.size(), Complex{});
  for (std::size_t j = 0; j < f.size(); ++j)
    if (band_[j]) f[j] = (w[j] - v_[j] * mu0_[j]) / phi_[j];
  return FreqFunction(w.grid(), std::move(f));
}

FreqFunction LineIteration::u_at(const FreqFunction& f_hat, double t) const {
  return line_forward(mu0_, f_hat, h_, k_, t);
}


ModeIteration::ModeIteration(CosineSpectrum c_delta, CosineSpectrum a, TimeProfile h, double k,
                             double T, int N, std::size_t theta)
    : c_(std::move(c_delta)), a_(std::move(a)), h_(std::move(h)), k_(k), T_(T), theta_(theta) {
  if (N < 1) throw ParameterError("ModeIteration: N must be >= 1");
  if (c_.max_mode() < theta) throw DomainError("ModeIteration: data must cover modes 0..theta");
  if (a_.max_mode() < theta) a_ = a_.truncated(theta);
  const std::size_t n = a_.size();
  std::vector<double> rates(n);
  for (std::size_t m = 0; m < n; ++m) rates[m] = static_cast<double>(m * m) * pi * pi * k;
  phi_ = h_.decayed_kernels(rates, T);
  const double floor = 1e-13 * h_.abs_mass(T);

  lambda_.resize(n);
  v_.resize(n);
  core_.lambda.resize(n);
  core_.target.resize(n);
  core_.data.resize(n);
  core_.residual_weight.assign(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    v_[m] = std::exp(-rates[m] * T);
    lambda_[m] = std::exp(-rates[m] * T / N);
    core_.lambda[m] = lambda_[m];
    const bool in_band = m <= theta;
    core_.data[m] = c_.at_or_zero(m);
    core_.target[m] = in_band ? c_[m] : v_[m] * a_[m];
    if (in_band) {
      require_nonsingular(phi_[m], floor, static_cast<double>(m), "ModeIteration");
      const double scale = v_[m] / phi_[m];
      core_.residual_weight[m] = (m == 0 ? 1.0 : 0.5) * scale * scale;
    }
  }
}

ModeIterState ModeIteration::initial_state() const {
  std::vector<double> w(a_.size());
  for (std::size_t m = 0; m < w.size(); ++m) w[m] = v_[m] * a_[m];
  const double r = core_.residual(w);
  return {CosineSpectrum(std::move(w)), 0, r};
}

ModeIterState ModeIteration::step(const ModeIterState& s) const {
  std::vector<double> flat(s.w.coeffs().begin(), s.w.coeffs().end());
  core_.step(flat);
  const double r = core_.residual(flat);
  return {CosineSpectrum(std::move(flat)), s.n + 1, r};
}

double ModeIteration::residual(const CosineSpectrum& w) const {
  return core_.residual({w.coeffs().begin(), w.coeffs().end()});
}

CosineSpectrum ModeIteration::source_of(const CosineSpectrum& w) const {
  std::vector<double> b(theta_ + 1);
  for (std::size_t m = 0; m <= theta_; ++m) b[m] = (w[m] - v_[m] * a_[m]) / phi_[m];
  return CosineSpectrum(std::move(b));
}

CosineSpectrum ModeIteration::u_at(const CosineSpectrum& b, double t) const {
  return series_spectrum(a_, b, h_, k_, t);
}


LineIterState iterate_step(const LineIterState& state, const FreqFunction& muT_delta,
                           const FreqFunction& mu0_hat, double theta1, const TimeProfile& h,
                           double k, double T, int N) {
  return LineIteration(muT_delta, mu0_hat, h, k, T, N, theta1).step(state);
}

ModeIterState iterate_step(const ModeIterState& state, const CosineSpectrum& c_delta,
                           const CosineSpectrum& a, std::size_t theta, const TimeProfile& h,
                           double k, double T, int N) {
  return ModeIteration(c_delta, a, h, k, T, N, theta).step(state);
}

namespace {

template <class Iteration, class State>
std::pair<State, std::vector<double>> drive(const Iteration& it, const StoppingRule& rule,
                                            double delta, double threshold) {
  State s = it.initial_state();
  std::vector<double> trace{s.residual};
  if (rule.kind == StopKind::a_priori) {
    const std::size_t n_stop = a_priori_stop(rule.M, delta, rule.N, rule.n_multiplier);
    if (n_stop > rule.n_max)
      throw ParameterError("a-priori stop " + std::to_string(n_stop) + " exceeds n_max");
    while (s.n < n_stop) {
      s = it.step(s);
      trace.push_back(s.residual);
    }
    return {std::move(s), std::move(trace)};
  }
  while (!(s.residual <= threshold)) {
    if (s.n >= rule.n_max)
      throw NonConvergenceError("discrepancy rule not met after " + std::to_string(rule.n_max) +
                                    " iterations",
                                std::move(trace));
    s = it.step(s);
    trace.push_back(s.residual);
  }
  return {std::move(s), std::move(trace)};
}

double resolve_tau(const StoppingRule& rule, double delta, double c_h) {
  if (rule.tau) return *rule.tau;
  return discrepancy_tau(rule.M, delta, rule.p, rule.sigma, c_h);
}

}  // namespace

IterationResult<FreqFunction> run_line(const FreqFunction& muT_delta, const FreqFunction& mu0_hat,
                                       const TimeProfile& h, double k, double T,
                                       const StoppingRule& rule, double theta1, double delta) {
  rule.validate();
  if (!(delta > 0.0)) throw ParameterError("run_line: delta must be positive");
  const double tau = resolve_tau(rule, delta, h.c_h());
  const double threshold = discrepancy_threshold(tau, delta, rule.sigma);
  auto it = std::make_shared<LineIteration>(muT_delta, mu0_hat, h, k, T, rule.N, theta1);
  auto [state, trace] = drive<LineIteration, LineIterState>(*it, rule, delta, threshold);
  FreqFunction f_hat = it->source_of(state.w);
  auto u_at = [it, f_hat](double t) { return it->u_at(f_hat, t); };
  return {std::move(f_hat), std::move(u_at), state.n, std::move(trace), threshold, tau};
}

IterationResult<CosineSpectrum> run_modes(const GridFunction& muT_delta, const ProblemSpec& spec,
                                          const StoppingRule& rule, std::size_t theta,
                                          double delta) {
  spec.validate();
  rule.validate();
  if (!(delta > 0.0)) throw ParameterError("run_modes: delta must be positive");
  const CosineSpectrum c = analyze(muT_delta, theta, AnalyzeOptions{.min_cells_per_mode = 1.0});
  const CosineSpectrum a = analyze(spec.mu0, 3 * theta);
  const double tau = resolve_tau(rule, delta, spec.h.c_h());
  const double threshold = discrepancy_threshold(tau, delta, rule.sigma);
  auto it = std::make_shared<ModeIteration>(c, a, spec.h, spec.k, spec.T, rule.N, theta);
  auto [state, trace] = drive<ModeIteration, ModeIterState>(*it, rule, delta, threshold);
  CosineSpectrum b = it->source_of(state.w);
  auto u_at = [it, b](double t) { return it->u_at(b, t); };
  return {std::move(b), std::move(u_at), state.n, std::move(trace), threshold, tau};
}

}  // namespace heatsrc
