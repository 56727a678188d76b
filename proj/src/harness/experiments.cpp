// Copyright 2026 The mcmclab Authors
//
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

#include "mcmclab/harness/experiments.hpp"

#include "mcmclab/diagnostics.hpp"
#include "mcmclab/ensemble.hpp"
#include "mcmclab/grid.hpp"
#include "mcmclab/importance.hpp"
#include "mcmclab/mh.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/summaries.hpp"
#include "mcmclab/targets.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace mcmclab::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0, bool timing) {
  if (!timing) return kMissing;
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

DiscretizedPosterior marginal(const DiscretizedPosterior& post, Eigen::Index j) {
  return {post.points.row(j), post.masses, post.volumes};
}

/// Means and central 68% intervals of the first two coordinates.
void fill_summaries(ResultRow& row, const DiscretizedPosterior& post) {
  const Vector mean = posterior_mean(post);
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(2, post.dim()); ++j) {
    row.mean[static_cast<std::size_t>(j)] = mean[j];
    const auto [lo, hi] = percentile_interval(marginal(post, j), 0.68);
    row.ci68_lo[static_cast<std::size_t>(j)] = lo;
    row.ci68_hi[static_cast<std::size_t>(j)] = hi;
  }
}

void fill_chain_diagnostics(ResultRow& row, const Eigen::Ref<const Matrix>& samples) {
  const ChainTau taus = autocorr_times(samples);
  if (taus.sufficient) {
    row.tau_hat = taus.max_tau;
    row.ess = chain_ess(static_cast<double>(samples.cols()), taus.max_tau);
  }
}

std::string fixed(double v, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

Eigen::Index single_n(const ExperimentConfig& cfg, Eigen::Index fallback) {
  if (cfg.n.empty()) return fallback;
  if (cfg.n.size() != 1) throw ConfigError("config: this experiment takes a single value of 'n'");
  return cfg.n.front();
}

std::vector<Eigen::Index> n_list(const ExperimentConfig& cfg, std::vector<Eigen::Index> fallback) {
  return cfg.n.empty() ? fallback : cfg.n;
}

// --- exercises -------------------------------------------------------------------------

ExerciseResult noisy_mean_exercise(const ExperimentConfig& cfg) {
  ExerciseResult out;
  const std::string id = cfg.experiment_id();
  const NoisyMeanModel model = station_temperature_model();
  const NoisyMeanModel warmer = station_temperature_model(30.0, 3.0);
  auto add = [&](const std::string& name, double value) { out.quantities.push_back({id, name, value}); };
  std::ostringstream summary;

  // Grid posterior over T.
  constexpr Eigen::Index kGridCells = 10'000;
  const auto t0 = Clock::now();
  const GridCells cells = build_grid(GridSpec({Axis::uniform(15.0, 40.0, kGridCells)}));
  const DiscretizedPosterior post = discretize(model, cells);
  const LogEstimate z = grid_evidence(model, cells);
  const double mean = posterior_mean(post)[0];
  const double sd = posterior_sd(post)[0];
  add("posterior_mean", mean);
  add("posterior_sd", sd);
  add("median", point_estimate(post, LossSpec::absolute())[0]);
  add("mode", point_estimate(post, LossSpec::catastrophic())[0]);
  add("asymmetric_estimate", point_estimate(post, LossSpec::asymmetric(model.prior_mean()))[0]);
  summary << "noisy-mean: posterior mean " << fixed(mean) << ", sd " << fixed(sd) << '\n';
  for (const double y : {0.50, 0.80, 0.95}) {
    const auto [lo, hi] = percentile_interval(post, y);
    const std::string tag = fixed(y, 2);
    add("percentile_" + tag + "_lo", lo);
    add("percentile_" + tag + "_hi", hi);
    const CredibleRegion region = threshold_credible_region(post, y);
    double rlo = std::numeric_limits<double>::infinity();
    double rhi = -rlo;
    for (Eigen::Index i = 0; i < post.size(); ++i) {
      if (!region.members[static_cast<std::size_t>(i)]) continue;
      rlo = std::min(rlo, post.points(0, i));
      rhi = std::max(rhi, post.points(0, i));
    }
    add("threshold_" + tag + "_lo", rlo);
    add("threshold_" + tag + "_hi", rhi);
    summary << "  " << tag << " interval: percentile [" << fixed(lo) << ", " << fixed(hi) << "], threshold ["
            << fixed(rlo) << ", " << fixed(rhi) << "]\n";
  }
  for (const double s6 : {0.0, 0.5, 2.0}) {
    const double spread = std::sqrt(sd * sd + s6 * s6);
    const Vector readings = Vector::LinSpaced(4001, mean - 8.0 * spread, mean + 8.0 * spread);
    const Vector density = posterior_predictive_noisy_mean(post, s6, readings);
    const double step = readings[1] - readings[0];
    const double mass = density.sum() * step;
    const double pmean = readings.dot(density) * step / mass;
    const double psd = std::sqrt((readings.array() - pmean).square().matrix().dot(density) * step / mass);
    add("predictive_sd_sigma6_" + fixed(s6, 1), psd);
    summary << "  predictive sd (sigma6 = " << fixed(s6, 1) << "): " << fixed(psd) << '\n';
  }
  const LogEstimate z_warm = grid_evidence(warmer, cells);
  add("log_evidence_prior_25_1.5", z.log_value);
  add("log_evidence_prior_30_3", z_warm.log_value);
  add("log_bayes_factor", log_bayes_factor(z.log_value, z_warm.log_value));
  summary << "  log Z (prior N(25,1.5)) " << fixed(z.log_value) << ", log Z (prior N(30,3)) " << fixed(z_warm.log_value)
          << ", log Bayes factor " << fixed(log_bayes_factor(z.log_value, z_warm.log_value)) << '\n';

  ResultRow grid_row{id, 1, 0, 0, "grid", kGridCells, 1};
  grid_row.ess = kish_ess_log(grid_log_weights(model, cells));
  grid_row.evidence_hat = z.value();
  fill_summaries(grid_row, post);
  grid_row.wall_time_s = seconds_since(t0, cfg.timing);
  out.rows.push_back(grid_row);

  // Importance sampling from the prior: the weights are the likelihood.
  {
    const auto t1 = Clock::now();
    const Eigen::Index n = 10'000;
    ResultRow row{id, 1, 0, replicate_seed(cfg.seed, id + "/is-prior", 1, 0), "is-prior", n, 1};
    Rng rng(row.seed);
    const GaussianProposal prior = prior_proposal(model);
    const WeightedSamples ws = importance_weights(model, prior, draw_iid(prior, n, rng));
    row.ess = kish_ess_log(ws.log_weights);
    row.evidence_hat = is_evidence(ws).value();
    fill_summaries(row, discretize(ws));
    row.wall_time_s = seconds_since(t1, cfg.timing);
    out.rows.push_back(row);
  }

  // Metropolis-Hastings from the prior mean.
  {
    const auto t2 = Clock::now();
    const Eigen::Index n = single_n(cfg, 100'000);
    ResultRow row{id, 1, 0, replicate_seed(cfg.seed, id + "/mh", 1, 0), "mh", n, 1};
    Rng rng(row.seed);
    const GaussianRandomWalk walk(1, cfg.gamma.value_or(1.0));
    const Vector start = cfg.start.value_or(Vector::Constant(1, model.prior_mean()));
    if (start.size() != 1) throw ConfigError("config: noisy-mean start must be 1-D");
    const Chain chain = drop_burn_in(run_chain(model, walk, start, n, rng), cfg.burn_in);
    row.acceptance_fraction = acceptance_fraction(chain);
    fill_chain_diagnostics(row, chain.samples());
    const GridSpec bins = covering_bins(chain.samples(), GridSpec({Axis::uniform(27.0, 32.0, 20)}));
    row.evidence_hat = evidence_from_chain(model, chain, histogram_density(chain.samples(), bins)).value();
    fill_summaries(row, discretize(chain.samples()));
    row.wall_time_s = seconds_since(t2, cfg.timing);
    out.rows.push_back(row);
    summary << "  mh: mean " << fixed(row.mean[0]) << ", acceptance " << fixed(row.acceptance_fraction, 3) << ", ESS "
            << fixed(row.ess, 1) << '\n';
  }
  out.summary = summary.str();
  return out;
}

ExerciseResult grid_exercise(const ExperimentConfig& cfg) {
  ExerciseResult out;
  const std::string id = cfg.experiment_id();
  const DiagonalGaussianTarget target = exercise_gaussian_2d();
  std::ostringstream summary;
  summary << "grid-2d: true Z = 2 pi = " << fixed(2.0 * std::numbers::pi) << ", means (-0.3, 0.8)\n";
  const std::vector<Eigen::Index> ks = n_list(cfg, {5, 20, 100});
  for (const double bound : {2.0, 5.0}) {
    for (const Eigen::Index k : ks) {
      const auto t0 = Clock::now();
      const GridCells cells = build_grid(GridSpec::cube(2, -bound, bound, k));
      const Vector lw = grid_log_weights(target, cells);
      ResultRow row{id, 2, 0, 0, "grid-b" + fixed(bound, 0), k * k, 1};
      row.ess = kish_ess_log(lw);
      row.evidence_hat = std::exp(log_sum_exp(lw));
      fill_summaries(row, DiscretizedPosterior::from_log_masses(cells.midpoints, lw, cells.volumes));
      row.wall_time_s = seconds_since(t0, cfg.timing);
      summary << "  [" << -bound << ", " << bound << "]^2 " << k << "x" << k << ": Z " << fixed(row.evidence_hat)
              << ", mean (" << fixed(row.mean[0]) << ", " << fixed(row.mean[1]) << "), n_eff/n "
              << fixed(row.ess / static_cast<double>(k * k)) << '\n';
      out.rows.push_back(row);
    }
  }
  out.summary = summary.str();
  return out;
}

ExerciseResult importance_exercise(const ExperimentConfig& cfg) {
  ExerciseResult out;
  const std::string id = cfg.experiment_id();
  const DiagonalGaussianTarget target = exercise_gaussian_2d();
  const int replicates = cfg.replicates > 0 ? cfg.replicates : 100;
  std::ostringstream summary;
  summary << "importance-2d: true Z = " << fixed(2.0 * std::numbers::pi) << '\n';
  for (const double width : {1.0, 2.0}) {
    const GaussianProposal proposal(Vector::Zero(2), Vector::Constant(2, width));
    const std::string sampler = "is-q" + fixed(width, 0);
    for (const Eigen::Index n : n_list(cfg, {25, 100, 1000, 10000})) {
      double z_sum = 0.0;
      for (int r = 0; r < replicates; ++r) {
        const auto t0 = Clock::now();
        ResultRow row{id, 2, r, replicate_seed(cfg.seed, id + "/" + sampler + "/" + std::to_string(n), 2, static_cast<std::uint64_t>(r)),
                      sampler, n, 1};
        Rng rng(row.seed);
        const WeightedSamples ws = importance_weights(target, proposal, draw_iid(proposal, n, rng));
        row.ess = kish_ess_log(ws.log_weights);
        row.evidence_hat = is_evidence(ws).value();
        fill_summaries(row, discretize(ws));
        row.wall_time_s = seconds_since(t0, cfg.timing);
        z_sum += row.evidence_hat;
        out.rows.push_back(row);
      }
      summary << "  " << sampler << " n=" << n << ": mean Z over " << replicates << " replicates "
              << fixed(z_sum / replicates) << '\n';
    }
  }
  out.summary = summary.str();
  return out;
}

ExerciseResult mh_exercise(const ExperimentConfig& cfg) {
  ExerciseResult out;
  const std::string id = cfg.experiment_id();
  const DiagonalGaussianTarget target = exercise_gaussian_2d();
  const int replicates = cfg.replicates > 0 ? cfg.replicates : 30;
  const Vector start = cfg.start.value_or(Vector::Zero(2));
  if (start.size() != 2) throw ConfigError("config: mh-2d start must be 2-D");
  const GaussianRandomWalk walk(2, cfg.gamma.value_or(1.0));
  const GridSpec base_bins = GridSpec::cube(2, -5.0, 5.0, 10);
  std::ostringstream summary;
  summary << "mh-2d: start (" << start[0] << ", " << start[1] << "), burn-in fraction " << cfg.burn_in << '\n';
  bool traced = false;
  for (const Eigen::Index n : n_list(cfg, {1000, 2500, 10000})) {
    double acc = 0.0;
    double ess = 0.0;
    for (int r = 0; r < replicates; ++r) {
      const auto t0 = Clock::now();
      ResultRow row{id, 2, r, replicate_seed(cfg.seed, id + "/mh/" + std::to_string(n), 2, static_cast<std::uint64_t>(r)), "mh", n, 1};
      Rng rng(row.seed);
      const Chain full = run_chain(target, walk, start, n, rng);
      if (!traced) {
        out.trace.push_back({0, full.start(), true});
        for (Eigen::Index i = 0; i < full.size(); ++i) {
          out.trace.push_back({i + 1, full.state(i), static_cast<bool>(full.accepted()[static_cast<std::size_t>(i)])});
        }
        traced = true;
      }
      const Chain chain = drop_burn_in(full, cfg.burn_in);
      row.acceptance_fraction = acceptance_fraction(chain);
      fill_chain_diagnostics(row, chain.samples());
      const GridSpec bins = covering_bins(chain.samples(), base_bins);
      row.evidence_hat = evidence_from_chain(target, chain, histogram_density(chain.samples(), bins)).value();
      fill_summaries(row, discretize(chain.samples()));
      row.wall_time_s = seconds_since(t0, cfg.timing);
      acc += row.acceptance_fraction;
      ess += std::isnan(row.ess) ? 0.0 : row.ess;
      out.rows.push_back(row);
    }
    summary << "  n=" << n << ": mean acceptance " << fixed(acc / replicates, 3) << ", mean ESS " << fixed(ess / replicates, 1)
            << '\n';
  }
  out.summary = summary.str();
  return out;
}

bool is_ensemble(const std::string& sampler) { return sampler.rfind("ens-", 0) == 0; }

}  // namespace

const std::vector<std::string>& exercise_names() {
  static const std::vector<std::string> names = {"noisy-mean", "grid-2d", "importance-2d", "mh-2d"};
  return names;
}

const std::vector<std::string>& sampler_names() {
  static const std::vector<std::string> names = {"mh-fixed", "mh-adaptive", "ens-gaussian", "ens-de", "ens-stretch"};
  return names;
}

std::uint64_t replicate_seed(std::uint64_t master, const std::string& experiment, std::uint64_t dim, std::uint64_t replicate) {
  return derive_seed(master, {hash_label(experiment), dim, replicate});
}

ExerciseResult run_exercise(const ExperimentConfig& cfg) {
  if (cfg.name == "noisy-mean") return noisy_mean_exercise(cfg);
  if (cfg.name == "grid-2d") return grid_exercise(cfg);
  if (cfg.name == "importance-2d") return importance_exercise(cfg);
  if (cfg.name == "mh-2d") return mh_exercise(cfg);
  throw ConfigError("unknown exercise '" + cfg.name + "'");
}

ExperimentConfig with_scaling_defaults(ExperimentConfig cfg) {
  if (std::find(sampler_names().begin(), sampler_names().end(), cfg.name) == sampler_names().end()) {
    throw ConfigError("unknown sampler '" + cfg.name + "'");
  }
  if (cfg.dims.empty()) cfg.dims = {2, 5, 10, 20};
  if (cfg.n.empty()) cfg.n = {is_ensemble(cfg.name) ? Eigen::Index{1500} : Eigen::Index{20000}};
  if (cfg.n.size() != 1) throw ConfigError("config: scaling takes a single value of 'n'");
  if (!is_ensemble(cfg.name)) cfg.m = 1;
  if (cfg.replicates <= 0) cfg.replicates = 1;
  return cfg;
}

double scaling_cost(const ExperimentConfig& cfg) {
  double cost = 0.0;
  const double n = cfg.n.empty() ? 0.0 : static_cast<double>(cfg.n.front());
  for (const int d : cfg.dims) cost += d * n * static_cast<double>(cfg.m) * cfg.replicates;
  return cost;
}

double scaling_gamma(const ExperimentConfig& cfg, int dim) {
  if (cfg.gamma) return *cfg.gamma;
  const double root_d = std::sqrt(static_cast<double>(dim));
  if (cfg.delta) return *cfg.delta / root_d;
  if (cfg.name == "mh-fixed") return std::numbers::sqrt2;
  if (cfg.name == "ens-de") return 1.7 / root_d;
  return 2.5 / root_d;
}

ResultRow run_scaling_replicate(const ExperimentConfig& cfg, int dim, int replicate) {
  const auto t0 = Clock::now();
  const std::string id = cfg.experiment_id();
  const Eigen::Index n = cfg.n.front();
  ResultRow row{id, dim, replicate, replicate_seed(cfg.seed, id, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(replicate)),
                cfg.name, n, cfg.m};
  Rng rng(row.seed);
  const IsotropicGaussianTarget target(dim, cfg.sigma);

  if (!is_ensemble(cfg.name)) {
    const GaussianRandomWalk walk(dim, scaling_gamma(cfg, dim) * cfg.sigma);
    const Vector start = cfg.start.value_or(cfg.sigma * rng.normal(dim));
    if (start.size() != dim) throw ConfigError("config: start does not match dimension " + std::to_string(dim));
    const Chain chain = drop_burn_in(run_chain(target, walk, start, n, rng), cfg.burn_in);
    row.acceptance_fraction = acceptance_fraction(chain);
    fill_chain_diagnostics(row, chain.samples());
    fill_summaries(row, discretize(chain.samples()));
  } else {
    EnsembleMethod method = StretchMove{StretchLaw{cfg.a}};
    if (cfg.name == "ens-gaussian") method = EnsembleGaussianMove{scaling_gamma(cfg, dim)};
    if (cfg.name == "ens-de") method = DifferentialEvolutionMove{scaling_gamma(cfg, dim), cfg.jitter_fraction};
    if (cfg.m < minimum_ensemble_size(method)) {
      throw ConfigError("config: " + cfg.name + " needs m >= " + std::to_string(minimum_ensemble_size(method)));
    }
    const Vector center = cfg.start.value_or(Vector::Zero(dim));
    if (center.size() != dim) throw ConfigError("config: start does not match dimension " + std::to_string(dim));
    EnsembleState initial = disperse_ensemble(target, center, cfg.m, rng);
    const EnsembleRun run = run_ensemble(method, target, std::move(initial), n, rng);
    const auto drop = static_cast<Eigen::Index>(std::floor(cfg.burn_in * static_cast<double>(n)));
    const Eigen::Index kept = n - drop;
    Matrix pooled(dim, kept * cfg.m);
    std::size_t hits = 0;
    double tau_sum = 0.0;
    double ess_sum = 0.0;
    bool sufficient = true;
    for (Eigen::Index j = 0; j < cfg.m; ++j) {
      const Chain chain = run.state.histories[static_cast<std::size_t>(j)].tail(drop);
      pooled.middleCols(j * kept, kept) = chain.samples();
      hits += static_cast<std::size_t>(std::count(chain.accepted().begin(), chain.accepted().end(), true));
      const ChainTau taus = autocorr_times(chain.samples());
      sufficient = sufficient && taus.sufficient;
      if (taus.sufficient) {
        tau_sum += taus.max_tau;
        ess_sum += chain_ess(static_cast<double>(kept), taus.max_tau);
      }
    }
    row.acceptance_fraction = static_cast<double>(hits) / static_cast<double>(kept * cfg.m);
    if (sufficient) {
      row.tau_hat = tau_sum / static_cast<double>(cfg.m);
      row.ess = ess_sum / static_cast<double>(cfg.m);
    }
    fill_summaries(row, discretize(pooled));
  }
  row.wall_time_s = seconds_since(t0, cfg.timing);
  return row;
}

std::vector<ResultRow> run_scaling(const ExperimentConfig& base) {
  const ExperimentConfig cfg = with_scaling_defaults(base);
  const double cost = scaling_cost(cfg);
  if (cost > cfg.budget) {
    std::ostringstream msg;
    msg << "scaling: requested work " << cost << " exceeds the budget " << cfg.budget;
    throw ResourceError(msg.str());
  }
  struct Task {
    int dim;
    int replicate;
  };
  std::vector<Task> tasks;
  for (const int d : cfg.dims) {
    for (int r = 0; r < cfg.replicates; ++r) tasks.push_back({d, r});
  }
  std::vector<ResultRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = run_scaling_replicate(cfg, tasks[i].dim, tasks[i].replicate);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size()))));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_trace(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << kSchemaLine << '\n' << "iteration";
  const Eigen::Index d = trace.empty() ? 0 : trace.front().state.size();
  for (Eigen::Index j = 0; j < d; ++j) out << ",theta_" << j;
  out << ",accepted\n";
  for (const auto& p : trace) {
    out << p.iteration;
    for (Eigen::Index j = 0; j < d; ++j) out << ',' << format_number(p.state[j]);
    out << ',' << (p.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace mcmclab::harness
