#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "alcove/path_engine.hpp"
#include "alcove/rng.hpp"

namespace alcove {

// ---- simulation of Z: dZ = dbeta + pi cot(pi Z) dt on [0,1] ----
inline constexpr double kZDelta = 1e-9;

// Values of Z at the grid nodes, Z_0 = z0 in [0,1].
std::vector<double> simulate_Z(double z0, Grid grid, Engine& eng);
// Same, keeping only the terminal value.
double simulate_Z_terminal(double z0, Grid grid, Engine& eng);

// sup_{t <= T} (|W_t + (nu t, 0, 0)| - t) over the nodes, W a 3-d Brownian motion.
struct BesselSup {
  double value = 0.0;
  double terminal_gap = 0.0;  // rho_T - T
  bool tail_ok = false;       // rho_T - T < -5 sqrt(T)
};
BesselSup bessel3_sup(double nu, Grid grid, Engine& eng);

// Runs f(i) for i in [0, n) on `threads` workers (0 = hardware concurrency).
// Work is split into contiguous chunks; f must only write to slot i.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
    pool.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---- experiments ----
struct ExperimentConfig {
  double mu = 0.5;
  double t_eval = 1.0;
  int n_transforms = 12;
  int n_paths = 20000;
  double step = 1e-4;
  std::uint64_t seed = 7;
  double tolerance = 0.03;
  unsigned threads = 0;
};

struct ExperimentReport {
  std::string name;
  std::map<std::string, double> statistics;
  bool pass = false;
  std::map<std::string, std::string> provenance;
  // Raw samples for optional CSV export; not part of the JSON body.
  std::map<std::string, std::vector<double>> samples;
};

void validate(const ExperimentConfig& cfg);
std::map<std::string, std::string> echo(const ExperimentConfig& cfg);

// Scaled corrected values t * L_{n+1} P_n ... P_start B^mu(1/t) for every n in ns.
// Paths use substreams stream_offset + i.
std::map<int, std::vector<double>> main_theorem_samples(const ExperimentConfig& cfg, Wall start,
                                                        const std::vector<int>& ns,
                                                        std::uint64_t stream_offset = 0,
                                                        std::vector<double>* gaps = nullptr);

ExperimentReport experiment_main_theorem(const ExperimentConfig& cfg, Wall start = Wall::zero);

struct StartOrderResult {
  double ks_two_sample = 0.0;
  double ks_start0 = 0.0;
  double ks_start1 = 0.0;
};
StartOrderResult start_order_check(const ExperimentConfig& cfg);

// xi_0..xi_K of B^mu on [0, horizon], start wall zero.
std::vector<std::vector<double>> transform_strings(double mu, double horizon, double step, int K,
                                                   int n_paths, std::uint64_t seed, unsigned threads,
                                                   std::uint64_t stream_offset = 0);

ExperimentReport experiment_verma_consistency(const ExperimentConfig& cfg, double horizon = 50.0,
                                              int K = 5);

struct XiLimitConfig {
  double mu_series = 0.3;
  int k_series = 50;
  int n_series = 100000;
  double mu_transform = 0.5;
  std::vector<int> ks{4, 8, 16};
  int n_paths = 1000;
  double step = 2e-6;
  double t = 1.0;
  std::uint64_t seed = 7;
  unsigned threads = 0;
};
ExperimentReport experiment_xi_limit(const XiLimitConfig& cfg);

struct BesselConfig {
  std::vector<double> nus{0.5, 1.0};
  int n_paths = 5000;
  double horizon = 100.0;
  double step = 2e-3;
  std::uint64_t seed = 7;
  double tolerance = 0.05;
  unsigned threads = 0;
};
std::vector<double> bessel_sup_samples(double nu, const BesselConfig& cfg, std::size_t* tail_ok = nullptr);
ExperimentReport experiment_bessel_sup(const BesselConfig& cfg);

struct CondLaplaceConfig {
  double mu = 0.5;
  double t = 1.0;
  std::vector<double> taus{0.1, 0.2, 0.3};
  int n_transforms = 48;
  int n_paths = 20000;
  double step = 1e-4;
  int bins = 20;
  int min_bin = 500;
  double tolerance = 0.05;
  std::uint64_t seed = 7;
  unsigned threads = 0;
};
ExperimentReport experiment_conditional_laplace(const CondLaplaceConfig& cfg);

struct DihedralExperimentConfig {
  int m = 6;
  double mu = 0.5;  // gamma = (m/pi, mu)
  double horizon = 20.0;
  double step = 2e-4;
  int n_paths = 5000;
  int n_sampler = 100000;
  double tolerance = 0.03;
  int m_limit = 64;
  double limit_tolerance = 0.02;
  std::uint64_t seed = 7;
  unsigned threads = 0;
};
ExperimentReport experiment_dihedral(const DihedralExperimentConfig& cfg);

}  // namespace alcove
