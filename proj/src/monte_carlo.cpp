#include "alcove/monte_carlo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alcove {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearWall = 0.01;
constexpr int kSubsteps = 8;

// One Euler-Maruyama step of length h with the drift capped so that the
// deterministic move covers at most half the distance to the nearer wall.
double z_step(double z, double h, double noise) {
  const double dist = std::min(z, 1.0 - z);
  double drift = 0.0;
  if (dist > 0.0) {
    drift = kPi / std::tan(kPi * z);
    const double cap = dist / (2.0 * h);
    drift = std::clamp(drift, -cap, cap);
  }
  double y = z + drift * h + std::sqrt(h) * noise;
  // Reflect into [0,1]; large noise may need several folds.
  for (int i = 0; i < 8 && (y < 0.0 || y > 1.0); ++i) {
    if (y < 0.0) y = -y;
    if (y > 1.0) y = 2.0 - y;
  }
  return std::clamp(y, kZDelta, 1.0 - kZDelta);
}

double z_interval(double z, double step, StandardNormal& normal) {
  if (std::min(z, 1.0 - z) < kNearWall) {
    const double h = step / kSubsteps;
    for (int s = 0; s < kSubsteps; ++s) z = z_step(z, h, normal());
    return z;
  }
  return z_step(z, step, normal());
}

void check_start(double z0) {
  if (!(z0 >= 0.0 && z0 <= 1.0)) throw std::invalid_argument("simulate_Z: z0 must lie in [0,1]");
}

}  // namespace

std::vector<double> simulate_Z(double z0, Grid grid, Engine& eng) {
  check_start(z0);
  StandardNormal normal(eng);
  std::vector<double> out(grid.nodes());
  out[0] = z0;
  double z = z0;
  for (std::size_t j = 1; j < out.size(); ++j) {
    z = z_interval(z, grid.step(), normal);
    out[j] = z;
  }
  return out;
}

double simulate_Z_terminal(double z0, Grid grid, Engine& eng) {
  check_start(z0);
  StandardNormal normal(eng);
  double z = z0;
  for (std::size_t j = 1; j < grid.nodes(); ++j) z = z_interval(z, grid.step(), normal);
  return z;
}

BesselSup bessel3_sup(double nu, Grid grid, Engine& eng) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("bessel3_sup: nu must be >= 0");
  StandardNormal normal(eng);
  const double h = grid.step();
  const double sd = std::sqrt(h);
  double a = 0.0, b = 0.0, c = 0.0;
  double best = 0.0;
  double gap = 0.0;
  for (std::size_t j = 1; j < grid.nodes(); ++j) {
    a += nu * h + sd * normal();
    b += sd * normal();
    c += sd * normal();
    gap = std::sqrt(a * a + b * b + c * c) - grid.time(j);
    best = std::max(best, gap);
  }
  const double T = grid.horizon();
  return {best, gap, gap < -5.0 * std::sqrt(T)};
}

}  // namespace alcove
