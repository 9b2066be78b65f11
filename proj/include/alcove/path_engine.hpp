#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace alcove {

// The two walls of the alcove [0, t]: index 1 is x = 0, index 0 is x = t.
enum class Wall : int { zero = 0, one = 1 };

constexpr Wall other(Wall w) noexcept { return w == Wall::zero ? Wall::one : Wall::zero; }
constexpr Wall wall_of(long k) noexcept { return (k % 2 + 2) % 2 == 0 ? Wall::zero : Wall::one; }
constexpr int index_of(Wall w) noexcept { return static_cast<int>(w); }

class Grid {
 public:
  Grid(double step, std::size_t count);

  double step() const noexcept { return step_; }
  // Number of intervals; nodes are t_j = j*step for j = 0..count.
  std::size_t count() const noexcept { return count_; }
  std::size_t nodes() const noexcept { return count_ + 1; }
  double time(std::size_t j) const noexcept { return static_cast<double>(j) * step_; }
  double horizon() const noexcept { return time(count_); }

  bool operator==(const Grid& o) const noexcept { return step_ == o.step_ && count_ == o.count_; }

 private:
  double step_;
  std::size_t count_;
};

// Node-sampled real path on a uniform grid, f(0) = 0, linear between nodes.
class Path {
 public:
  Path(Grid grid, std::vector<double> values, bool piecewise_linear = false);

  // Samples a deterministic function at the nodes; the result is flagged as an
  // exact piecewise-linear path.
  static Path from_function(Grid grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double terminal() const noexcept { return values_.back(); }
  bool piecewise_linear() const noexcept { return piecewise_linear_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  bool piecewise_linear_;
};

// Curve on an arbitrary increasing time grid, evaluated by linear interpolation.
struct Curve {
  std::vector<double> times;
  std::vector<double> values;

  double at(double t) const;
};

struct TransformTrace {
  Path final_path;
  std::vector<double> xi;  // xi[k] belongs to the (k+1)-th transform applied
  Wall start;
};

// P_1 f = f - 2 min(0, inf f), P_0 f = f + 2 min(0, inf (t - f)).
Path pitman(const Path& path, Wall wall);
// Same reflection with factor 1.
Path levy(const Path& path, Wall wall);

// Applies n+1 Pitman transforms with indices start, start+1, ..., start+n.
TransformTrace iterate(const Path& path, int n, Wall start);

// Levy transform of index start+n+1 applied after iterate(path, n, start).
Path corrected_limit(const Path& path, int n, Wall start);

// Terminal values after k+1 transforms, for k = 0..n_max, from a single pass.
struct TerminalSweep {
  std::vector<double> uncorrected;  // iterate(path, k, start) at the horizon
  std::vector<double> corrected;    // corrected_limit(path, k, start) at the horizon
  std::vector<double> xi;           // xi of transforms 1..n_max+2
};
TerminalSweep terminal_sweep(const Path& path, int n_max, Wall start);

// Same as terminal_sweep but reuses caller-provided scratch storage.
TerminalSweep terminal_sweep(std::span<const double> values, double step, int n_max, Wall start,
                             std::vector<double>& scratch);

// Smallest n such that iterate(path, n, start) stays in the closed alcove.
int dominance_steps(const Path& path, Wall start, int max_steps = 100000);

// (Xf)(s) = s f(1/s) on out_count uniform points of [t_min, 1/(first positive node)].
Curve time_invert(const Path& path, double t_min, std::size_t out_count = 0);
Curve time_invert(const Curve& curve, double t_min, std::size_t out_count);

Path sample_brownian(double mu, Grid grid, std::uint64_t seed);

}  // namespace alcove
