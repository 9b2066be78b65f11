#include "alcove/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "alcove/rng.hpp"
#include "alcove/simd.hpp"

namespace alcove {

Grid::Grid(double step, std::size_t count) : step_(step), count_(count) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
  if (count < 1) throw std::invalid_argument("grid needs at least one interval");
}

Path::Path(Grid grid, std::vector<double> values, bool piecewise_linear)
    : grid_(grid), values_(std::move(values)), piecewise_linear_(piecewise_linear) {
  if (values_.size() != grid_.nodes()) throw std::invalid_argument("path length does not match grid");
  if (values_.front() != 0.0) throw std::invalid_argument("path must start at 0");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("path values must be finite");
}

Path Path::from_function(Grid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.nodes());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.time(j));
  v[0] = 0.0;
  return Path(grid, std::move(v), true);
}

double Curve::at(double t) const {
  if (times.empty()) throw std::invalid_argument("empty curve");
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  const double t0 = times[j - 1], t1 = times[j];
  const double w = (t - t0) / (t1 - t0);
  return values[j - 1] + w * (values[j] - values[j - 1]);
}

namespace {

Path reflect(const Path& path, Wall wall, double factor) {
  std::vector<double> out(path.values().size());
  simd::reflect_scan(path.values(), out, path.grid().step(), wall == Wall::one, factor);
  return Path(path.grid(), std::move(out), path.piecewise_linear());
}

}  // namespace

Path pitman(const Path& path, Wall wall) { return reflect(path, wall, 2.0); }

Path levy(const Path& path, Wall wall) { return reflect(path, wall, 1.0); }

TransformTrace iterate(const Path& path, int n, Wall start) {
  if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
  std::vector<double> buf(path.values().begin(), path.values().end());
  std::vector<double> xi;
  xi.reserve(static_cast<std::size_t>(n) + 1);
  Wall w = start;
  for (int k = 0; k <= n; ++k) {
    const double m = simd::reflect_scan(buf, buf, path.grid().step(), w == Wall::one, 2.0);
    xi.push_back(-m);
    w = other(w);
  }
  return TransformTrace{Path(path.grid(), std::move(buf), path.piecewise_linear()), std::move(xi),
                        start};
}

Path corrected_limit(const Path& path, int n, Wall start) {
  TransformTrace tr = iterate(path, n, start);
  return levy(tr.final_path, wall_of(index_of(start) + n + 1));
}

TerminalSweep terminal_sweep(std::span<const double> values, double step, int n_max, Wall start,
                             std::vector<double>& scratch) {
  if (n_max < 0) throw std::invalid_argument("terminal_sweep: n_max must be >= 0");
  scratch.assign(values.begin(), values.end());
  TerminalSweep s;
  s.uncorrected.reserve(static_cast<std::size_t>(n_max) + 1);
  s.corrected.reserve(static_cast<std::size_t>(n_max) + 1);
  s.xi.reserve(static_cast<std::size_t>(n_max) + 2);
  Wall w = start;
  for (int k = 0; k <= n_max; ++k) {
    const double m = simd::reflect_scan(scratch, scratch, step, w == Wall::one, 2.0);
    s.xi.push_back(-m);
    s.uncorrected.push_back(scratch.back());
    w = other(w);
  }
  for (int k = 0; k <= n_max; ++k) {
    // The Levy transform of index start+k+1 sees the same input as the next
    // Pitman transform, so it shares that transform's infimum.
    double m;
    if (k < n_max) {
      m = -s.xi[static_cast<std::size_t>(k) + 1];
    } else {
      m = simd::running_min(scratch, step, w == Wall::one);
      s.xi.push_back(-m);
    }
    const Wall lw = wall_of(index_of(start) + k + 1);
    const double f = s.uncorrected[static_cast<std::size_t>(k)];
    s.corrected.push_back(lw == Wall::one ? f - m : f + m);
  }
  return s;
}

TerminalSweep terminal_sweep(const Path& path, int n_max, Wall start) {
  std::vector<double> scratch;
  return terminal_sweep(path.values(), path.grid().step(), n_max, start, scratch);
}

int dominance_steps(const Path& path, Wall start, int max_steps) {
  if (!path.piecewise_linear())
    throw std::invalid_argument("dominance_steps requires a piecewise-linear path");
  const double step = path.grid().step();
  std::vector<double> buf(path.values().begin(), path.values().end());
  double max_slope = 0.0;
  for (std::size_t j = 1; j < buf.size(); ++j)
    max_slope = std::max(max_slope, std::abs(buf[j] - buf[j - 1]) / step);
  const int cap = std::min(max_steps, static_cast<int>(10.0 * (1.0 + std::ceil(max_slope))));
  double scale = 1.0;
  for (double v : buf) scale = std::max(scale, std::abs(v));
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * (scale + path.grid().horizon());

  auto inside = [&]() {
    return simd::running_min(buf, step, true) >= -tol && simd::running_min(buf, step, false) >= -tol;
  };
  Wall w = start;
  for (int n = 0; n <= cap; ++n) {
    if (inside()) return n;
    simd::reflect_scan(buf, buf, step, w == Wall::one, 2.0);
    w = other(w);
  }
  throw std::runtime_error("dominance_steps: iteration cap exceeded");
}

Curve time_invert(const Curve& curve, double t_min, std::size_t out_count) {
  if (!(t_min > 0.0)) throw std::invalid_argument("time_invert: t_min must be positive");
  if (curve.times.size() < 2) throw std::invalid_argument("time_invert: curve too short");
  if (out_count < 2) throw std::invalid_argument("time_invert: need at least two output points");
  double first = 0.0;
  for (double t : curve.times)
    if (t > 0.0) {
      first = t;
      break;
    }
  if (!(first > 0.0)) throw std::invalid_argument("time_invert: curve has no positive time");
  if (curve.times.back() * t_min < 1.0 - 1e-12)
    throw std::invalid_argument("time_invert: horizon shorter than 1/t_min");
  const double t_max = 1.0 / first;
  if (!(t_max > t_min)) throw std::invalid_argument("time_invert: empty output interval");
  Curve out;
  out.times.resize(out_count);
  out.values.resize(out_count);
  const double h = (t_max - t_min) / static_cast<double>(out_count - 1);
  for (std::size_t j = 0; j < out_count; ++j) {
    const double s = j + 1 == out_count ? t_max : t_min + static_cast<double>(j) * h;
    out.times[j] = s;
    out.values[j] = s * curve.at(1.0 / s);
  }
  return out;
}

Curve time_invert(const Path& path, double t_min, std::size_t out_count) {
  Curve c;
  c.times.resize(path.grid().nodes());
  for (std::size_t j = 0; j < c.times.size(); ++j) c.times[j] = path.grid().time(j);
  c.values.assign(path.values().begin(), path.values().end());
  return time_invert(c, t_min, out_count == 0 ? path.grid().nodes() : out_count);
}

Path sample_brownian(double mu, Grid grid, std::uint64_t seed) {
  if (!std::isfinite(mu)) throw std::invalid_argument("drift must be finite");
  Engine eng = substream(seed, 0);
  StandardNormal normal(eng);
  const double sd = std::sqrt(grid.step());
  const double drift = mu * grid.step();
  std::vector<double> v(grid.nodes());
  double x = 0.0;
  v[0] = 0.0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    x += drift + sd * normal();
    v[j] = x;
  }
  return Path(grid, std::move(v));
}

}  // namespace alcove
