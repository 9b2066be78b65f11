#include "alcove/analytic_laws.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "alcove/simd.hpp"

namespace alcove {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelStop = 1e-17;
constexpr long kMaxTerms = 200000;

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("time must be positive");
}

bool is_integer(double a) { return std::nearbyint(a) == a; }

KernelEval theta_direct(double alpha, double t, double x) {
  if (is_integer(alpha)) throw std::domain_error("direct theta series is undefined at integer alpha");
  const double s = std::sin(alpha * kPi);
  auto term = [&](double k) {
    const double base = -2.0 * k * x - 2.0 * k * k * t;
    const double e1 = 2.0 * alpha * k * t + base;
    const double e2 = -2.0 * alpha * k * t - 2.0 * alpha * x + base;
    return 0.5 * (std::exp(e1) - std::exp(e2));
  };
  const double v1 = (alpha * t - x) / (2.0 * t);
  const double v2 = (-alpha * t - x) / (2.0 * t);
  const long kpeak = static_cast<long>(std::ceil(std::max(std::abs(v1), std::abs(v2)))) + 1;
  double sum = term(0.0);
  double scale = std::abs(sum);
  double last = 0.0;
  long k = 1;
  for (; k < kMaxTerms; ++k) {
    const double a = term(static_cast<double>(k));
    const double b = term(-static_cast<double>(k));
    sum += a + b;
    scale += std::abs(a) + std::abs(b);
    last = std::abs(a) + std::abs(b);
    if (k > kpeak && last <= kRelStop * scale) break;
  }
  return {sum / s, static_cast<int>(2 * k + 1), last / std::abs(s)};
}

KernelEval theta_poisson(double alpha, double t, double x) {
  const double c = std::cos(alpha * kPi);
  const double pref = std::sqrt(kPi / (2.0 * t)) * std::exp((x - alpha * t) * (x - alpha * t) / (2.0 * t));
  double u_prev = 0.0, u = 1.0;  // U_{k-2}, U_{k-1}
  double sum = 0.0, scale = 0.0, last = 0.0;
  long k = 1;
  for (; k < kMaxTerms; ++k) {
    const double g = std::exp(-static_cast<double>(k) * k * kPi * kPi / (2.0 * t));
    const double term = 2.0 * u * std::sin(k * kPi * x / t) * g;
    sum += term;
    scale += std::abs(u) * g;
    last = 2.0 * (std::abs(u) + 1.0) * g;
    if (last <= kRelStop * std::max(scale, std::numeric_limits<double>::min()) || g == 0.0) break;
    const double u_next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = u_next;
  }
  return {pref * sum, static_cast<int>(k), pref * last};
}

}  // namespace

KernelEval theta_phi(double alpha, double t, double x, ThetaMode mode) {
  require_positive_time(t);
  return mode == ThetaMode::direct ? theta_direct(alpha, t, x) : theta_poisson(alpha, t, x);
}

double theta(double alpha, double t, double x) {
  require_positive_time(t);
  if (t >= 0.5 && !is_integer(alpha)) return theta_direct(alpha, t, x).value;
  return theta_poisson(alpha, t, x).value;
}

double harmonic_residual(double alpha, double t, double x, double h) {
  if (!(h > 0.0) || !(t > h)) throw std::domain_error("harmonic_residual needs 0 < h < t");
  const double f0 = theta(alpha, t, x);
  const double ft = (theta(alpha, t + h, x) - theta(alpha, t - h, x)) / (2.0 * h);
  const double fp = theta(alpha, t, x + h), fm = theta(alpha, t, x - h);
  const double fxx = (fp - 2.0 * f0 + fm) / (h * h);
  const double fx = (fp - fm) / (2.0 * h);
  return ft + 0.5 * fxx + alpha * fx;
}

double heat_kernel(double t, double a, double b) {
  require_positive_time(t);
  const double d = b - a;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

double heat_kernel_drift(double mu, double t, double a, double b) { return heat_kernel(t, a + mu * t, b); }

KernelEval killed_kernel_u(double t, double x, double y, KernelMode mode) {
  require_positive_time(t);
  if (mode == KernelMode::reflection) {
    double sum = heat_kernel(t, x, y) - heat_kernel(t, -x, y);
    double scale = std::abs(sum), last = 0.0;
    long k = 1;
    for (; k < kMaxTerms; ++k) {
      const double a = heat_kernel(t, x + 2.0 * k, y) - heat_kernel(t, -x - 2.0 * k, y);
      const double b = heat_kernel(t, x - 2.0 * k, y) - heat_kernel(t, -x + 2.0 * k, y);
      sum += a + b;
      scale += std::abs(a) + std::abs(b);
      last = std::abs(a) + std::abs(b);
      if (k >= 2 && last <= kRelStop * std::max(scale, std::numeric_limits<double>::min())) break;
    }
    return {sum, static_cast<int>(2 * k + 1), last};
  }
  const double first = std::exp(-kPi * kPi * t / 2.0);
  double sum = 0.0, last = 0.0;
  long n = 1;
  for (; n < kMaxTerms; ++n) {
    const double g = std::exp(-kPi * kPi * static_cast<double>(n) * n * t / 2.0);
    sum += 2.0 * std::sin(n * kPi * x) * std::sin(n * kPi * y) * g;
    last = 2.0 * g;
    if (g <= kRelStop * first) break;
  }
  return {sum, static_cast<int>(n), last};
}

namespace {

// Chebyshev weights U_{n-1}(cos pi x) = sin(n pi x)/sin(pi x), times e^{-pi^2 (n^2-1) t/2},
// for n = 1..N, with N chosen from the Gaussian factor.
std::vector<double> spectral_weights(double t, double x) {
  require_positive_time(t);
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("start point must lie in [0,1]");
  const double c = std::cos(kPi * x);
  std::vector<double> w;
  double u_prev = 0.0, u = 1.0;
  for (long n = 1; n < kMaxTerms; ++n) {
    const double g = std::exp(-kPi * kPi * (static_cast<double>(n) * n - 1.0) * t / 2.0);
    w.push_back(u * g);
    if ((std::abs(u) + 1.0) * g <= kRelStop) break;
    const double u_next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = u_next;
  }
  return w;
}

void angles(std::span<const double> ys, std::vector<double>& cs, std::vector<double>& sn) {
  cs.resize(ys.size());
  sn.resize(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    cs[i] = std::cos(kPi * ys[i]);
    sn[i] = std::sin(kPi * ys[i]);
  }
}

}  // namespace

KernelEval q_kernel(double t, double x, double y) {
  const std::vector<double> w = spectral_weights(t, x);
  double sum = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) sum += 2.0 * w[n] * std::sin((n + 1.0) * kPi * y);
  return {std::sin(kPi * y) * sum, static_cast<int>(w.size()), 2.0 * std::abs(w.back())};
}

double q_entrance(double t, double y) { return q_kernel(t, 0.0, y).value; }

double q_entrance_reflection(double t, double y) {
  require_positive_time(t);
  // lim_{x->0} u_t(x,y)/sin(pi x) = (1/pi) d/dx u_t(0,y) = (1/pi) sum_k 2 (y-2k)/t p_t(2k,y)
  double sum = 0.0;
  for (long k = 0; k < kMaxTerms; ++k) {
    double a = 2.0 * (y - 2.0 * k) / t * heat_kernel(t, 2.0 * k, y);
    if (k > 0) a += 2.0 * (y + 2.0 * k) / t * heat_kernel(t, -2.0 * k, y);
    sum += a;
    if (k >= 2 && std::abs(a) <= kRelStop * std::abs(sum)) break;
  }
  return std::sin(kPi * y) * std::exp(kPi * kPi * t / 2.0) * sum / kPi;
}

void q_kernel_batch(double t, double x, std::span<const double> ys, std::span<double> out) {
  if (ys.size() != out.size()) throw std::invalid_argument("q_kernel_batch: size mismatch");
  std::vector<double> w = spectral_weights(t, x);
  for (double& v : w) v *= 2.0;
  std::vector<double> cs, sn;
  angles(ys, cs, sn);
  simd::sine_series(w, cs, sn, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= sn[i];
}

namespace {

// CDF(Y) = lin*Y + sum_j d_j sin(j pi Y).
struct CdfSeries {
  double lin;
  std::vector<double> d;
};

CdfSeries cdf_series(double t, double x) {
  const std::vector<double> w = spectral_weights(t, x);
  CdfSeries s;
  s.d.assign(w.size() + 2, 0.0);  // index j-1 holds d_j
  // CDF = 2 sum_n w_n int_0^Y sin(pi y) sin(n pi y) dy
  s.lin = w[0];
  s.d[1] -= 2.0 * w[0] / (4.0 * kPi);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    s.d[i - 1] += 2.0 * w[i] / (2.0 * (n - 1.0) * kPi);
    s.d[i + 1] -= 2.0 * w[i] / (2.0 * (n + 1.0) * kPi);
  }
  return s;
}

}  // namespace

void q_cdf_batch(double t, double x, std::span<const double> ys, std::span<double> out) {
  if (ys.size() != out.size()) throw std::invalid_argument("q_cdf_batch: size mismatch");
  const CdfSeries s = cdf_series(t, x);
  std::vector<double> cs, sn;
  angles(ys, cs, sn);
  simd::sine_series(s.d, cs, sn, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double y = ys[i];
    if (y <= 0.0) out[i] = 0.0;
    else if (y >= 1.0) out[i] = 1.0;
    else out[i] = std::clamp(out[i] + s.lin * y, 0.0, 1.0);
  }
}

double q_cdf(double t, double x, double y) {
  double out = 0.0;
  q_cdf_batch(t, x, std::span<const double>(&y, 1), std::span<double>(&out, 1));
  return out;
}

double z_stationary_density(double y) {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  const double s = std::sin(kPi * y);
  return 2.0 * s * s;
}

double z_stationary_cdf(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return y - std::sin(2.0 * kPi * y) / (2.0 * kPi);
}

KernelEval spacetime_w(double mu, double r, double x, double t, double y) {
  require_positive_time(r);
  require_positive_time(t);
  const double lognorm = -0.5 * std::log(2.0 * kPi * t);
  // Image a contributes e^{mu(a-x)} p^mu_t(a,y), which is the Cameron-Martin form.
  auto image = [&](double k, double a) {
    const double d = y - a - mu * t;
    return std::exp(-2.0 * (k * x + k * k * r) + mu * (a - x) - d * d / (2.0 * t) + lognorm);
  };
  auto pair = [&](double k) { return image(k, x + 2.0 * k * r) - image(k, -x - 2.0 * k * r); };
  double sum = pair(0.0), scale = std::abs(sum), last = 0.0;
  long k = 1;
  for (; k < kMaxTerms; ++k) {
    const double a = pair(static_cast<double>(k)), b = pair(-static_cast<double>(k));
    sum += a + b;
    scale += std::abs(a) + std::abs(b);
    last = std::abs(a) + std::abs(b);
    if (k >= 2 && last <= kRelStop * std::max(scale, std::numeric_limits<double>::min())) break;
  }
  return {sum, static_cast<int>(2 * k + 1), last};
}

double spacetime_s(double mu, double r, double x, double t, double y) {
  return theta(mu, r + t, y) / theta(mu, r, x) * spacetime_w(mu, r, x, t, y).value;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

namespace {
// The entrance density is smooth on each knot cell, so a fixed rule is plenty and
// avoids adaptive refinement chasing roundoff near the walls.
template <class F>
double cell_integral(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}
}  // namespace

SpacetimeEntrance::SpacetimeEntrance(double mu, double t) : mu_(mu), t_(t), norm_(1.0) {
  require_positive_time(t);
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("entrance drift must lie in [0,1]");
  constexpr int kKnots = 128;
  knots_.resize(kKnots + 1);
  cum_.resize(kKnots + 1);
  for (int i = 0; i <= kKnots; ++i) knots_[static_cast<std::size_t>(i)] = t * i / kKnots;
  cum_[0] = 0.0;
  auto f = [this](double y) { return unnormalized(y); };
  for (std::size_t i = 1; i < knots_.size(); ++i) cum_[i] = cum_[i - 1] + cell_integral(f, knots_[i - 1], knots_[i]);
  norm_ = cum_.back();
  for (double& c : cum_) c /= norm_;
}

double SpacetimeEntrance::unnormalized(double y) const {
  if (y <= 0.0 || y >= t_) return 0.0;
  const double d = y - mu_ * t_;
  return theta(mu_, t_, y) * std::sin(kPi * y / t_) * std::exp(-d * d / (2.0 * t_));
}

double SpacetimeEntrance::density(double y) const { return unnormalized(y) / norm_; }

double SpacetimeEntrance::cdf(double y) const {
  if (y <= 0.0) return 0.0;
  if (y >= t_) return 1.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  auto f = [this](double s) { return unnormalized(s); };
  return std::clamp(cum_[i] + cell_integral(f, knots_[i], y) / norm_, 0.0, 1.0);
}

double SpacetimeEntrance::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile level must lie in [0,1]");
  // Bracket with the knot table first, then bisect inside one cell.
  const auto it0 = std::lower_bound(cum_.begin(), cum_.end(), p);
  const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it0 - cum_.begin()), 1, knots_.size() - 1);
  double lo = knots_[j - 1], hi = knots_[j];
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double laplace_D(double mu, double tau) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("drift mu must lie in (0,1)");
  if (!(tau > -mu && tau < 1.0 - mu)) throw std::domain_error("Laplace argument outside (-mu, 1-mu)");
  return std::sin(kPi * mu) / std::sin(kPi * (mu + tau));
}

double mean_D(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("drift mu must lie in (0,1)");
  return kPi / std::tan(kPi * mu);
}

double d_half_density(double x) { return 1.0 / (2.0 * kPi * std::cosh(0.5 * x)); }
double d_half_cdf(double x) { return 2.0 / kPi * std::atan(std::exp(0.5 * x)); }
double d_half_coefficient_density(double x) { return 1.0 / (kPi * std::cosh(x)); }
double d_half_coefficient_cdf(double x) { return 2.0 / kPi * std::atan(std::exp(x)); }

namespace {

// f(s) = sum_{n>=0} (-1)^n (2n+1) e^{-(2n+1)^2 s} and its derivative in s.
double eta3(double s, double* deriv) {
  double v = 0.0, d = 0.0;
  for (long n = 0; n < kMaxTerms; ++n) {
    const double q = 2.0 * n + 1.0;
    const double e = std::exp(-q * q * s);
    const double sg = n % 2 == 0 ? 1.0 : -1.0;
    v += sg * q * e;
    d -= sg * q * q * q * e;
    if (q * q * q * e <= kRelStop * std::abs(v) || e == 0.0) break;
  }
  if (deriv) *deriv = d;
  return v;
}

// sum_{j>=1} j^2 e^{-pi^2 j^2/(2x)} and sum j^4 e^{...}.
void theta_j2(double x, double& s2, double& s4) {
  s2 = s4 = 0.0;
  for (long j = 1; j < kMaxTerms; ++j) {
    const double jj = static_cast<double>(j) * j;
    const double e = std::exp(-kPi * kPi * jj / (2.0 * x));
    s2 += jj * e;
    s4 += jj * jj * e;
    if (jj * jj * e <= kRelStop * s4 || e == 0.0) break;
  }
}

}  // namespace

double xi1_cdf(Xi1Case c, double x) {
  if (x <= 0.0) return 0.0;
  if (c == Xi1Case::half) {
    // prod (1-e^{-nx})^3 = e^{x/8} f(x/8); for small x use f(s) = (pi/4s)^{3/2} f(pi^2/16s).
    if (x >= 1.5) return std::exp(x / 8.0) * eta3(x / 8.0, nullptr);
    return std::exp(x / 8.0) * std::pow(2.0 * kPi / x, 1.5) * eta3(kPi * kPi / (2.0 * x), nullptr);
  }
  if (x >= 1.0) {
    double s = 1.0;
    for (long k = 1; k < kMaxTerms; ++k) {
      const double kk = static_cast<double>(k) * k;
      const double term = 2.0 * (1.0 - 4.0 * kk * x) * std::exp(-2.0 * kk * x);
      s += term;
      if (std::abs(term) <= kRelStop) break;
    }
    return std::clamp(s, 0.0, 1.0);
  }
  double s2, s4;
  theta_j2(x, s2, s4);
  return std::sqrt(2.0 * kPi) * kPi * kPi * std::pow(x, -1.5) * s2;
}

double xi1_density(Xi1Case c, double x) {
  if (x <= 0.0) return 0.0;
  if (c == Xi1Case::half) {
    if (x >= 1.5) {
      double d;
      const double v = eta3(x / 8.0, &d);
      return std::exp(x / 8.0) * (v + d) / 8.0;
    }
    const double s = kPi * kPi / (2.0 * x);
    double d;
    const double v = eta3(s, &d);
    const double pref = std::exp(x / 8.0) * std::pow(2.0 * kPi / x, 1.5);
    // d/dx [pref f(s)] with ds/dx = -s/x
    return pref * ((1.0 / 8.0 - 1.5 / x) * v - d * s / x);
  }
  if (x >= 1.0) {
    double s = 0.0;
    for (long k = 1; k < kMaxTerms; ++k) {
      const double kk = static_cast<double>(k) * k;
      const double term = 4.0 * kk * (4.0 * kk * x - 3.0) * std::exp(-2.0 * kk * x);
      s += term;
      if (std::abs(term) <= kRelStop) break;
    }
    return s;
  }
  double s2, s4;
  theta_j2(x, s2, s4);
  const double c0 = std::sqrt(2.0 * kPi) * kPi * kPi;
  return c0 * (-1.5 * std::pow(x, -2.5) * s2 + kPi * kPi / 2.0 * std::pow(x, -3.5) * s4);
}

double xi1_laplace(Xi1Case c, double tau) {
  if (!(tau >= 0.0)) throw std::domain_error("Laplace argument must be >= 0");
  if (tau == 0.0) return 1.0;
  if (c == Xi1Case::half) {
    // prod_{n>=1} (1 + 2 tau/(n(n+1)))^{-1}
    if (tau <= 0.125) {
      const double s = std::sqrt(1.0 - 8.0 * tau);
      return 2.0 * kPi * tau / std::sin(4.0 * kPi * tau / (1.0 + s));
    }
    return 2.0 * kPi * tau / std::cosh(kPi * std::sqrt(2.0 * tau - 0.25));
  }
  // prod_{j>=1} (1 + tau/(2 j^2))^{-2} = (z / sinh z)^2 with z = pi sqrt(tau/2)
  const double z = kPi * std::sqrt(tau / 2.0);
  const double r = z < 1e-4 ? 1.0 - z * z / 6.0 : z / std::sinh(z);
  return r * r;
}

double xi1_mean(Xi1Case c) { return c == Xi1Case::half ? 2.0 : kPi * kPi / 6.0; }

double psi_dihedral(int m, Vec2 v, Vec2 gamma) {
  if (m < 2) throw std::invalid_argument("dihedral order must be >= 2");
  const Vec2 sg{gamma.t, -gamma.x};
  const double base = dot(gamma, v);
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * kPi * k / m;
    const double c = std::cos(th), s = std::sin(th);
    const Vec2 rg{c * gamma.t - s * gamma.x, s * gamma.t + c * gamma.x};
    const Vec2 rsg{c * sg.t - s * sg.x, s * sg.t + c * sg.x};
    sum += std::exp(dot(rg, v) - base) - std::exp(dot(rsg, v) - base);
  }
  return sum;
}

double h_dihedral(int m, Vec2 v) {
  if (m < 1) throw std::invalid_argument("dihedral order must be >= 1");
  return std::pow(std::complex<double>(v.t, v.x), m).imag();
}

}  // namespace alcove
