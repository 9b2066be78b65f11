#include "alcove/crystal.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "alcove/analytic_laws.hpp"
#include "alcove/report.hpp"

namespace alcove {

namespace {

constexpr double kRelStop = 1e-17;
constexpr long kMaxFactors = 10000000;

void check_weight(int w) {
  if (w < 0) throw std::invalid_argument("weight must be >= 0");
  if (w > kMaxEnumerationWeight)
    throw std::invalid_argument("enumeration cap exceeded (max " + std::to_string(kMaxEnumerationWeight) + ")");
}

}  // namespace

// ---- IntSeries ----

IntSeries::IntSeries(std::size_t order) : c_(order + 1) { c_[0] = 1; }

void IntSeries::mul_binomial(std::size_t a, int sign) {
  if (a == 0) throw std::invalid_argument("binomial exponent must be >= 1");
  for (std::size_t i = order(); i >= a; --i) {
    if (sign > 0) c_[i] += c_[i - a];
    else c_[i] -= c_[i - a];
    if (i == a) break;
  }
}

void IntSeries::div_binomial(std::size_t a, int sign) {
  if (a == 0) throw std::invalid_argument("binomial exponent must be >= 1");
  for (std::size_t i = a; i <= order(); ++i) {
    if (sign > 0) c_[i] -= c_[i - a];
    else c_[i] += c_[i - a];
  }
}

IntSeries alhc_gf(std::size_t N) {
  IntSeries s(N);
  for (std::size_t k = 1; k <= N; ++k) s.mul_binomial(k, +1);
  for (std::size_t k = 2; k <= N; ++k) s.div_binomial(k, -1);
  return s;
}

IntSeries alhc_gf_bounded(std::size_t k, std::size_t N) {
  IntSeries s(N);
  for (std::size_t j = 1; j <= N; ++j) s.mul_binomial(j, +1);
  const std::size_t p = k + 2;
  for (std::size_t n = 0;; ++n) {
    const std::size_t a1 = 1 + n * p, a2 = k + 1 + n * p, a3 = (n + 1) * p;
    if (a1 > N) break;
    s.mul_binomial(a1, -1);
    if (a2 <= N) s.mul_binomial(a2, -1);
    if (a3 <= N) s.mul_binomial(a3, -1);
  }
  for (std::size_t j = 1; j <= N; ++j) s.div_binomial(j, -1);
  return s;
}

// ---- anti-lecture-hall compositions ----

int ALHComposition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

bool ALHComposition::valid() const {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] <= 0) return false;
    // lambda_k/k >= lambda_{k+1}/(k+1)
    if (k > 0 && static_cast<long>(k + 1) * parts[k - 1] < static_cast<long>(k) * parts[k]) return false;
  }
  return true;
}

namespace {

template <class Visit>
void alhc_dfs(std::vector<int>& parts, int remaining, Visit& visit) {
  visit(parts);
  const std::size_t k = parts.size();
  int hi = remaining;
  if (k > 0) hi = std::min(hi, static_cast<int>((k + 1) * static_cast<std::size_t>(parts.back()) / k));
  for (int next = 1; next <= hi; ++next) {
    parts.push_back(next);
    alhc_dfs(parts, remaining - next, visit);
    parts.pop_back();
  }
}

}  // namespace

std::vector<ALHComposition> enumerate_alhc(int max_weight) {
  check_weight(max_weight);
  std::vector<ALHComposition> out;
  std::vector<int> parts;
  auto visit = [&out](const std::vector<int>& p) { out.push_back(ALHComposition{p}); };
  alhc_dfs(parts, max_weight, visit);
  return out;
}

std::vector<long long> alhc_counts(int max_weight, int max_first_part) {
  check_weight(max_weight);
  std::vector<long long> counts(static_cast<std::size_t>(max_weight) + 1, 0);
  std::vector<int> parts;
  auto visit = [&](const std::vector<int>& p) {
    if (max_first_part >= 0 && !p.empty() && p.front() > max_first_part) return;
    int w = 0;
    for (int v : p) w += v;
    ++counts[static_cast<std::size_t>(w)];
  };
  alhc_dfs(parts, max_weight, visit);
  return counts;
}

// ---- B(inf) ----

long CrystalElement::s() const {
  long t = 0;
  for (long x : xs) t += x;
  return t;
}

CartanCoords CrystalElement::sigma() const {
  CartanCoords c;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = static_cast<double>(xs[k]);
    if (k % 2 == 0) c = c + x * roots::alpha0;
    else c = c + x * roots::alpha1;
  }
  return c;
}

bool CrystalElement::valid() const {
  if (xs.empty()) return true;
  if (xs[0] < 0) return false;
  if (xs.size() > 1 && xs.back() == 0) return false;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (xs[k] <= 0) return false;
    if (k > 1 && static_cast<long>(k) * xs[k - 1] < static_cast<long>(k - 1) * xs[k]) return false;
  }
  return true;
}

std::vector<CrystalElement> enumerate_crystal(int cap) {
  check_weight(cap);
  std::vector<CrystalElement> out;
  for (int x0 = 0; x0 <= cap; ++x0) {
    std::vector<int> parts;
    auto visit = [&](const std::vector<int>& p) {
      CrystalElement e;
      e.xs.push_back(x0);
      for (int v : p) e.xs.push_back(v);
      while (!e.xs.empty() && e.xs.back() == 0) e.xs.pop_back();
      out.push_back(std::move(e));
    };
    alhc_dfs(parts, cap - x0, visit);
  }
  return out;
}

// ---- characters ----

CharValue char_verma(CartanCoords h, int N) {
  const double d = pairing(roots::delta, h);
  if (!(d > 0.0)) throw std::domain_error("Verma character diverges unless delta(h) > 0");
  const double b0 = pairing(roots::alpha0, h), b1 = pairing(roots::alpha1, h);
  if (!(b0 > 0.0 && b1 > 0.0)) throw std::domain_error("Verma character needs alpha_i(h) > 0");
  double log_sum = 0.0;
  int n = 0;
  for (; n < kMaxFactors; ++n) {
    const double t = -std::log1p(-std::exp(-(b1 + n * d))) - std::log1p(-std::exp(-(b0 + n * d))) -
                     std::log1p(-std::exp(-(n + 1) * d));
    log_sum += t;
    if (N >= 0 ? n >= N : t <= kRelStop * std::max(1.0, log_sum)) break;
  }
  // sum_{k>n} -log(1-y_k) <= y_{n+1}/((1-y_{n+1})(1-e^{-d})) per family
  const double geo = 1.0 / (-std::expm1(-d));
  double tail = 0.0;
  for (double beta : {b1 + (n + 1) * d, b0 + (n + 1) * d, (n + 2) * d}) {
    const double y = std::exp(-beta);
    tail += y / (1.0 - y) * geo;
  }
  return {std::exp(log_sum), log_sum, tail, n + 1, false};
}

namespace {

// Signed sum of e^{l_i} s_i held as (log|.|, sign).
struct LogSum {
  double peak = -std::numeric_limits<double>::infinity();
  double acc = 0.0;  // sum of s_i e^{l_i - peak}

  void add(double l, double s) {
    if (s == 0.0) return;
    if (l > peak) {
      acc *= std::exp(peak - l);
      peak = l;
    }
    acc += s * std::exp(l - peak);
  }
  double log_abs() const { return peak + std::log(std::abs(acc)); }
  int sign() const { return acc > 0.0 ? 1 : acc < 0.0 ? -1 : 0; }
};

// sinh(e x)/e, equal to x at e = 0.
double sinh_over(double e, double x) { return e == 0.0 ? x : std::sinh(e * x) / e; }
double sin_over(double e, double x) { return e == 0.0 ? x : std::sin(e * x) / e; }

struct OddTheta {
  double log_abs = 0.0;
  int sign = 0;
  double rel_tail = 0.0;
  int terms = 0;
};

// N(a) = sum_k sinh(a(M+2Lk)) e^{-b(Lk^2+Mk)} divided by eps, where a = n b/2 + eps is
// the nearest reflection hyperplane plus an offset. Dividing by eps is harmless since
// numerator and denominator share it, and at eps = 0 it gives the a-derivative.
OddTheta odd_theta(double L, double M, int n, double eps, double b, double tol) {
  const double a = 0.5 * n * b + eps;
  const double cut = std::log(tol) - 7.0;
  OddTheta out;
  LogSum sum;
  if (b * L >= std::numbers::pi) {
    // Direct: the e^+ term at k cancels the e^- term at k-n on the hyperplane, so pair them.
    // Exponent at the hyperplane: -b(L(k - n/2)^2 + M(k - n/2) - L n^2/4).
    auto term = [&](long k) {
      const double u = static_cast<double>(k) - 0.5 * n;
      const double e0 = -b * (L * u * u + M * u - 0.25 * L * n * n) + eps * L * n;
      const double x = M + 2.0 * L * u;
      const double v = sinh_over(eps, x);
      sum.add(e0 + std::log(std::abs(v)), v > 0.0 ? 1.0 : v < 0.0 ? -1.0 : 0.0);
      ++out.terms;
      return e0 + std::log(std::max(std::abs(v), 1e-300));
    };
    // The exponent peaks near u = -M/(2L) + eps/b; walk outward until both sides fade.
    const long k0 = std::lround(0.5 * n - 0.5 * M / L + eps / b);
    term(k0);
    double last = 0.0;
    for (long d = 1; d < kMaxFactors; ++d) {
      last = std::max(term(k0 + d), term(k0 - d));
      if (d > 2 && last - sum.peak < cut) break;
    }
    out.rel_tail = 2.0 * std::exp(last - sum.peak);
  } else {
    // Poisson dual: e^{bLc^2} sqrt(pi/bL) e^{a^2 L/b} 2 sum_j e^{-pi^2 j^2/bL} sin(2 pi j a/b) sin(pi j M/L),
    // c = M/2L, and sin(2 pi j a/b) = (-1)^{jn} sin(2 pi j eps/b).
    const double pre = b * M * M / (4.0 * L) + 0.5 * std::log(std::numbers::pi / (b * L)) + a * a * L / b + std::log(2.0);
    const double g = std::numbers::pi * std::numbers::pi / (b * L);
    double last = 0.0;
    for (long j = 1; j < kMaxFactors; ++j) {
      const double jj = static_cast<double>(j);
      const double parity = (n % 2 != 0 && j % 2 != 0) ? -1.0 : 1.0;
      const double v = parity * sin_over(eps, 2.0 * std::numbers::pi * jj / b) * std::sin(std::numbers::pi * jj * M / L);
      sum.add(pre - g * jj * jj, v);
      ++out.terms;
      last = pre - g * jj * jj + std::log(2.0 * std::numbers::pi * jj / b);
      if (last - sum.peak < cut) break;
    }
    out.rel_tail = 2.0 * std::exp(last - sum.peak);
  }
  out.log_abs = sum.log_abs();
  out.sign = sum.sign();
  out.rel_tail /= std::max(std::abs(sum.acc), std::numeric_limits<double>::min());
  return out;
}

}  // namespace

CharValue char_affine(int n, int m, double a, double b, double tol) {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::domain_error("char_affine needs b > 0");
  if (n < 0 || m < 0 || m > n) throw std::domain_error("char_affine needs 0 <= m <= n");
  if (!std::isfinite(a)) throw std::domain_error("char_affine needs finite a");
  if (!(tol > 0.0)) throw std::domain_error("char_affine needs tol > 0");
  a = std::abs(a);  // the character is even in a
  // Nearest reflection hyperplane a = h b/2; both series vanish there.
  const double hp = std::nearbyint(2.0 * a / b);
  if (std::abs(hp) > 1e9) throw std::domain_error("char_affine: a/b too large");
  const int h = static_cast<int>(hp);
  const double eps = a - 0.5 * hp * b;
  const OddTheta num = odd_theta(n + 2.0, m + 1.0, h, eps, b, tol);
  const OddTheta den = odd_theta(2.0, 1.0, h, eps, b, tol);
  if (num.sign == 0 || den.sign == 0 || num.sign != den.sign)
    throw std::domain_error("character evaluation lost its sign");
  CharValue out;
  out.log_value = num.log_abs - den.log_abs;
  out.value = std::exp(out.log_value);
  out.tail_bound = num.rel_tail + den.rel_tail;
  out.terms = num.terms + den.terms;
  out.limit = eps == 0.0;
  return out;
}

// ---- Boltzmann measure ----

BoltzmannTable boltzmann_exact(double r, int cap) {
  if (!(r > 0.0)) throw std::invalid_argument("boltzmann_exact needs r > 0");
  BoltzmannTable t;
  t.r = r;
  t.cap = cap;
  t.elements = enumerate_crystal(cap);
  t.probabilities.resize(t.elements.size());
  // Neumaier summation; the table can hold ~10^6 terms.
  double comp = 0.0;
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    const double w = std::exp(-static_cast<double>(t.elements[i].s()) / r);
    t.probabilities[i] = w;
    const double sum = t.z_cap + w;
    comp += std::abs(t.z_cap) >= w ? (t.z_cap - sum) + w : (w - sum) + t.z_cap;
    t.z_cap = sum;
  }
  t.z_cap += comp;
  for (double& p : t.probabilities) p /= t.z_cap;
  t.z_full = char_verma((1.0 / r) * roots::rho_tilde).value;
  t.deficit = 1.0 - t.z_cap / t.z_full;
  return t;
}

std::vector<double> x0_marginal(const BoltzmannTable& t, int kmax) {
  std::vector<double> out(static_cast<std::size_t>(std::max(kmax, 0)) + 1, 0.0);
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    const long x0 = t.elements[i].xs.empty() ? 0 : t.elements[i].xs[0];
    if (x0 <= kmax) out[static_cast<std::size_t>(x0)] += t.probabilities[i];
  }
  return out;
}

double x1_cdf_table(const BoltzmannTable& t, long k) {
  double p = 0.0;
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    const auto& xs = t.elements[i].xs;
    const long x1 = xs.size() > 1 ? xs[1] : 0;
    if (x1 <= k) p += t.probabilities[i];
  }
  return p;
}

double x1_cdf_product(double r, long k) {
  if (!(r > 0.0)) throw std::invalid_argument("x1_cdf_product needs r > 0");
  if (k < 0) return 0.0;
  const double lq = -1.0 / r;
  const double period = static_cast<double>(k + 2);
  // (q;q^{k+2}) / (1-q) starts at its n = 1 factor
  double log_p = 0.0;
  for (long n = 0; n < kMaxFactors; ++n) {
    const double base = static_cast<double>(n) * period;
    double t = std::log1p(-std::exp(lq * (static_cast<double>(k) + 1.0 + base))) +
               std::log1p(-std::exp(lq * (base + period)));
    if (n > 0) t += std::log1p(-std::exp(lq * (1.0 + base)));
    log_p += t;
    if (std::abs(t) <= kRelStop * std::max(1.0, std::abs(log_p)) && n > 0) break;
  }
  return std::exp(log_p);
}

// ---- sigma sampler ----

SigmaWeightSampler::SigmaWeightSampler(double r, int n_max) : r_(r), n_max_(n_max) {
  if (!(r > 0.0)) throw std::invalid_argument("sigma sampler needs r > 0");
  if (n_max < 0) throw std::invalid_argument("sigma sampler needs n_max >= 0");
  // Mean of the dropped multiplicities, E G = 1/(e^theta - 1).
  for (long n = n_max + 1; n < kMaxFactors; ++n) {
    const double g01 = 1.0 / std::expm1((2.0 * n + 1.0) / r);
    const double g2 = 1.0 / std::expm1(2.0 * (n + 1.0) / r);
    const CartanCoords add = g01 * (roots::alpha0 + static_cast<double>(n) * roots::delta) +
                             g01 * (roots::alpha1 + static_cast<double>(n) * roots::delta) +
                             g2 * (static_cast<double>(n + 1) * roots::delta);
    tail_ = tail_ + add;
    if (add.c2 <= kRelStop * std::max(1.0, tail_.c2)) break;
  }
}

CartanCoords SigmaWeightSampler::operator()(Engine& eng) const {
  UnitExponential exp_draw(eng);
  // floor(E/theta) is geometric: P(G >= k) = e^{-k theta}
  auto geom = [&](double theta) { return std::floor(exp_draw() / theta); };
  double g0sum = 0.0, g1sum = 0.0, delta_part = 0.0;
  for (int n = 0; n <= n_max_; ++n) {
    const double th01 = (2.0 * n + 1.0) / r_, th2 = 2.0 * (n + 1.0) / r_;
    const double g0 = geom(th01), g1 = geom(th01), g2 = geom(th2);
    g0sum += g0;
    g1sum += g1;
    delta_part += g0 * (n + 1.0) + g1 * n + g2 * (n + 1.0);
  }
  // g0 (alpha_0 + n delta) = g0 (-alpha_1 + (n+1) delta)
  return CartanCoords{0.0, 2.0 * (g1sum - g0sum), delta_part} + tail_;
}

CartanCoords sigma_weight_sample(double r, int n_max, Engine& eng) { return SigmaWeightSampler(r, n_max)(eng); }

// ---- Duistermaat-Heckman ratio ----

ExperimentReport dh_ratio_check(const DhConfig& cfg) {
  if (!(cfg.r > 0.0 && cfg.r_coarse > 0.0)) throw std::invalid_argument("dh-check needs r > 0");
  if (!(cfg.t > 0.0 && cfg.x > 0.0 && cfg.x < cfg.t)) throw std::domain_error("dh-check needs 0 < x < t");
  if (!(cfg.mu >= 0.0 && cfg.mu <= 1.0)) throw std::domain_error("dh-check needs mu in [0,1]");
  if (!(cfg.u >= 0.0)) throw std::domain_error("dh-check needs u >= 0");

  auto log_ratio = [&](double r) {
    const int n = static_cast<int>(std::lround(r * cfg.t));
    const int m = static_cast<int>(std::lround(r * cfg.x));
    if (m < 0 || m > n) throw std::domain_error("rounded highest weight is not dominant");
    const CharValue shifted = char_affine(n, m, (cfg.mu + cfg.tau) / r, (2.0 + cfg.u) / r);
    const CharValue base = char_affine(n, m, cfg.mu / r, 2.0 / r);
    return std::pair{shifted.log_value - base.log_value, shifted.log_value};
  };

  ExperimentReport rep;
  rep.name = "dh-check";
  rep.provenance = {{"r", format_number(cfg.r)}, {"r_coarse", format_number(cfg.r_coarse)},
                    {"t", format_number(cfg.t)}, {"x", format_number(cfg.x)}, {"mu", format_number(cfg.mu)},
                    {"tau", format_number(cfg.tau)}, {"u", format_number(cfg.u)},
                    {"tol", format_number(cfg.tolerance)},
                    {"highest_weight", "round(r t) Lambda_0 + round(r x) alpha_1/2"}};
  const auto [lr, lshift] = log_ratio(cfg.r);
  const auto [lr_c, lshift_c] = log_ratio(cfg.r_coarse);
  const double ratio = std::exp(lr);
  rep.statistics["ratio"] = ratio;
  rep.statistics["ratio_coarse"] = std::exp(lr_c);

  if (cfg.u == 0.0) {
    const double limit = std::exp(cfg.tau * cfg.x) * theta(cfg.tau + cfg.mu, cfg.t, cfg.x) / theta(cfg.mu, cfg.t, cfg.x);
    const double err = std::abs(ratio / limit - 1.0);
    const double err_c = std::abs(std::exp(lr_c) / limit - 1.0);
    rep.statistics["limit"] = limit;
    rep.statistics["rel_error"] = err;
    rep.statistics["rel_error_coarse"] = err_c;
    rep.statistics["error_decreasing"] = err <= err_c ? 1.0 : 0.0;
    rep.pass = err <= cfg.tolerance;
  } else {
    // Asymptotic of the shifted character alone.
    auto log_asym = [&](double r) {
      const double s = 2.0 + cfg.u;
      const double al = 2.0 * (cfg.tau + cfg.mu) / s;
      return 0.5 * std::log(2.0 * s / (std::numbers::pi * r)) + r * std::numbers::pi * std::numbers::pi / (2.0 * s) +
             (cfg.tau + cfg.mu) * cfg.x + std::log(theta(al, s * cfg.t / 2.0, s * cfg.x / 2.0));
    };
    const double q = std::exp(lshift - log_asym(cfg.r));
    const double q_c = std::exp(lshift_c - log_asym(cfg.r_coarse));
    rep.statistics["char_over_asymptotic"] = q;
    rep.statistics["char_over_asymptotic_coarse"] = q_c;
    rep.provenance["note"] = "compares the shifted character with the printed asymptotic constant";
    rep.pass = std::abs(q - 1.0) <= cfg.tolerance;
  }
  return rep;
}

}  // namespace alcove
