#include "alcove/cone_geometry.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <numbers>
#include <stdexcept>

namespace alcove {

namespace {

void require_open_unit(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("drift mu must lie in (0,1)");
}

double verma_coef(double mu, long n) {
  const double nn = static_cast<double>(n);
  return 2.0 / (nn * (nn + 1.0) + (1.0 - 2.0 * mu) * verma_nu(n));
}

}  // namespace

double verma_series_tail(double mu, long N) {
  // Explicit sum over a long stretch, then sum_{n>L} 2/(n(n+1)) = 2/(L+1); the
  // remaining (1-2mu) correction alternates and is O(L^-3).
  const long L = std::max(4 * N, N + 200000);
  double s = 0.0;
  for (long n = L; n > N; --n) s += verma_coef(mu, n);
  return s + 2.0 / (static_cast<double>(L) + 1.0);
}

double verma_mean_affine(double mu, int k) {
  require_open_unit(mu);
  if (k < 0) throw std::invalid_argument("string index must be >= 0");
  if (k == 0) return 1.0 / (2.0 * (1.0 - mu));
  return k * (verma_series_tail(mu, k - 1));
}

AffineVermaSampler::AffineVermaSampler(double mu, int K, int tail_N)
    : mu_(mu), K_(K), tail_N_(tail_N) {
  require_open_unit(mu);
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (tail_N < K + 1) throw std::invalid_argument("tail_N must be >= K+1");
  rate0_inv_ = 1.0 / (2.0 * (1.0 - mu));
  coef_.assign(static_cast<std::size_t>(tail_N) + 1, 0.0);
  for (int n = 1; n <= tail_N; ++n) coef_[static_cast<std::size_t>(n)] = verma_coef(mu, n);
  tail_ = verma_series_tail(mu, tail_N);
  suffix_.assign(static_cast<std::size_t>(tail_N) + 2, 0.0);
  suffix_[static_cast<std::size_t>(tail_N) + 1] = tail_;
  for (int n = tail_N; n >= 1; --n)
    suffix_[static_cast<std::size_t>(n)] = suffix_[static_cast<std::size_t>(n) + 1] + coef_[static_cast<std::size_t>(n)];
}

double AffineVermaSampler::mean(int k) const {
  if (k < 0 || k > K_) throw std::out_of_range("string index out of range");
  if (k == 0) return rate0_inv_;
  return k * suffix_[static_cast<std::size_t>(k)];
}

VermaWeightSampler::VermaWeightSampler(double mu, int N) : N_(N) {
  require_open_unit(mu);
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  inv_odd_.resize(static_cast<std::size_t>(N));
  inv_even_.resize(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    inv_odd_[static_cast<std::size_t>(n)] = 1.0 / (n + mu);
    inv_even_[static_cast<std::size_t>(n)] = 1.0 / (n + 1.0 - mu);
  }
  // sum_{n>=N} (1/(n+mu) - 1/(n+1-mu)) = digamma(N+1-mu) - digamma(N+mu)
  tail_mean_ = boost::math::digamma(N + 1.0 - mu) - boost::math::digamma(N + mu);
}

WeightPoint partial_weight(const StringVector& xs, int k) {
  if (xs.kind != StringKind::affine) throw std::invalid_argument("partial_weight needs affine strings");
  if (k < 0 || static_cast<std::size_t>(k) >= xs.xs.size()) throw std::out_of_range("partial_weight index");
  // Accumulate the x-coordinate; every alpha has zero t-coordinate.
  double x = 0.0;
  for (int n = 0; n < k; ++n) x += xs.xs[static_cast<std::size_t>(n)] * affine::alpha(n).x;
  x += 0.5 * xs.xs[static_cast<std::size_t>(k)] * affine::alpha(k).x;
  return {0.0, x};
}

bool in_gamma(const StringVector& sv, std::optional<double> sigma_tolerance) {
  const auto& x = sv.xs;
  for (double v : x)
    if (!(v >= 0.0)) return false;
  if (sv.kind == StringKind::affine) {
    for (std::size_t k = 1; k + 1 < x.size(); ++k)
      if (x[k] / static_cast<double>(k) < x[k + 1] / static_cast<double>(k + 1)) return false;
    if (sigma_tolerance && x.size() >= 3) {
      int K = static_cast<int>(x.size()) - 1;
      if (K % 2 == 1) --K;
      if (K >= 2) {
        const double d = partial_weight(sv, K).x - partial_weight(sv, K - 2).x;
        if (std::abs(d) > *sigma_tolerance) return false;
      }
    }
    return true;
  }
  if (static_cast<int>(x.size()) != sv.m) return false;
  const DihedralConfig cfg(sv.m);
  for (int k = 1; k + 1 < sv.m; ++k)
    if (x[static_cast<std::size_t>(k)] / cfg.a(k) < x[static_cast<std::size_t>(k) + 1] / cfg.a(k + 1))
      return false;
  return true;
}

bool in_gamma_lambda(const StringVector& sv, WeightPoint lambda, int K, double half_coefficient,
                     double tol) {
  if (sv.kind != StringKind::affine) throw std::invalid_argument("in_gamma_lambda needs affine strings");
  const auto& x = sv.xs;
  if (x.empty()) return true;
  const int last = static_cast<int>(x.size()) - 1;
  const WeightPoint sigma = partial_weight(sv, last);
  Vec2 prefix{0.0, 0.0};
  const int kmax = std::min(K, last);
  for (int k = 0; k <= kmax; ++k) {
    const Vec2 ak = affine::alpha(k);
    const double xk = x[static_cast<std::size_t>(k)];
    const Vec2 p = lambda - sigma + prefix + (half_coefficient * xk) * ak;
    if (dot(affine::coalpha(k), p) < -tol) return false;
    prefix = prefix + xk * ak;
  }
  return true;
}

DihedralConfig::DihedralConfig(int m) : m_(m) {
  if (m < 2) throw std::invalid_argument("dihedral order must be >= 2");
  const double th = std::numbers::pi / m;
  v0_ = {2.0 * std::sin(th), -2.0 * std::cos(th)};
  v1_ = {0.0, 2.0};
}

PlanarPath::PlanarPath(Path a, Path b) : first(std::move(a)), second(std::move(b)) {
  if (!(first.grid() == second.grid())) throw std::invalid_argument("planar path coordinates on different grids");
}

namespace {

// eta - min(0, running inf of tilde v_i(eta)) v_i, in place; returns the final infimum.
double dihedral_reflect(std::vector<double>& a, std::vector<double>& b, const DihedralConfig& cfg, int i) {
  const Vec2 v = cfg.v(i);
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double g = 0.5 * (v.t * a[j] + v.x * b[j]);
    if (g < m) m = g;
    a[j] -= m * v.t;
    b[j] -= m * v.x;
  }
  return m;
}

}  // namespace

PlanarPath dihedral_pitman(const PlanarPath& path, const DihedralConfig& cfg, int i) {
  std::vector<double> a(path.first.values().begin(), path.first.values().end());
  std::vector<double> b(path.second.values().begin(), path.second.values().end());
  dihedral_reflect(a, b, cfg, i);
  return PlanarPath(Path(path.grid(), std::move(a)), Path(path.grid(), std::move(b)));
}

std::vector<double> dihedral_strings_inplace(std::vector<double>& a, std::vector<double>& b,
                                             const DihedralConfig& cfg) {
  if (a.size() != b.size()) throw std::invalid_argument("planar path coordinates differ in length");
  std::vector<double> xs(static_cast<std::size_t>(cfg.m()));
  for (int k = 0; k < cfg.m(); ++k) xs[static_cast<std::size_t>(k)] = -dihedral_reflect(a, b, cfg, k % 2);
  return xs;
}

DihedralStrings dihedral_strings(const PlanarPath& path, const DihedralConfig& cfg) {
  std::vector<double> a(path.first.values().begin(), path.first.values().end());
  std::vector<double> b(path.second.values().begin(), path.second.values().end());
  StringVector sv;
  sv.kind = StringKind::dihedral;
  sv.m = cfg.m();
  sv.xs = dihedral_strings_inplace(a, b, cfg);
  return DihedralStrings{std::move(sv), PlanarPath(Path(path.grid(), std::move(a)), Path(path.grid(), std::move(b)))};
}

DihedralVermaSampler::DihedralVermaSampler(const DihedralConfig& cfg, Vec2 gamma) : m_(cfg.m()) {
  if (!cfg.strictly_inside(gamma)) throw std::domain_error("drift must lie strictly inside the dihedral cone");
  rate0_ = cfg.rate(0, gamma);
  a_.assign(static_cast<std::size_t>(m_), 0.0);
  denom_.assign(static_cast<std::size_t>(m_), 0.0);
  double acc = 0.0;
  for (int l = 1; l < m_; ++l) {
    a_[static_cast<std::size_t>(l)] = cfg.a(l);
    acc += cfg.rate(l, gamma) * cfg.a(l);
    denom_[static_cast<std::size_t>(l)] = acc;
  }
}

Vec2 tau_map(int m, Vec2 p) {
  if (m < 1) throw std::invalid_argument("tau_map needs m >= 1");
  return {std::numbers::pi * p.t / m, p.x};
}

std::string to_string(StringKind k) { return k == StringKind::affine ? "affine" : "dihedral"; }

}  // namespace alcove
