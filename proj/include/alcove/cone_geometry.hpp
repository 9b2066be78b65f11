#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alcove/path_engine.hpp"

namespace alcove {

// Plane point. For affine data the coordinates are (t, x); for dihedral data
// they are ordinary Cartesian coordinates.
struct Vec2 {
  double t = 0.0;
  double x = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.t + b.t, a.x + b.x}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.t - b.t, a.x - b.x}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.t, s * a.x}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.t * b.t + a.x * b.x; }

using WeightPoint = Vec2;

template <class F>
concept ExponentialSource = std::invocable<F&> && std::convertible_to<std::invoke_result_t<F&>, double>;

// ---- affine A1^(1) data in plane coordinates ----
namespace affine {
inline constexpr Vec2 alpha0{0.0, -2.0};
inline constexpr Vec2 alpha1{0.0, 2.0};
inline constexpr Vec2 coalpha0{1.0, -1.0};
inline constexpr Vec2 coalpha1{0.0, 1.0};

inline Vec2 alpha(long k) { return k % 2 == 0 ? alpha0 : alpha1; }
inline Vec2 coalpha(long k) { return k % 2 == 0 ? coalpha0 : coalpha1; }
}  // namespace affine

enum class StringKind { affine, dihedral };

struct StringVector {
  std::vector<double> xs;
  StringKind kind = StringKind::affine;
  int m = 0;  // dihedral order, 0 for affine
};

// nu_n = n for even n, -(n+1) for odd n.
inline double verma_nu(long n) { return n % 2 == 0 ? static_cast<double>(n) : -static_cast<double>(n + 1); }

// Precomputed exact sampler of the affine Verma string parameters xi_0..xi_K.
class AffineVermaSampler {
 public:
  AffineVermaSampler(double mu, int K, int tail_N);

  template <ExponentialSource E>
  StringVector operator()(E&& exp_draw) const {
    StringVector out;
    out.kind = StringKind::affine;
    out.xs.assign(static_cast<std::size_t>(K_) + 1, 0.0);
    out.xs[0] = exp_draw() * rate0_inv_;
    std::vector<double> eps(static_cast<std::size_t>(tail_N_) + 1);
    for (int n = 1; n <= tail_N_; ++n) eps[static_cast<std::size_t>(n)] = exp_draw();
    double acc = tail_;
    for (int n = tail_N_; n >= 1; --n) {
      acc += coef_[static_cast<std::size_t>(n)] * eps[static_cast<std::size_t>(n)];
      if (n <= K_) out.xs[static_cast<std::size_t>(n)] = n * acc;
    }
    return out;
  }

  double mu() const noexcept { return mu_; }
  // E xi_k for this truncation (equals the untruncated mean by construction).
  double mean(int k) const;

 private:
  double mu_;
  int K_;
  int tail_N_;
  double rate0_inv_;
  std::vector<double> coef_;    // 2/(n(n+1)+(1-2mu)nu_n)
  std::vector<double> suffix_;  // sum_{n>=k} coef_n including the tail
  double tail_;
};

// sum_{n > N} 2/(n(n+1)+(1-2mu)nu_n).
double verma_series_tail(double mu, long N);

// E xi_k(inf) = k sum_{n>=k} 2/(n(n+1)+(1-2mu)nu_n), k >= 1; 1/(2(1-mu)) for k = 0.
double verma_mean_affine(double mu, int k);

template <ExponentialSource E>
StringVector verma_sample_affine(double mu, int K, int tail_N, E&& exp_draw) {
  return AffineVermaSampler(mu, K, tail_N)(exp_draw);
}

// D^mu(inf) = sum_n (eps_{2n+1}/(n+mu) - eps_{2n}/(n+1-mu)), N paired terms plus the
// mean of the dropped tail.
class VermaWeightSampler {
 public:
  VermaWeightSampler(double mu, int N);

  template <ExponentialSource E>
  double operator()(E&& exp_draw) const {
    double s = tail_mean_;
    for (int n = 0; n < N_; ++n) {
      const double e_even = exp_draw();
      const double e_odd = exp_draw();
      s += e_odd * inv_odd_[static_cast<std::size_t>(n)] - e_even * inv_even_[static_cast<std::size_t>(n)];
    }
    return s;
  }

  double tail_mean() const noexcept { return tail_mean_; }

 private:
  int N_;
  double tail_mean_;
  std::vector<double> inv_odd_, inv_even_;
};

template <ExponentialSource E>
double verma_weight_sample(double mu, int N, E&& exp_draw) {
  return VermaWeightSampler(mu, N)(exp_draw);
}

// M_k = 1/2 xi_k alpha_k + sum_{n<k} xi_n alpha_n.
WeightPoint partial_weight(const StringVector& xs, int k);

// Membership in Gamma (affine) or Gamma_m (dihedral). If sigma_tolerance is set,
// also requires |M_K - M_{K-2}| <= tolerance at the last even index K (affine only).
bool in_gamma(const StringVector& xs, std::optional<double> sigma_tolerance = std::nullopt);

// coalpha_k(lambda - sigma(x) + sum_{i<k} x_i alpha_i + c x_k alpha_k) >= -tol for k = 0..K,
// with c = half_coefficient (1/2 in the theory) and sigma(x) = M at the last index.
bool in_gamma_lambda(const StringVector& xs, WeightPoint lambda, int K, double half_coefficient = 0.5,
                     double tol = 1e-12);

// ---- dihedral I(m) data ----
class DihedralConfig {
 public:
  explicit DihedralConfig(int m);

  int m() const noexcept { return m_; }
  Vec2 v(long k) const noexcept { return k % 2 == 0 ? v0_ : v1_; }
  // tilde v_k(p) = <v_k, p>/2.
  double coroot(long k, Vec2 p) const noexcept { return 0.5 * dot(v(k), p); }
  double a(int k) const { return std::sin(k * std::numbers::pi / m_); }
  // gamma_k = <gamma, v_k>.
  double rate(long k, Vec2 gamma) const noexcept { return dot(gamma, v(k)); }
  bool strictly_inside(Vec2 p) const noexcept { return coroot(0, p) > 0.0 && coroot(1, p) > 0.0; }
  bool in_closed_cone(Vec2 p, double tol = 0.0) const noexcept {
    return coroot(0, p) >= -tol && coroot(1, p) >= -tol;
  }

 private:
  int m_;
  Vec2 v0_, v1_;
};

struct PlanarPath {
  PlanarPath(Path first, Path second);

  const Grid& grid() const noexcept { return first.grid(); }
  Vec2 at(std::size_t j) const noexcept { return {first[j], second[j]}; }

  Path first;
  Path second;
};

PlanarPath dihedral_pitman(const PlanarPath& path, const DihedralConfig& cfg, int i);

struct DihedralStrings {
  StringVector xs;
  PlanarPath final_path;
};
DihedralStrings dihedral_strings(const PlanarPath& path, const DihedralConfig& cfg);

// Terminal string parameters only, on raw coordinate arrays (overwritten).
std::vector<double> dihedral_strings_inplace(std::vector<double>& first, std::vector<double>& second,
                                             const DihedralConfig& cfg);

class DihedralVermaSampler {
 public:
  DihedralVermaSampler(const DihedralConfig& cfg, Vec2 gamma);

  template <ExponentialSource E>
  StringVector operator()(E&& exp_draw) const {
    const int m = m_;
    StringVector out;
    out.kind = StringKind::dihedral;
    out.m = m;
    out.xs.assign(static_cast<std::size_t>(m), 0.0);
    out.xs[0] = exp_draw() / rate0_;
    std::vector<double> eps(static_cast<std::size_t>(m));
    for (int l = 1; l < m; ++l) eps[static_cast<std::size_t>(l)] = exp_draw();
    double acc = 0.0;
    for (int k = m - 1; k >= 1; --k) {
      acc += eps[static_cast<std::size_t>(k)] / denom_[static_cast<std::size_t>(k)];
      out.xs[static_cast<std::size_t>(k)] = a_[static_cast<std::size_t>(k)] * acc;
    }
    return out;
  }

 private:
  int m_;
  double rate0_;
  std::vector<double> a_, denom_;
};

template <ExponentialSource E>
StringVector dihedral_verma_sample(const DihedralConfig& cfg, Vec2 gamma, E&& exp_draw) {
  return DihedralVermaSampler(cfg, gamma)(exp_draw);
}

// tau_m(t, x) = (pi t / m, x).
Vec2 tau_map(int m, Vec2 p);

std::string to_string(StringKind k);

}  // namespace alcove
