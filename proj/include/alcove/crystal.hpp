#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "alcove/monte_carlo.hpp"
#include "alcove/rng.hpp"

namespace alcove {

using BigInt = boost::multiprecision::cpp_int;

// Enumerations above this weight are refused.
inline constexpr int kMaxEnumerationWeight = 40;

// ---- exact q-series truncated at q^N ----
class IntSeries {
 public:
  // The constant series 1.
  explicit IntSeries(std::size_t order);

  std::size_t order() const noexcept { return c_.size() - 1; }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<BigInt>& coefficients() const noexcept { return c_; }

  // *= (1 + sign q^a), a >= 1
  void mul_binomial(std::size_t a, int sign);
  // /= (1 + sign q^a), a >= 1; expands the geometric series
  void div_binomial(std::size_t a, int sign);

 private:
  std::vector<BigInt> c_;
};

// sum over anti-lecture-hall compositions of q^{|lambda|} = (-q;q)_inf/(q^2;q)_inf.
IntSeries alhc_gf(std::size_t N);
// Same restricted to lambda_1 <= k:
// (-q;q)_inf (q;q^{k+2})_inf (q^{k+1};q^{k+2})_inf (q^{k+2};q^{k+2})_inf / (q;q)_inf.
IntSeries alhc_gf_bounded(std::size_t k, std::size_t N);

// lambda_1/1 >= lambda_2/2 >= ... >= lambda_n/n > 0; the empty composition has weight 0.
struct ALHComposition {
  std::vector<int> parts;
  int weight() const;
  bool valid() const;
};

// All compositions with weight <= max_weight, in depth-first order.
std::vector<ALHComposition> enumerate_alhc(int max_weight);
// counts[w] = number of compositions of weight w.
std::vector<long long> alhc_counts(int max_weight, int max_first_part = -1);

// ---- weights and coweights of A1^(1) ----
// Weight coordinates on (Lambda_0, alpha_1/2, delta); coweight coordinates on (c, coalpha_1, d).
// The pairing is diagonal: Lambda_0(c) = 1, (alpha_1/2)(coalpha_1) = 1, delta(d) = 1.
struct CartanCoords {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  friend CartanCoords operator+(CartanCoords a, CartanCoords b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend CartanCoords operator*(double s, CartanCoords a) { return {s * a.c0, s * a.c1, s * a.c2}; }
};

inline double pairing(CartanCoords weight, CartanCoords coweight) {
  return weight.c0 * coweight.c0 + weight.c1 * coweight.c1 + weight.c2 * coweight.c2;
}

namespace roots {
inline constexpr CartanCoords alpha0{0.0, -2.0, 1.0};
inline constexpr CartanCoords alpha1{0.0, 2.0, 0.0};
inline constexpr CartanCoords delta{0.0, 0.0, 1.0};
// rho~ = 2d + coalpha_1/2
inline constexpr CartanCoords rho_tilde{0.0, 0.5, 2.0};
}  // namespace roots

// ---- B(inf) in string coordinates ----
struct CrystalElement {
  std::vector<long> xs;  // x_0, x_1, ..., trailing zeros dropped

  long s() const;
  // sigma(x) = sum_k x_k alpha_{k mod 2}; the weight of x is -sigma(x).
  CartanCoords sigma() const;
  bool valid() const;
};

// All elements with s(x) <= cap.
std::vector<CrystalElement> enumerate_crystal(int cap);

// ---- characters ----
struct CharValue {
  double value = 0.0;
  double log_value = 0.0;
  double tail_bound = 0.0;  // bound on the neglected part of log_value
  int terms = 0;
  bool limit = false;  // value obtained as a ratio of a-derivatives (a = 0)
};

// prod_{beta > 0} (1 - e^{-beta(h)})^{-1} over alpha_i + n delta and (n+1) delta.
// N < 0 truncates automatically.
CharValue char_verma(CartanCoords h, int N = -1);

// Character of V(n Lambda_0 + m alpha_1/2) at a coalpha_1 + b d by the Weyl-Kac formula.
// Both series are paired across the nearest reflection hyperplane a = h b/2 (where they
// vanish together), and summed directly for bL >= pi or through their Poisson dual below.
// On a hyperplane the value is the ratio of the a-derivatives and `limit` is set.
CharValue char_affine(int n, int m, double a, double b, double tol = 1e-14);

// ---- Boltzmann measure e^{-s(x)/r}/Z_r on B(inf) ----
struct BoltzmannTable {
  double r = 0.0;
  int cap = 0;
  std::vector<CrystalElement> elements;
  std::vector<double> probabilities;  // normalized within the cap
  double z_cap = 0.0;                 // sum of e^{-s/r} within the cap
  double z_full = 0.0;                // char_verma(rho~/r)
  double deficit = 0.0;               // 1 - z_cap/z_full
};
BoltzmannTable boltzmann_exact(double r, int cap);

// P(x_0 = k) and P(x_1 <= k) within the table.
std::vector<double> x0_marginal(const BoltzmannTable& t, int kmax);
double x1_cdf_table(const BoltzmannTable& t, long k);
// P(X_1 <= k) under the infinite measure, from the bounded generating function:
// (q;q^{k+2})(q^{k+1};q^{k+2})(q^{k+2};q^{k+2})/(1-q) with q = e^{-1/r}.
double x1_cdf_product(double r, long k);

// ---- sigma(X^(r)) as a sum of independent geometric root multiplicities ----
class SigmaWeightSampler {
 public:
  SigmaWeightSampler(double r, int n_max);

  // Weight coordinates of sigma(X^(r)).
  CartanCoords operator()(Engine& eng) const;

  double r() const noexcept { return r_; }
  CartanCoords tail_mean() const noexcept { return tail_; }

 private:
  double r_;
  int n_max_;
  CartanCoords tail_;
};

CartanCoords sigma_weight_sample(double r, int n_max, Engine& eng);

struct DhConfig {
  double r = 400.0;
  double t = 1.0;
  double x = 0.5;
  double mu = 0.5;
  double tau = 0.2;
  double u = 0.0;
  double tolerance = 0.02;
  double r_coarse = 100.0;  // for the convergence-direction check
};
ExperimentReport dh_ratio_check(const DhConfig& cfg);

}  // namespace alcove
