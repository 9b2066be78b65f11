#pragma once

#include <functional>
#include <span>
#include <vector>

#include "alcove/cone_geometry.hpp"

namespace alcove {

struct KernelEval {
  double value = 0.0;
  int terms = 0;
  double tail_bound = 0.0;
};

// ---- theta function phi_alpha(t, x) ----
enum class ThetaMode { direct, poisson };

// direct:  e^{-alpha x}/sin(alpha pi) sum_k sinh(alpha(2kt+x)) e^{-2(kx+k^2 t)}; rejects integer alpha.
// poisson: sqrt(pi) e^{(x-alpha t)^2/2t}/(sqrt(2t) sin(alpha pi)) sum_k sin(k pi alpha) sin(k pi x/t) e^{-k^2 pi^2/2t},
//          with sin(k pi alpha)/sin(pi alpha) taken as a Chebyshev polynomial so integer alpha is allowed.
KernelEval theta_phi(double alpha, double t, double x, ThetaMode mode);
// Picks the faster converging form.
double theta(double alpha, double t, double x);

// (d_t + 1/2 d_xx + alpha d_x) phi_alpha by central differences of step h.
double harmonic_residual(double alpha, double t, double x, double h);

// ---- heat kernels ----
double heat_kernel(double t, double a, double b);
double heat_kernel_drift(double mu, double t, double a, double b);

// ---- Brownian motion killed at 0 and 1, and Z = that motion conditioned to stay in (0,1) ----
enum class KernelMode { reflection, spectral };

KernelEval killed_kernel_u(double t, double x, double y, KernelMode mode);
// q_t(x,y) = sin(pi y)/sin(pi x) e^{pi^2 t/2} u_t(x,y); x in {0,1} gives the entrance density.
KernelEval q_kernel(double t, double x, double y);
double q_entrance(double t, double y);
// Entrance density from 0 written through the derivative of the reflection series (small t).
double q_entrance_reflection(double t, double y);
// P(Z_t <= y | Z_0 = x), x in [0,1], by termwise integration of the spectral series.
double q_cdf(double t, double x, double y);
void q_cdf_batch(double t, double x, std::span<const double> ys, std::span<double> out);
void q_kernel_batch(double t, double x, std::span<const double> ys, std::span<double> out);
// Stationary density of Z.
double z_stationary_density(double y);
double z_stationary_cdf(double y);

// ---- space-time Brownian motion in the cone {0 < x < t} ----
// Killed transition density from (r,x) to (r+t, y).
KernelEval spacetime_w(double mu, double r, double x, double t, double y);
// phi_mu(r+t,y)/phi_mu(r,x) w^mu_t((r,x),(r+t,y)).
double spacetime_s(double mu, double r, double x, double t, double y);

// Normalized entrance density at time t of the conditioned process started at (0,0):
// proportional to phi_mu(t,y) sin(pi y/t) e^{-(y - mu t)^2/2t}; normalizer by quadrature.
class SpacetimeEntrance {
 public:
  SpacetimeEntrance(double mu, double t);
  double density(double y) const;
  double cdf(double y) const;
  double normalizer() const noexcept { return norm_; }
  // Inverse CDF by bisection.
  double quantile(double p) const;

 private:
  double unnormalized(double y) const;
  double mu_, t_, norm_;
  std::vector<double> knots_, cum_;  // cumulative mass at knots for fast cdf
};

// ---- laws of D^mu(inf) ----
// E e^{-tau D} = sin(pi mu)/sin(pi(mu+tau)), for -mu < tau < 1-mu.
double laplace_D(double mu, double tau);
double mean_D(double mu);
// D^{1/2}: density 1/(2 pi cosh(x/2)).
double d_half_density(double x);
double d_half_cdf(double x);
// D^{1/2}/2, the coefficient on alpha_1: density 1/(pi cosh x).
double d_half_coefficient_density(double x);
double d_half_coefficient_cdf(double x);

// ---- laws of xi_1(inf) for the two drifts with closed forms ----
enum class Xi1Case { half, one };
// E e^{-tau xi_1}.
double xi1_laplace(Xi1Case c, double tau);
double xi1_cdf(Xi1Case c, double x);
double xi1_density(Xi1Case c, double x);
double xi1_mean(Xi1Case c);

// ---- dihedral functions ----
// sum_{w in I(m)} (-1)^{l(w)} e^{<w gamma - gamma, v>}.
double psi_dihedral(int m, Vec2 v, Vec2 gamma);
// Im((x + i y)^m).
double h_dihedral(int m, Vec2 v);

// ---- numerics ----
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace alcove
