#pragma once

#include <functional>
#include <span>
#include <vector>

namespace alcove {

struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
};

MeanEstimate mean_estimate(std::span<const double> xs);

// sup_x |F_n(x) - F(x)|; the samples are copied and sorted.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
// Same, with a CDF evaluated on the sorted samples in one batch.
double ks_statistic_batch(std::span<const double> samples,
                          const std::function<void(std::span<const double>, std::span<double>)>& cdf_batch);
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// Asymptotic Kolmogorov tail P(sqrt(n) D > x).
double kolmogorov_tail(double x);

// Mean and standard error of e^{-tau s}.
MeanEstimate empirical_laplace(std::span<const double> samples, double tau);

}  // namespace alcove
