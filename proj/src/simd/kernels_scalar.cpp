#include "alcove/simd.hpp"

#include <algorithm>

namespace alcove::simd::detail {

double reflect_scan_scalar(const double* in, double* out, std::size_t n, double step,
                           bool wall_one, double factor) {
  double m = 0.0;
  if (wall_one) {
    for (std::size_t j = 0; j < n; ++j) {
      const double f = in[j];
      m = std::min(m, f);
      out[j] = f - factor * m;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double f = in[j];
      const double g = static_cast<double>(j) * step - f;
      m = std::min(m, g);
      out[j] = f + factor * m;
    }
  }
  return m;
}

double running_min_scalar(const double* in, std::size_t n, double step, bool wall_one) {
  double m = 0.0;
  if (wall_one) {
    for (std::size_t j = 0; j < n; ++j) m = std::min(m, in[j]);
  } else {
    for (std::size_t j = 0; j < n; ++j) m = std::min(m, static_cast<double>(j) * step - in[j]);
  }
  return m;
}

void sine_series_scalar(const double* c, std::size_t nc, const double* cs, const double* sn,
                        double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double two_c = cs[i] + cs[i];
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = nc; k-- > 0;) {
      const double b0 = (c[k] + two_c * b1) - b2;
      b2 = b1;
      b1 = b0;
    }
    out[i] = b1 * sn[i];
  }
}

}  // namespace alcove::simd::detail
